#include "dfforge_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dfforge/errors.hpp"
#include "dfforge/hessian_frame.hpp"

namespace dfforge::cli {

namespace {

std::string str_param(const RunConfig& cfg, const std::string& key, const std::string& def) {
  const json& p = cfg.params();
  return p.contains(key) ? p.at(key).get<std::string>() : def;
}

template <class T>
T num_param(const RunConfig& cfg, const std::string& key, T def) {
  const json& p = cfg.params();
  return p.contains(key) ? p.at(key).get<T>() : def;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

double to_number(const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size()) throw UsageError("not a number: '" + v + "'");
  return x;
}

bool has_flat_circle(const CatalogEntry& e) { return e.name == "exp_flat" || e.name == "glued"; }

void entry_warnings(const CatalogEntry& e, Report& rep) {
  if (e.provenance == "external")
    rep.warnings.push_back(e.name + ": defining function taken from the literature (provenance external)");
  if (e.name == "glued")
    rep.warnings.push_back(
        "glued: eps0, a, delta, v0 come from the automated placement search; the default eps0 = 0.25 "
        "fails the placement checks");
  if (e.name == "worm") {
    const double beta = e.params.at("beta");
    rep.warnings.push_back("worm: two bounds are quoted for this domain, pi/(2 beta - pi) = " +
                           std::to_string(worm_bound(beta)) + " and 2 pi/(2 beta - pi) = " +
                           std::to_string(2.0 * worm_bound(beta)) +
                           "; the exponent fact checks the first with slack 0.05");
  }
}

json entry_json(const CatalogEntry& e) {
  json facts = json::array();
  for (const auto& f : e.facts) {
    const char* rel = f.relation == KnownFact::Relation::Equal     ? "equal"
                      : f.relation == KnownFact::Relation::Greater ? "greater"
                                                                   : "less";
    facts.push_back({{"id", f.id}, {"relation", rel}, {"expected", f.expected}, {"tol", f.tol}});
  }
  return {{"name", e.name},
          {"spec", e.spec},
          {"description", e.description},
          {"provenance", e.provenance},
          {"params", e.params},
          {"facts", std::move(facts)},
          {"bbox", {{"lo", e.rho.bbox.lo}, {"hi", e.rho.bbox.hi}}}};
}

std::vector<json> row(std::initializer_list<json> v) { return std::vector<json>(v); }

}  // namespace

std::map<std::string, double> parse_kv(const std::string& s) {
  std::map<std::string, double> kv;
  for (const auto& item : split(s, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value in '" + item + "'");
    kv[item.substr(0, eq)] = to_number(item.substr(eq + 1));
  }
  return kv;
}

Curve parse_curve(const std::string& spec, const CatalogEntry& e) {
  if (spec == "flat") return flat_circle(e);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "circle") {
    auto kv = parse_kv(rest);
    auto take = [&](const char* k, double d) {
      auto it = kv.find(k);
      if (it == kv.end()) return d;
      const double v = it->second;
      kv.erase(it);
      return v;
    };
    const double r = take("r", 1.0), x0 = take("x0", 0.0), y0 = take("y0", 0.0);
    const double wr = take("wr", 0.0), wi = take("wi", 0.0);
    if (!kv.empty()) throw UsageError("unknown circle key '" + kv.begin()->first + "'");
    if (!(r > 0.0)) throw UsageError("circle radius must be > 0");
    return Curve::circle(cd(x0, y0), r, cd(wr, wi));
  }
  if (kind == "file") {
    std::ifstream in(rest);
    if (!in) throw UsageError("cannot read curve file " + rest);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& ex) {
      throw UsageError("curve file " + rest + ": " + ex.what());
    }
    std::vector<CPoint> pts;
    for (const auto& p : j.at("points")) {
      const auto v = p.get<std::vector<double>>();
      if (v.size() != 4) throw UsageError("curve points must be [x, y, u, v]");
      pts.push_back(CPoint::from_real({v[0], v[1], v[2], v[3]}));
    }
    if (pts.size() < 4) throw UsageError("curve file needs at least 4 points");
    const bool closed = j.value("closed", false);
    return Curve::interpolate(CurveSamples::from_points(std::move(pts), closed), "file:" + rest);
  }
  throw UsageError("unknown curve spec '" + spec + "' (flat, circle:..., file:PATH)");
}

void apply_collar_spec(RunConfig& cfg, const std::string& spec) {
  for (const auto& item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value in collar spec '" + item + "'");
    const std::string k = item.substr(0, eq), v = item.substr(eq + 1);
    if (k == "n") {
      const double n = to_number(v);
      if (!(n >= 1.0)) throw UsageError("collar n must be >= 1");
      cfg.set("collar.n_boundary", static_cast<std::size_t>(n));
    } else if (k == "depths") {
      std::vector<double> d;
      for (const auto& s : split(v, ':')) d.push_back(to_number(s));
      if (d.empty()) throw UsageError("collar depths list is empty");
      cfg.set("collar.depth_exponents", d);
    } else if (k == "bisect_tol") {
      cfg.set("collar.bisect_tol", to_number(v));
    } else {
      throw UsageError("unknown collar key '" + k + "' (n, depths, bisect_tol)");
    }
  }
}

// ---------------------------------------------------------------- catalog

Report cmd_catalog(const RunConfig& cfg) {
  Report rep;
  rep.command = "catalog";
  const std::string action = str_param(cfg, "action", "list");
  if (action == "list") {
    json names = json::array();
    for (const auto& n : catalog_names()) names.push_back(n);
    rep.results["names"] = std::move(names);
    rep.results["parameters"] = {{"ball", json::array()},
                                 {"ellipsoid", {"a", "b"}},
                                 {"exp_flat", {"a", "b", "x0", "y0", "v0"}},
                                 {"behrens", json::array()},
                                 {"glued", {"K", "eta", "delta", "a", "x0", "y0", "v0", "eps0", "kappa_rel"}},
                                 {"worm", {"beta"}}};
    return rep;
  }
  const CatalogEntry e = make_entry(str_param(cfg, "name", ""));
  entry_warnings(e, rep);
  if (action == "describe") {
    rep.results["entry"] = entry_json(e);
    if (e.name == "behrens" || e.name == "glued") rep.results["tau_scan"] = to_json(behrens_tau());
    if (e.name == "exp_flat") {
      rep.results["root_check"] = to_json(no_extra_flat_root_check(e));
      const CircleData c = flat_circle_data(e);
      rep.results["flat_circle"] = {{"center", to_json(c.center)}, {"radius", c.radius}, {"w0", to_json(c.w0)}};
    }
    if (e.name == "glued") {
      const GluedParams gp = glued_params(e);
      rep.results["placement"] = to_json(check_placement(gp, behrens_tau().tau_hat));
      json log = json::array();
      for (const auto& r : default_placement().log)
        log.push_back({{"eps0", r.params.eps0}, {"a", r.params.a}, {"delta", r.params.delta},
                       {"v0", r.params.v0}, {"ok", r.ok}, {"failures", r.failures}});
      rep.results["placement_search_log"] = std::move(log);
    }
    if (e.name == "worm") {
      const double beta = e.params.at("beta");
      rep.results["bounds"] = {{"pi_over", worm_bound(beta)}, {"two_pi_over", 2.0 * worm_bound(beta)}};
    }
    return rep;
  }
  if (action == "selftest") {
    const SelftestReport st = selftest(e, cfg.seed(), num_param<std::size_t>(cfg, "points", 100));
    rep.results["selftest"] = to_json(st);
    if (!st.pass) rep.status = Status::CheckFailed;
    return rep;
  }
  throw UsageError("unknown catalog action '" + action + "'");
}

// ---------------------------------------------------------------- levi-scan

Report cmd_levi_scan(const RunConfig& cfg) {
  Report rep;
  rep.command = "levi-scan";
  const CatalogEntry e = make_entry(str_param(cfg, "domain", "exp_flat"));
  entry_warnings(e, rep);
  const LeviScanOptions opt = cfg.levi_scan();
  LeviScanReport scan;
  if (e.name == "exp_flat") {
    const FlatLocusCheck chk = exp_flat_locus_check(e, opt, cfg.domain_tol(), cfg.diff());
    scan = chk.scan;
    rep.results["closed_form"] = {{"center", to_json(chk.center)},
                                  {"radius", chk.radius},
                                  {"w0", to_json(chk.w0)},
                                  {"n_curve_like", chk.n_curve_like},
                                  {"n_other", chk.n_other},
                                  {"dist_points_to_circle", chk.dist_points_to_circle},
                                  {"dist_circle_to_points", chk.dist_circle_to_points},
                                  {"hausdorff", chk.hausdorff},
                                  {"root_check", to_json(chk.root)}};
  } else {
    scan = levi_flat_scan(e.rho, opt, cfg.domain_tol(), cfg.diff());
  }
  if (scan.n_converged < scan.n_samples)
    rep.warnings.push_back(std::to_string(scan.n_samples - scan.n_converged) +
                           " boundary projections did not converge");
  rep.results["scan"] = to_json(scan);
  std::vector<std::vector<json>> rows;
  for (std::size_t c = 0; c < scan.components.size(); ++c) {
    const auto& comp = scan.components[c];
    for (std::size_t i = 0; i < comp.points.size(); ++i) {
      const Vec4 x = comp.points[i].real();
      rows.push_back(row({c, x[0], x[1], x[2], x[3], comp.levi[i]}));
    }
  }
  rep.add_series("levi_flat_points", {"component", "x", "y", "u", "v", "levi"}, rows);
  return rep;
}

// ---------------------------------------------------------------- df-estimate

Report cmd_df_estimate(const RunConfig& cfg) {
  Report rep;
  rep.command = "df-estimate";
  const CatalogEntry e = make_entry(str_param(cfg, "domain", "ball"));
  entry_warnings(e, rep);
  const std::string family = str_param(cfg, "family", "raw");
  const bool with_points = num_param<bool>(cfg, "points", false);
  const CollarSpec spec = cfg.collar();
  const DiffScheme scheme = cfg.diff();
  const DomainTolerances tol = cfg.domain_tol();

  IndexReport idx;
  if (family == "fh-grid") {
    if (!has_flat_circle(e)) throw UsageError("fh-grid needs a domain with a Levi-flat circle");
    FhGridOptions o;
    o.collar = spec;
    const FhGrid g = fh_grid(e, o, tol, scheme);
    idx = g.index;
    rep.results["fh_grid"] = to_json(g);
    if (!g.all_ge_raw)
      rep.warnings.push_back("some weighted thresholds are below the raw threshold on the full collar");
  } else {
    std::vector<std::pair<std::string, DefiningFunction>> fam;
    for (const auto& member : split(family, ';')) {
      if (member == "raw") {
        fam.emplace_back("raw", e.rho);
        continue;
      }
      if (member.rfind("fh:", 0) != 0) throw UsageError("unknown family member '" + member + "'");
      std::map<std::string, std::string> kv;
      for (const auto& item : split(member.substr(3), ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
      }
      for (const auto& [k, v] : kv)
        if (k != "C" && k != "delta") throw UsageError("unknown fh key '" + k + "' (C, delta)");
      const double delta = kv.count("delta") ? to_number(kv["delta"]) : cfg.at("weight.delta").get<double>();
      double C = 0.0;
      const std::string cs = kv.count("C") ? kv["C"] : cfg.at("weight.C").dump();
      if (cs == "auto" || cs == "\"auto\"") {
        if (!has_flat_circle(e)) throw UsageError("C=auto needs a domain with a Levi-flat circle");
        const auto near = flat_circle(e).sample(cfg.transport().n_samples).points;
        const WeightConstant wc =
            choose_weight_constant(e.rho.field, near, delta, cfg.at("weight.safety_factor").get<double>());
        C = wc.C;
        rep.results["weight_constants"].push_back(
            {{"member", member}, {"K_hat", wc.K_hat}, {"C", wc.C}, {"heuristic", wc.heuristic}});
        rep.warnings.push_back("weight constant for '" + member + "' is a heuristic estimate");
      } else {
        C = to_number(cs);
      }
      const WeightedCandidate wc = build_candidate(e.rho.field, C, 1.0, delta);
      fam.emplace_back(member, DefiningFunction(wc.weighted, e.rho.bbox, member));
    }
    if (fam.empty()) throw UsageError("empty family");
    idx = estimate_index(fam, spec, tol, scheme);
  }

  json entries = json::array();
  std::vector<std::vector<json>> rows;
  bool all_ok = true;
  for (const auto& en : idx.entries) {
    json j = to_json(en.estimate, with_points);
    j["recipe"] = en.recipe;
    entries.push_back(std::move(j));
    all_ok = all_ok && en.estimate.cross_check_ok;
    const auto& ex = spec.depth_exponents;
    std::vector<std::size_t> order(ex.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ex[a] > ex[b]; });
    for (std::size_t k : order)
      rows.push_back(row({en.recipe, -ex[k], en.estimate.eta_collar_by_depth[k], en.estimate.eta_by_depth[k]}));
  }
  rep.results["entries"] = std::move(entries);
  rep.results["index"] = {{"best", idx.best}, {"argmax", idx.entries[idx.argmax].recipe}};
  if (e.name == "worm") {
    const double beta = e.params.at("beta");
    rep.results["bounds"] = {{"pi_over", worm_bound(beta)}, {"two_pi_over", 2.0 * worm_bound(beta)}};
  }
  rep.add_series("eta_vs_depth", {"recipe", "log10_depth_rel", "eta_collar", "eta_level"}, rows);
  if (!all_ok) rep.status = Status::CheckFailed;
  return rep;
}

// ---------------------------------------------------------------- decompose-check

Report cmd_decompose_check(const RunConfig& cfg) {
  Report rep;
  rep.command = "decompose-check";
  const CatalogEntry e = make_entry(str_param(cfg, "domain", "ball"));
  entry_warnings(e, rep);
  IdentityOptions o;
  o.n_points = num_param<std::size_t>(cfg, "points", 200);
  o.n_ab = num_param<std::size_t>(cfg, "pairs", 64);
  o.margin = num_param<double>(cfg, "margin", 1e-2);
  o.seed = cfg.seed();
  if (!cfg.at("weight.C").is_number()) throw UsageError("decompose-check needs a numeric weight.C");
  o.C = cfg.at("weight.C").get<double>();
  o.eta = cfg.at("weight.eta").get<double>();
  o.delta = cfg.at("weight.delta").get<double>();
  const IdentityCheck chk = decomposition_identity_check(e, o, cfg.diff());
  const double tol = cfg.diff().tol_nest;
  rep.results["identity"] = to_json(chk);
  rep.results["tol"] = tol;
  const bool ok = chk.max_rel_err_exact <= tol && chk.max_rel_err_numeric <= tol;
  rep.results["pass"] = ok;
  std::vector<std::vector<json>> rows;
  for (std::size_t i = 0; i < chk.points.size(); ++i)
    rows.push_back(row({i, chk.points[i].r, chk.points[i].rel_err_exact, chk.points[i].rel_err_numeric}));
  rep.add_series("identity_errors", {"index", "r", "rel_err_exact", "rel_err_numeric"}, rows);
  if (!ok) rep.status = Status::CheckFailed;
  return rep;
}

// ---------------------------------------------------------------- lemma33-check

Report cmd_weight_identities(const RunConfig& cfg) {
  Report rep;
  rep.command = "lemma33-check";
  const CatalogEntry e = make_entry(str_param(cfg, "domain", "exp_flat"));
  entry_warnings(e, rep);
  const Curve c = parse_curve(str_param(cfg, "curve", "flat"), e);
  const CurveSamples sigma = c.sample(cfg.transport().n_samples);
  std::vector<double> Cs{0.5, 1.0, 5.0};
  if (cfg.params().contains("C")) Cs = cfg.params().at("C").get<std::vector<double>>();
  const double tol = num_param<double>(cfg, "tol", 1e-5);
  const double flat_tol = cfg.levi_scan().flat_tol;
  json per_c = json::array();
  std::vector<std::vector<json>> rows;
  bool ok = true;
  for (double C : Cs) {
    const WeightIdentityReport r = check_weight_identities(e.rho.field, C, sigma, tol, flat_tol);
    per_c.push_back(to_json(r));
    ok = ok && r.pass;
    for (std::size_t i = 0; i < r.points.size(); ++i)
      rows.push_back(row({C, i, r.points[i].L_psi, r.points[i].inequality, r.points[i].identity}));
  }
  rep.results["curve"] = c.name();
  rep.results["n_samples"] = sigma.size();
  rep.results["reports"] = std::move(per_c);
  rep.results["pass"] = ok;
  rep.add_series("weight_identity_residuals", {"C", "index", "L_psi", "inequality", "identity"}, rows);
  if (!ok) rep.status = Status::CheckFailed;
  return rep;
}

// ---------------------------------------------------------------- transport-solve

Report cmd_transport_solve(const RunConfig& cfg) {
  Report rep;
  rep.command = "transport-solve";
  const CatalogEntry e = make_entry(str_param(cfg, "domain", "exp_flat"));
  entry_warnings(e, rep);
  DefiningFunction rho = e.rho;
  const std::string pert = str_param(cfg, "perturb", "");
  if (!pert.empty()) {
    const auto colon = pert.find(':');
    if (colon != 1) throw UsageError("perturbation must look like w:0.1 or z:0.1");
    rho = perturbed(rho, to_number(pert.substr(2)), pert[0]);
    if (pert[0] == 'z')
      rep.warnings.push_back("a multiplier e^{eps Re z} leaves Hess(L, N) unchanged on curves where "
                             "rho_w = 0; use w:eps to perturb it");
  }
  const Curve c = parse_curve(str_param(cfg, "curve", "flat"), e);
  const TransportOptions opt = cfg.transport();
  const std::string norm_s = str_param(cfg, "normalization", "nbar");
  if (norm_s != "nbar" && norm_s != "grad") throw UsageError("normalization must be nbar or grad");
  const RhsNormalization nrm = norm_s == "nbar" ? RhsNormalization::NbarDelta : RhsNormalization::GradNorm;

  const std::string rhs = str_param(cfg, "rhs", "obstruction");
  ComplexFn h;
  if (rhs == "obstruction") {
    h = obstruction_rhs_fn(rho, nrm, opt.scheme);
  } else if (rhs == "one") {
    h = [](const CPoint&) { return cd(1.0, 0.0); };
  } else if (rhs == "zero") {
    h = [](const CPoint&) { return cd(0.0, 0.0); };
  } else if (rhs.rfind("file:", 0) == 0) {
    const std::string path = rhs.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read rhs file " + path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& ex) {
      throw UsageError("rhs file " + path + ": " + ex.what());
    }
    std::vector<cd> vals;
    for (const auto& v : j.at("values")) {
      const auto p = v.get<std::vector<double>>();
      if (p.size() != 2) throw UsageError("rhs values must be [re, im]");
      vals.emplace_back(p[0], p[1]);
    }
    if (vals.size() < 2) throw UsageError("rhs file needs at least 2 values");
    // Values at uniformly spaced parameters, interpolated linearly in the parameter of the
    // nearest curve point.
    h = [vals, c](const CPoint& q) {
      const double span = c.t_hi() - c.t_lo();
      const double n = static_cast<double>(c.closed() ? vals.size() : vals.size() - 1);
      const double s = (c.nearest(q.real()) - c.t_lo()) / span * n;
      const std::size_t i = std::min(static_cast<std::size_t>(std::floor(s)), vals.size() - 1);
      const std::size_t j = c.closed() ? (i + 1) % vals.size() : std::min(i + 1, vals.size() - 1);
      const double f = s - static_cast<double>(i);
      return (1.0 - f) * vals[i] + f * vals[j];
    };
  } else {
    throw UsageError("unknown rhs '" + rhs + "' (obstruction, one, zero, file:PATH)");
  }

  const TransportSolution sol = solve_on_curve(c, rho, h, opt);
  rep.results["solution"] = to_json(sol);
  bool ok = sol.ok;

  const auto levi = [&] {
    std::vector<LeviForm> out(sol.gamma.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = levi_form(rho, sol.gamma.points[i], opt.tol, opt.scheme);
    return out;
  }();
  const std::vector<double> hln = hess_LN_on_curve(rho, sol.gamma, opt.scheme);
  std::vector<std::vector<json>> res_rows, levi_rows;
  double arc = 0.0;
  for (std::size_t i = 0; i < sol.gamma.size(); ++i) {
    if (i > 0) arc += distance(sol.gamma.points[i], sol.gamma.points[i - 1]);
    res_rows.push_back(row({i, arc, sol.h_values[i].real(), sol.h_values[i].imag(), sol.Lu[i].real(),
                            sol.Lu[i].imag(), std::abs(sol.residuals[i])}));
    levi_rows.push_back(row({i, arc, levi[i].normalized, levi[i].unnormalized, hln[i]}));
  }
  rep.add_series("transport_residual", {"index", "arc_length", "re_h", "im_h", "re_Lu", "im_Lu", "abs_residual"},
                 res_rows);
  rep.add_series("levi_along_curve", {"index", "arc_length", "levi", "levi_unnormalized", "abs_hess_LN"},
                 levi_rows);

  const bool correct = num_param<bool>(cfg, "correct", rhs == "obstruction");
  if (correct) {
    CutoffSpec cut;
    cut.inner = cfg.at("transport.inner").get<double>();
    cut.outer = cfg.at("transport.outer").get<double>();
    const CorrectedDefining cdf =
        corrected_defining(rho, c, cut, opt, cfg.at("transport.correction_tol").get<double>());
    rep.results["correction"] = to_json(cdf);
    ok = ok && cdf.ok;
    std::vector<std::vector<json>> rows;
    for (std::size_t i = 0; i < cdf.before.size(); ++i) rows.push_back(row({i, cdf.before[i], cdf.after[i]}));
    rep.add_series("correction", {"index", "abs_hess_LN_before", "abs_hess_LN_after"}, rows);
  }
  rep.results["pass"] = ok;
  if (!ok) rep.status = Status::CheckFailed;
  return rep;
}

// ---------------------------------------------------------------- glue-verify

Report cmd_glue_verify(const RunConfig& cfg) {
  Report rep;
  rep.command = "glue-verify";
  const CatalogEntry e = make_entry(str_param(cfg, "domain", "glued"));
  if (e.name != "glued") throw UsageError("glue-verify needs a glued domain");
  entry_warnings(e, rep);
  GluedCheckOptions o;
  o.n_boundary = cfg.at("glue.n_boundary").get<std::size_t>();
  o.confine_factor = cfg.at("glue.confine_factor").get<double>();
  o.seed = cfg.seed();
  o.scan = cfg.levi_scan();
  const GluedCheck chk = glued_check(e, o, cfg.domain_tol(), cfg.diff());
  rep.results["check"] = to_json(chk);
  rep.results["tau_scan"] = to_json(behrens_tau());
  const bool ok = chk.placement.ok && chk.min_grad > 0.0 && chk.partition_violations == 0 &&
                  chk.n_outside == 0 && chk.n_boundary == o.n_boundary;
  rep.results["pass"] = ok;
  if (chk.scan.n_flat > 0 && chk.n_near_origin == 0)
    rep.warnings.push_back("no flat point was sampled near the origin; the scan resolution there is coarse");
  std::vector<std::vector<json>> rows;
  for (std::size_t c = 0; c < chk.scan.components.size(); ++c) {
    const auto& comp = chk.scan.components[c];
    for (std::size_t i = 0; i < comp.points.size(); ++i) {
      const Vec4 x = comp.points[i].real();
      rows.push_back(row({c, x[0], x[1], x[2], x[3], comp.levi[i]}));
    }
  }
  rep.add_series("levi_flat_points", {"component", "x", "y", "u", "v", "levi"}, rows);
  if (!ok) rep.status = Status::CheckFailed;
  return rep;
}

}  // namespace dfforge::cli
