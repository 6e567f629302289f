#include "dfforge_cli/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "dfforge/errors.hpp"

namespace dfforge::cli {

void Report::add_series(const std::string& name, const std::vector<std::string>& columns,
                        const std::vector<std::vector<json>>& rows) {
  json r = json::array();
  for (const auto& row : rows) r.push_back(row);
  results["series"][name] = {{"columns", columns}, {"rows", std::move(r)}};
}

json make_body(const Report& r, const RunConfig& cfg) {
  return {{"schema", kSchemaVersion},
          {"command", r.command},
          {"config", cfg.tree},
          {"results", r.results},
          {"warnings", r.warnings},
          {"status", r.status == Status::Ok ? "ok" : "check_failed"}};
}

json make_header(int threads, double elapsed_s) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return {{"tool", "df-forge"},
          {"version", "0.1.0"},
          {"timestamp", ts.str()},
          {"threads", threads},
          {"elapsed_s", elapsed_s}};
}

std::string body_text(const json& report) { return report.at("body").dump(); }

std::string emit_plot_data(const json& report, const std::string& kind) {
  const json* body = report.contains("body") ? &report.at("body") : &report;
  if (!body->contains("results") || !body->at("results").contains("series") ||
      !body->at("results").at("series").contains(kind))
    throw SeriesMissing("report has no series '" + kind + "'");
  const json& s = body->at("results").at("series").at(kind);
  std::ostringstream out;
  out << std::setprecision(17);
  const auto& cols = s.at("columns");
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].get<std::string>();
  out << "\n";
  for (const auto& row : s.at("rows")) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      const json& v = row[i];
      if (v.is_string()) {
        out << v.get<std::string>();
      } else if (v.is_number_float()) {
        out << v.get<double>();
      } else if (v.is_null()) {
        out << "nan";
      } else {
        out << v.dump();
      }
    }
    out << "\n";
  }
  return out.str();
}

json to_json(const CPoint& p) { return json::array({p.z.real(), p.z.imag(), p.w.real(), p.w.imag()}); }

json to_json(cd c) { return json::array({c.real(), c.imag()}); }

json to_json(const FactResult& f) {
  return {{"id", f.id},   {"relation", f.relation}, {"expected", f.expected},
          {"measured", f.measured}, {"tol", f.tol}, {"pass", f.pass}};
}

json to_json(const LeviScanReport& r, bool with_points) {
  json comps = json::array();
  for (const auto& c : r.components) {
    json jc = {{"centroid", c.centroid},         {"extent", c.extent},
               {"classification", c.classification}, {"pca_eigenvalues", c.pca},
               {"ring_radius", c.ring_radius},   {"ring_spread", c.ring_spread},
               {"n_points", c.points.size()}};
    if (with_points) {
      json pts = json::array();
      for (const auto& p : c.points) pts.push_back(to_json(p));
      jc["points"] = std::move(pts);
    }
    comps.push_back(std::move(jc));
  }
  return {{"domain", r.domain},         {"n_samples", r.n_samples}, {"n_converged", r.n_converged},
          {"flat_tol", r.flat_tol},     {"resolution", r.resolution}, {"n_flat", r.n_flat},
          {"components", std::move(comps)}};
}

json to_json(const DFEstimate& e, bool with_points) {
  json j = {{"defining_function", e.defining_function},
            {"empirical", e.empirical},
            {"eta_hat", e.eta_hat},
            {"eta_bisect", e.eta_bisect},
            {"cross_check_ok", e.cross_check_ok},
            {"n_points", e.points.size()},
            {"skipped", e.skipped},
            {"eta_by_depth", e.eta_by_depth},
            {"eta_collar_by_depth", e.eta_collar_by_depth},
            {"collar_spec",
             {{"n_boundary", e.spec.n_boundary},
              {"depth_exponents", e.spec.depth_exponents},
              {"seed", e.spec.seed},
              {"bisect_tol", e.spec.bisect_tol}}}};
  if (!e.points.empty()) {
    const CollarPoint& b = e.points[e.binding_index];
    j["binding_point"] = {{"p", to_json(b.p)}, {"depth", b.depth}, {"eta", b.eta}};
  }
  if (e.fail_witness) {
    j["fail_witness"] = {{"p", to_json(e.fail_witness->p)},
                         {"eta", e.fail_witness->eta},
                         {"min_eig", e.fail_witness->min_eig}};
  } else {
    j["fail_witness"] = nullptr;
  }
  if (with_points) {
    json pts = json::array();
    for (const auto& c : e.points)
      pts.push_back({{"p", to_json(c.p)}, {"depth", c.depth}, {"level", c.depth_level}, {"eta", c.eta}});
    j["points"] = std::move(pts);
  }
  return j;
}

json to_json(const GluedParams& p) {
  return {{"K", p.K},   {"eta", p.eta}, {"delta", p.delta}, {"a", p.a},
          {"z0", to_json(p.z0)}, {"v0", p.v0}, {"eps0", p.eps0}, {"kappa_rel", p.kappa_rel}};
}

json to_json(const PlacementReport& r) {
  return {{"params", to_json(r.params)},
          {"origin_T", r.origin_T},
          {"origin_in_B1", r.origin_in_B1},
          {"tau_hat", r.tau_hat},
          {"max_intersection_radius", r.max_intersection_radius},
          {"min_transversality", r.min_transversality},
          {"n_intersection", r.n_intersection},
          {"eps_ball", r.eps_ball},
          {"max_rhoH_outside_cap", r.max_rhoH_outside_cap},
          {"level_ok", r.level_ok},
          {"ok", r.ok},
          {"failures", r.failures}};
}

json to_json(const TauScan& t) {
  return {{"tau_hat", t.tau_hat},       {"r_min", t.r_min},           {"r_max", t.r_max},
          {"resolution", t.resolution}, {"n_directions", t.n_directions}, {"n_points", t.n_points},
          {"min_levi", t.min_levi}};
}

json to_json(const RootCheck& r) {
  return {{"t_star", r.t_star},       {"min_value", r.min_value},         {"grid_min", r.grid_min},
          {"grid_argmin", r.grid_argmin}, {"value_at_zero", r.value_at_zero},
          {"value_at_left", r.value_at_left}, {"no_root", r.no_root}};
}

json to_json(const SelftestReport& r) {
  json facts = json::array();
  for (const auto& f : r.facts) facts.push_back(to_json(f));
  return {{"name", r.name},
          {"facts", std::move(facts)},
          {"n_points", r.n_points},
          {"max_jet_discrepancy", r.max_jet_discrepancy},
          {"jet_tol", r.jet_tol},
          {"pass", r.pass}};
}

json to_json(const WeightIdentityReport& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"p", to_json(p.p)},
                   {"levi", p.levi},
                   {"abs_H_LN", p.abs_H_LN},
                   {"L_psi", p.L_psi},
                   {"hess_psi_LL", p.hess_psi_LL},
                   {"N_lambda", to_json(p.N_lambda)},
                   {"L_xi", to_json(p.L_xi)},
                   {"inequality", p.inequality},
                   {"identity", p.identity}});
  return {{"C", r.C},
          {"tol", r.tol},
          {"max_L_psi", r.max_L_psi},
          {"max_inequality", r.max_inequality},
          {"max_identity", r.max_identity},
          {"pass", r.pass},
          {"points", std::move(pts)}};
}

json to_json(const IdentityCheck& c) {
  return {{"domain", c.domain},
          {"n_points", c.points.size()},
          {"n_pairs", c.opt.n_ab},
          {"C", c.opt.C},
          {"eta", c.opt.eta},
          {"delta", c.opt.delta},
          {"margin", c.opt.margin},
          {"max_rel_err_exact", c.max_rel_err_exact},
          {"max_rel_err_numeric", c.max_rel_err_numeric}};
}

json to_json(const TransportSolution& s) {
  return {{"curve", s.curve.name()},
          {"n_samples", s.gamma.size()},
          {"max_residual", s.max_residual},
          {"max_abs_u_on_curve", s.max_abs_u_on_curve},
          {"transport_tol", s.transport_tol},
          {"ok", s.ok},
          {"transversality",
           {{"min_sigma", s.transversality.min_sigma},
            {"min_sigma_L", s.transversality.min_sigma_L},
            {"floor", s.transversality.floor},
            {"transversal", s.transversality.transversal}}}};
}

json to_json(const CorrectedDefining& c) {
  json reduction = nullptr;
  if (c.max_after > 0.0) reduction = c.max_before / c.max_after;
  return {{"reach", c.reach},
          {"reduction", reduction},
          {"inner", c.inner},
          {"outer", c.outer},
          {"max_before", c.max_before},
          {"max_after", c.max_after},
          {"correction_tol", c.correction_tol},
          {"ok", c.ok},
          {"transport", to_json(c.transport)}};
}

json to_json(const GluedCheck& c) {
  return {{"params", to_json(c.params)},
          {"placement", to_json(c.placement)},
          {"n_boundary", c.n_boundary},
          {"min_grad", c.min_grad},
          {"partition_violations", c.partition_violations},
          {"piece_counts", {{"B1", c.piece_counts[0]}, {"B2", c.piece_counts[1]}, {"B3", c.piece_counts[2]}}},
          {"scan", to_json(c.scan, false)},
          {"b2_radius", c.b2_radius},
          {"confine_tol", c.confine_tol},
          {"max_confine_dist", c.max_confine_dist},
          {"n_near_circle", c.n_near_circle},
          {"n_near_origin", c.n_near_origin},
          {"n_outside", c.n_outside}};
}

json to_json(const FhGrid& g) {
  json rows = json::array();
  for (const auto& r : g.rows)
    rows.push_back({{"recipe", r.recipe},
                    {"C", r.C},
                    {"delta", r.delta},
                    {"eta_hat", r.eta_hat},
                    {"cross_check_ok", r.cross_check_ok},
                    {"eta_collar_by_depth", r.eta_collar_by_depth},
                    {"eta_near_sigma", r.eta_near_sigma},
                    {"ge_raw", r.ge_raw},
                    {"nondecreasing_toward_sigma", r.nondecreasing_toward_sigma}});
  return {{"sigma_radii", g.sigma_radii},
          {"rows", std::move(rows)},
          {"best", g.best},
          {"best_recipe", g.best_recipe},
          {"all_ge_raw", g.all_ge_raw},
          {"all_nondecreasing", g.all_nondecreasing}};
}

}  // namespace dfforge::cli
