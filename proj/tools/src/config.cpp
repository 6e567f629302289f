#include "dfforge_cli/config.hpp"

#include <fstream>
#include <sstream>

#include "dfforge/errors.hpp"

namespace dfforge::cli {

namespace {

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return true;
  return a.type() == b.type();
}

void merge_into(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) throw UsageError("config section '" + path + "' must be an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (key == "command.params" || key == "weight.C") {
      base[it.key()] = it.value();
      continue;
    }
    if (!base.contains(it.key())) throw UsageError("unknown config key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge_into(slot, it.value(), key);
    } else {
      if (!same_kind(slot, it.value()))
        throw UsageError("config key '" + key + "' expects " + std::string(slot.type_name()));
      slot = it.value();
    }
  }
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.tree = {
      {"seed", 1},
      {"out", ""},
      {"diff",
       {{"base_step", 1e-3},
        {"richardson_levels", 2},
        {"third_step", 1e-3},
        {"tolerances", {{"consistency", 1e-4}, {"hermitian", 1e-6}, {"nest", 1e-4}}}}},
      {"domain", {{"grad_floor", 1e-8}, {"boundary_tol", 1e-9}, {"max_iter", 100}}},
      {"levi_scan",
       {{"n_samples", 10000},
        {"flat_tol", 1e-8},
        {"link_factor", 3.0},
        {"curve_ratio", 25.0},
        {"point_factor", 5.0},
        {"ring_spread", 0.2}}},
      {"collar",
       {{"n_boundary", 2000}, {"depth_exponents", {2, 3, 4, 5, 6}}, {"bisect_tol", 1e-4}}},
      {"weight", {{"C", 1.0}, {"safety_factor", 2.0}, {"eta", 0.5}, {"delta", 0.1}}},
      {"transport",
       {{"n_samples", 64},
        {"transv_floor", 1e-3},
        {"transport_tol", 1e-5},
        {"correction_tol", 1e-5},
        {"inner", 0.0},
        {"outer", 0.0}}},
      {"glue", {{"n_boundary", 10000}, {"confine_factor", 10.0}}},
      {"command", {{"name", ""}, {"params", json::object()}}},
  };
  return c;
}

void RunConfig::merge(const json& patch) { merge_into(tree, patch, ""); }

void RunConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json patch;
  try {
    patch = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  merge(patch);
}

void RunConfig::set(const std::string& dotted, const json& value) {
  json patch = value;
  std::stringstream ss(dotted);
  std::vector<std::string> parts;
  for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  merge(patch);
}

const json& RunConfig::at(const std::string& dotted) const {
  const json* node = &tree;
  std::stringstream ss(dotted);
  for (std::string p; std::getline(ss, p, '.');) {
    if (!node->contains(p)) throw UsageError("missing config key '" + dotted + "'");
    node = &node->at(p);
  }
  return *node;
}

std::uint64_t RunConfig::seed() const { return tree.at("seed").get<std::uint64_t>(); }
std::string RunConfig::out() const { return tree.at("out").get<std::string>(); }

DiffScheme RunConfig::diff() const {
  const json& d = tree.at("diff");
  DiffScheme s;
  s.base_step = d.at("base_step").get<double>();
  s.richardson_levels = d.at("richardson_levels").get<int>();
  s.third_step = d.at("third_step").get<double>();
  s.consistency_tol = d.at("tolerances").at("consistency").get<double>();
  s.tol_hermitian = d.at("tolerances").at("hermitian").get<double>();
  s.tol_nest = d.at("tolerances").at("nest").get<double>();
  if (!(s.base_step > 0.0) || s.richardson_levels < 1)
    throw UsageError("diff.base_step must be > 0 and diff.richardson_levels >= 1");
  return s;
}

DomainTolerances RunConfig::domain_tol() const {
  const json& d = tree.at("domain");
  DomainTolerances t;
  t.grad_floor = d.at("grad_floor").get<double>();
  t.boundary_tol = d.at("boundary_tol").get<double>();
  t.max_iter = d.at("max_iter").get<int>();
  return t;
}

LeviScanOptions RunConfig::levi_scan() const {
  const json& d = tree.at("levi_scan");
  LeviScanOptions o;
  o.n_samples = d.at("n_samples").get<std::size_t>();
  o.flat_tol = d.at("flat_tol").get<double>();
  o.link_factor = d.at("link_factor").get<double>();
  o.curve_ratio = d.at("curve_ratio").get<double>();
  o.point_factor = d.at("point_factor").get<double>();
  o.ring_spread = d.at("ring_spread").get<double>();
  o.seed = seed();
  return o;
}

CollarSpec RunConfig::collar() const {
  const json& d = tree.at("collar");
  CollarSpec c;
  c.n_boundary = d.at("n_boundary").get<std::size_t>();
  c.depth_exponents = d.at("depth_exponents").get<std::vector<double>>();
  c.bisect_tol = d.at("bisect_tol").get<double>();
  c.seed = seed();
  if (c.depth_exponents.empty()) throw UsageError("collar.depth_exponents is empty");
  return c;
}

TransportOptions RunConfig::transport() const {
  const json& d = tree.at("transport");
  TransportOptions o;
  o.n_samples = d.at("n_samples").get<std::size_t>();
  o.transv_floor = d.at("transv_floor").get<double>();
  o.transport_tol = d.at("transport_tol").get<double>();
  o.scheme = diff();
  o.tol = domain_tol();
  return o;
}

}  // namespace dfforge::cli
