#pragma once

// Run configuration: a JSON tree with defaults, overridden by a config file and then by
// command-line flags. The merged tree is written verbatim into every report body.

#include <cstdint>
#include <string>

#include "json.hpp"

#include "dfforge/df_estimator.hpp"
#include "dfforge/domain.hpp"
#include "dfforge/transport.hpp"

namespace dfforge::cli {

using json = nlohmann::json;

struct RunConfig {
  json tree;

  static RunConfig defaults();

  /// Merge a JSON object. UsageError for keys that do not exist in the defaults (free-form
  /// below "command.params") or for values of the wrong JSON type.
  void merge(const json& patch);
  void merge_file(const std::string& path);

  /// Sets a dotted key, e.g. set("levi_scan.n_samples", 100000).
  void set(const std::string& dotted, const json& value);
  const json& at(const std::string& dotted) const;

  std::uint64_t seed() const;
  std::string out() const;
  DiffScheme diff() const;
  DomainTolerances domain_tol() const;
  LeviScanOptions levi_scan() const;
  CollarSpec collar() const;
  TransportOptions transport() const;
  json& params() { return tree["command"]["params"]; }
  const json& params() const { return tree.at("command").at("params"); }
};

}  // namespace dfforge::cli
