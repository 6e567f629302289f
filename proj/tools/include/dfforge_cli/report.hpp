#pragma once

// Report envelope, plot-data series and JSON encodings of the library's result types.
//
// A report is {"header": {...}, "body": {...}}. The body holds everything that depends on
// the run configuration (schema, command, config, results, warnings, status); run-specific
// data (timestamp, wall time, thread count) lives in the header, so identical configurations
// give byte-identical bodies.

#include <string>
#include <vector>

#include "dfforge/catalog.hpp"
#include "dfforge/df_estimator.hpp"
#include "dfforge/transport.hpp"
#include "dfforge/verify.hpp"
#include "dfforge/weight.hpp"
#include "dfforge_cli/config.hpp"

namespace dfforge::cli {

inline constexpr int kSchemaVersion = 1;

enum class Status { Ok, CheckFailed };

struct Report {
  std::string command;
  json results = json::object();
  std::vector<std::string> warnings;
  Status status = Status::Ok;

  /// Adds a series {"columns": [...], "rows": [[...], ...]} under results.series[name].
  void add_series(const std::string& name, const std::vector<std::string>& columns,
                  const std::vector<std::vector<json>>& rows);
};

json make_body(const Report& r, const RunConfig& cfg);
json make_header(int threads, double elapsed_s);
/// Compact body dump used for determinism comparisons.
std::string body_text(const json& report);

/// CSV text of a named series from a report (or report body). SeriesMissing when absent.
std::string emit_plot_data(const json& report, const std::string& kind);

json to_json(const CPoint& p);
json to_json(cd c);
json to_json(const FactResult& f);
json to_json(const LeviScanReport& r, bool with_points = true);
json to_json(const DFEstimate& e, bool with_points = false);
json to_json(const PlacementReport& r);
json to_json(const GluedParams& p);
json to_json(const TauScan& t);
json to_json(const RootCheck& r);
json to_json(const SelftestReport& r);
json to_json(const WeightIdentityReport& r);
json to_json(const IdentityCheck& c);
json to_json(const TransportSolution& s);
json to_json(const CorrectedDefining& c);
json to_json(const GluedCheck& c);
json to_json(const FhGrid& g);

}  // namespace dfforge::cli
