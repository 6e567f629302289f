#pragma once

// One function per subcommand. Each reads its parameters from cfg.params() and the shared
// config sections, and returns the report contents.

#include <map>
#include <string>

#include "dfforge/curve.hpp"
#include "dfforge_cli/report.hpp"

namespace dfforge::cli {

/// "k=v,k=v" -> map; UsageError on malformed items or non-numeric values.
std::map<std::string, double> parse_kv(const std::string& s);

/// "flat" (the entry's Levi-flat circle), "circle:r=R,x0=..,y0=..,wr=..,wi=.." or
/// "file:PATH" with {"points": [[x, y, u, v], ...], "closed": bool}.
Curve parse_curve(const std::string& spec, const CatalogEntry& e);

/// "n=2000,depths=2:3:4:5:6,bisect_tol=1e-4" applied onto cfg.collar.
void apply_collar_spec(RunConfig& cfg, const std::string& spec);

Report cmd_catalog(const RunConfig& cfg);
Report cmd_levi_scan(const RunConfig& cfg);
Report cmd_df_estimate(const RunConfig& cfg);
Report cmd_decompose_check(const RunConfig& cfg);
Report cmd_weight_identities(const RunConfig& cfg);
Report cmd_transport_solve(const RunConfig& cfg);
Report cmd_glue_verify(const RunConfig& cfg);

}  // namespace dfforge::cli
