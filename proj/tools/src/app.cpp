#include "dfforge_cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "CLI11.hpp"

#include "dfforge/errors.hpp"
#include "dfforge/parallel.hpp"
#include "dfforge_cli/commands.hpp"

namespace dfforge::cli {

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::string csv_path;
  std::string series;

  // Command parameters, copied into command.params when given.
  std::map<std::string, std::string> str;
  std::map<std::string, double> num;
  std::map<std::string, bool> flag;
  std::optional<std::size_t> n;
  std::optional<double> flat_tol;
  std::optional<std::string> collar;
  std::optional<std::string> C;
  std::optional<double> eta, delta;
  std::vector<double> C_list;
};

using CommandFn = std::function<Report(const RunConfig&)>;

void add_string(CLI::App* sub, Flags& f, const std::string& flag, const std::string& key,
                const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&f, key](const std::string& v) { f.str[key] = v; }, help);
}

void add_number(CLI::App* sub, Flags& f, const std::string& flag, const std::string& key,
                const std::string& help) {
  sub->add_option_function<double>(
      flag, [&f, key](double v) { f.num[key] = v; }, help);
}

std::optional<int> threads_from_env() {
  const char* s = std::getenv("DF_FORGE_THREADS");
  if (s == nullptr || *s == '\0') return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 1) throw UsageError("DF_FORGE_THREADS must be a positive integer");
  return static_cast<int>(v);
}

RunConfig build_config(const Flags& f, const std::string& command) {
  RunConfig cfg = RunConfig::defaults();
  if (!f.config_path.empty()) cfg.merge_file(f.config_path);
  cfg.set("command.name", command);
  if (f.seed) cfg.set("seed", *f.seed);
  if (f.out) cfg.set("out", *f.out);
  if (f.n) {
    if (command == "glue-verify" || command == "levi-scan")
      cfg.set("levi_scan.n_samples", *f.n);
    else if (command == "df-estimate")
      cfg.set("collar.n_boundary", *f.n);
    else if (command == "lemma33-check" || command == "transport-solve")
      cfg.set("transport.n_samples", *f.n);
    else if (command == "catalog" || command == "decompose-check")
      cfg.params()["points"] = *f.n;
  }
  if (f.flat_tol) cfg.set("levi_scan.flat_tol", *f.flat_tol);
  if (f.collar) apply_collar_spec(cfg, *f.collar);
  if (f.C) {
    if (*f.C == "auto") {
      cfg.set("weight.C", "auto");
    } else {
      try {
        cfg.set("weight.C", std::stod(*f.C));
      } catch (const std::invalid_argument&) {
        throw UsageError("--C expects a number or 'auto'");
      }
    }
  }
  if (f.eta) cfg.set("weight.eta", *f.eta);
  if (f.delta) cfg.set("weight.delta", *f.delta);
  if (!f.C_list.empty()) cfg.params()["C"] = f.C_list;
  for (const auto& [k, v] : f.str) cfg.params()[k] = v;
  for (const auto& [k, v] : f.num) cfg.params()[k] = v;
  for (const auto& [k, v] : f.flag) cfg.params()[k] = v;
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Diederich-Fornaess exponent toolkit for domains in C^2", "df-forge"};
  app.require_subcommand(1);
  app.add_option("--config", f.config_path, "JSON config file (comments allowed)");
  app.add_option_function<std::uint64_t>("--seed", [&](std::uint64_t v) { f.seed = v; }, "Global seed");
  app.add_option_function<std::string>("--out", [&](const std::string& v) { f.out = v; },
                                       "Write the report here instead of stdout");
  app.add_option_function<int>("--threads", [&](int v) { f.threads = v; }, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--csv", f.csv_path, "Write the --series plot data as CSV to this path");
  app.add_option("--series", f.series, "Series to export with --csv");

  std::map<CLI::App*, std::pair<std::string, CommandFn>> commands;
  auto add_cmd = [&](const std::string& name, const std::string& help, CommandFn fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    commands[sub] = {name, std::move(fn)};
    return sub;
  };

  auto* cat = add_cmd("catalog", "List, describe or self-test catalog domains", cmd_catalog);
  cat->add_option_function<std::string>(
         "action", [&](const std::string& v) { f.str["action"] = v; }, "list | describe | selftest")
      ->check(CLI::IsMember({"list", "describe", "selftest"}));
  cat->add_option_function<std::string>("name", [&](const std::string& v) { f.str["name"] = v; },
                                        "Domain spec, e.g. exp_flat:a=1,b=1");
  cat->add_option_function<std::size_t>("--n", [&](std::size_t v) { f.n = v; }, "Self-test points");

  auto* scan = add_cmd("levi-scan", "Locate Levi-flat boundary points", cmd_levi_scan);
  add_string(scan, f, "--domain", "domain", "Domain spec");
  scan->add_option_function<std::size_t>("--n", [&](std::size_t v) { f.n = v; }, "Boundary samples");
  scan->add_option_function<double>("--flat-tol", [&](double v) { f.flat_tol = v; }, "Flatness tolerance");

  auto* est = add_cmd("df-estimate", "Empirical exponent thresholds on interior collars", cmd_df_estimate);
  add_string(est, f, "--domain", "domain", "Domain spec");
  add_string(est, f, "--family", "family", "raw | fh:C=..,delta=.. | ';' list | fh-grid");
  est->add_option_function<std::size_t>("--n", [&](std::size_t v) { f.n = v; }, "Boundary samples");
  est->add_option_function<std::string>("--collar", [&](const std::string& v) { f.collar = v; },
                                        "n=..,depths=2:3:4,bisect_tol=..");
  est->add_option_function<std::string>("--C", [&](const std::string& v) { f.C = v; },
                                        "Weight constant or 'auto'");
  est->add_option_function<double>("--delta", [&](double v) { f.delta = v; }, "Weight delta");
  est->add_flag_function("--points", [&](std::int64_t) { f.flag["points"] = true; },
                         "Include collar points in the report");

  auto* dec = add_cmd("decompose-check", "Compare the I/II/III decomposition with direct Hessians",
                      cmd_decompose_check);
  add_string(dec, f, "--domain", "domain", "Domain spec");
  dec->add_option_function<std::size_t>("--points,--n", [&](std::size_t v) { f.n = v; }, "Interior points");
  add_number(dec, f, "--pairs", "pairs", "(a, b) pairs per point");
  add_number(dec, f, "--margin", "margin", "Interior margin");
  dec->add_option_function<std::string>("--C", [&](const std::string& v) { f.C = v; }, "Weight constant");
  dec->add_option_function<double>("--eta", [&](double v) { f.eta = v; }, "Exponent");
  dec->add_option_function<double>("--delta", [&](double v) { f.delta = v; }, "Weight delta");

  auto* wid = add_cmd("lemma33-check", "Weight identities on a Levi-flat curve", cmd_weight_identities);
  add_string(wid, f, "--domain", "domain", "Domain spec");
  add_string(wid, f, "--curve", "curve", "flat | circle:r=..,x0=.. | file:PATH");
  wid->add_option("--C", f.C_list, "Weight constants");
  wid->add_option_function<std::size_t>("--n", [&](std::size_t v) { f.n = v; }, "Curve samples");
  wid->add_option_function<double>("--flat-tol", [&](double v) { f.flat_tol = v; }, "Flatness tolerance");
  add_number(wid, f, "--tol", "tol", "Residual tolerance");

  auto* tr = add_cmd("transport-solve", "Solve L u = h along a boundary curve", cmd_transport_solve);
  add_string(tr, f, "--domain", "domain", "Domain spec");
  add_string(tr, f, "--curve", "curve", "flat | circle:r=..,x0=.. | file:PATH");
  add_string(tr, f, "--rhs", "rhs", "obstruction | one | zero | file:PATH");
  add_string(tr, f, "--normalization", "normalization", "nbar | grad");
  add_string(tr, f, "--perturb", "perturb", "Multiply rho by e^{eps Re w}: w:0.1 (or z:0.1)");
  tr->add_option_function<std::size_t>("--n", [&](std::size_t v) { f.n = v; }, "Curve samples");
  tr->add_flag_function("--no-correct", [&](std::int64_t) { f.flag["correct"] = false; },
                        "Skip the corrected defining function");
  tr->add_flag_function("--correct", [&](std::int64_t) { f.flag["correct"] = true; },
                        "Build the corrected defining function");

  auto* glue = add_cmd("glue-verify", "Check the glued domain: partition, gradient, flat locus", cmd_glue_verify);
  add_string(glue, f, "--domain", "domain", "Glued domain spec");
  glue->add_option_function<std::size_t>("--n", [&](std::size_t v) { f.n = v; }, "Levi scan samples");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "df-forge: " << e.what() << "\n";
    return kExitError;
  }

  const int prev_threads = thread_count();
  try {
    auto sel = app.get_subcommands();
    const auto& [name, fn] = commands.at(sel.front());
    RunConfig cfg = build_config(f, name);
    std::optional<int> threads = f.threads;
    if (!threads) threads = threads_from_env();
    if (threads) set_thread_count(*threads);
    if (!f.csv_path.empty() && f.series.empty()) throw UsageError("--csv needs --series");

    const auto t0 = std::chrono::steady_clock::now();
    const Report rep = fn(cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const json report = {{"header", make_header(thread_count(), elapsed)}, {"body", make_body(rep, cfg)}};
    set_thread_count(prev_threads);

    if (!f.csv_path.empty()) {
      const std::string csv = emit_plot_data(report, f.series);
      std::ofstream csv_out(f.csv_path);
      if (!csv_out) throw UsageError("cannot write " + f.csv_path);
      csv_out << csv;
    }
    const std::string out_path = cfg.out();
    if (out_path.empty()) {
      out << report.dump(2) << "\n";
    } else {
      std::ofstream file(out_path);
      if (!file) throw UsageError("cannot write " + out_path);
      file << report.dump(2) << "\n";
    }
    for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
    return rep.status == Status::Ok ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    set_thread_count(prev_threads);
    err << "df-forge: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    set_thread_count(prev_threads);
    err << "df-forge: bad parameter: " << e.what() << "\n";
    return kExitError;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace dfforge::cli
