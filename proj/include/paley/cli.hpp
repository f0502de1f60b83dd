#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paley/bounds.hpp"
#include "paley/error.hpp"
#include "paley/experiments.hpp"
#include "paley/frame.hpp"
#include "paley/io.hpp"
#include "paley/spectra.hpp"
#include "paley/verify.hpp"

namespace paley::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Injection points for tests; the binary uses the defaults.
struct Hooks {
  SpectrumSolver solver = default_solver;
};

enum class Format { Auto, Csv, Json };

struct RunConfig {
  std::string command;
  std::uint64_t p = 0;
  std::int64_t k = 0;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
  double alpha = 0.8;
  double beta = 0.7;
  std::int64_t m_alpha = 5;
  std::int64_t j_min = 3;
  Format format = Format::Auto;
  std::string out;
  std::string in;
  std::vector<std::int64_t> support;
  bool peel = false;
  bool empirical = false;
};

namespace detail {

inline io::Json params_json(const RunConfig& c) {
  return io::Json{{"p", c.p},         {"k", c.k},         {"seed", c.seed},
                  {"trials", c.trials}, {"alpha", c.alpha}, {"beta", c.beta},
                  {"m_alpha", c.m_alpha}, {"j_min", c.j_min}, {"support", c.support},
                  {"peel", c.peel},   {"empirical", c.empirical}, {"in", c.in}};
}

inline Format resolve(Format f, Format fallback) { return f == Format::Auto ? fallback : f; }

inline void require_json(Format f, const std::string& command) {
  if (f == Format::Csv) fail(ErrorCode::ParameterRange, command + " has no CSV form");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MalformedInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::ParameterRange, "cannot write " + path);
  f << text;
}

inline std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

inline SupportSet literal_support(const OddPrime& p, const std::vector<std::int64_t>& values,
                                  std::ostream& err) {
  bool changed = false;
  auto s = SupportSet::from_literal(p, values, &changed);
  if (changed) err << "warning: support elements reduced mod " << p.value() << "\n";
  return s;
}

struct Payload {
  std::string text;
  int status = 0;
  io::Json extra_meta = io::Json::object();
};

inline Payload cmd_frame(const RunConfig& c) {
  require_json(c.format, "frame");
  return {dump(io::frame_to_json(build_frame(c.p)))};
}

inline Payload cmd_gram(const RunConfig& c, std::ostream& err) {
  require_json(c.format, "gram");
  const PaleyPrime p(c.p);
  if (c.support.empty()) fail(ErrorCode::ParameterRange, "gram needs --support");
  const auto s = literal_support(p, c.support, err);
  return {dump(io::gram_to_json(gram_analytic(p, s), s))};
}

inline Payload cmd_bounds(const RunConfig& c, std::ostream& err) {
  require_json(c.format, "bounds");
  const OddPrime p(c.p);
  const bool paley = p.value() % 4 == 3 && p.value() >= 7;
  if (!paley) err << "warning: " << p.value() << " is not a Paley prime; bounds are formula values only\n";
  auto report = make_bound_report(p, c.k, c.beta);
  if (c.empirical) {
    const PaleyPrime pp(c.p);
    report.empirical_lower =
        estimate_rip_worst(pp, c.k, c.trials, c.seed, thread_count_from_env()).d.back();
  }
  std::vector<SparsityThreshold> table;
  for (auto f : kUnconditionalFamilies) table.push_back(max_sparsity(p, f));
  return {dump(io::bound_report_to_json(report, table))};
}

inline Payload cmd_estimate(const RunConfig& c) {
  const PaleyPrime p(c.p);
  const RipEstimate est = c.trials == 1
                              ? estimate_rip_single(p, c.k, c.seed)
                              : estimate_rip_worst(p, c.k, c.trials, c.seed, thread_count_from_env());
  const auto rows = io::ripcurve_rows(est);
  if (resolve(c.format, Format::Csv) == Format::Csv) {
    std::ostringstream os;
    io::write_ripcurve_csv(os, rows);
    return {os.str()};
  }
  return {dump(io::Json{{"p", est.p}, {"k", est.k}, {"seed", est.seed}, {"trials", est.trials},
                        {"rows", io::ripcurve_to_json(rows)}})};
}

inline Payload cmd_fit(const RunConfig& c) {
  require_json(c.format, "fit");
  if (c.in.empty()) fail(ErrorCode::ParameterRange, "fit needs --in");
  const std::string text = read_file(c.in);
  std::vector<io::RipCurveRow> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    io::Json doc;
    try {
      doc = io::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::MalformedInput, std::string("bad JSON: ") + e.what());
    }
    rows = io::ripcurve_from_json(doc.is_object() && doc.contains("rows") ? doc["rows"] : doc);
  } else {
    std::istringstream is(text);
    rows = io::read_ripcurve_csv(is);
  }
  const auto fit = fit_power_law(io::d_column(rows), c.j_min);
  return {dump(io::Json{{"beta", fit.beta},
                        {"intercept", fit.intercept},
                        {"r2", fit.r2},
                        {"points", fit.points},
                        {"j_min", c.j_min}})};
}

inline Payload cmd_demboratio(const RunConfig& c, const Hooks& hooks) {
  const PaleyPrime p(c.p);
  const auto rows = dembo_ratio_study(p, c.k, c.seed, hooks.solver);
  if (resolve(c.format, Format::Csv) == Format::Csv) {
    std::ostringstream os;
    io::write_demboratio_csv(os, rows);
    return {os.str()};
  }
  return {dump(io::demboratio_to_json(rows))};
}

inline Payload cmd_conjecture(const RunConfig& c, std::ostream& err) {
  const OddPrime p(c.p);
  if (!c.support.empty()) {
    require_json(c.format, "conjecture --support");
    const auto s = literal_support(p, c.support, err);
    if (c.peel) {
      io::Json trace = io::Json::array();
      for (const auto& r : greedy_peel(s, c.alpha, static_cast<std::size_t>(c.m_alpha))) {
        trace.push_back(io::record_to_json(r));
      }
      return {dump(io::Json{{"m_alpha", c.m_alpha}, {"trace", std::move(trace)}})};
    }
    return {dump(io::record_to_json(conjecture_search(s, c.alpha)))};
  }
  if (c.k == 0) fail(ErrorCode::ParameterRange, "conjecture needs --support or --k");
  const auto scan = conjecture_scan(p, c.k, c.trials, c.alpha, c.seed, thread_count_from_env());
  const auto summary = io::scan_summary_to_json(scan);
  err << "summary: " << summary.dump() << "\n";
  if (resolve(c.format, Format::Csv) == Format::Csv) {
    std::ostringstream os;
    io::write_conjecture_csv(os, scan);
    return {os.str(), 0, io::Json{{"summary", summary}}};
  }
  return {dump(io::scan_to_json(scan))};
}

inline Payload cmd_verify(const RunConfig& c, const Hooks& hooks, std::ostream& err) {
  require_json(c.format, "verify");
  const PaleyPrime p(c.p);
  const auto report = run_verification(p, hooks.solver);
  Payload out{dump(report.to_json())};
  if (!report.all_passed()) {
    std::string names;
    for (const auto& n : report.failed()) names += (names.empty() ? "" : ", ") + n;
    err << "error: verification failed: " << names << "\n";
    out.status = static_cast<int>(ErrorCode::VerificationFailure);
  }
  return out;
}

}  // namespace detail

/// Runs one invocation; args exclude the program name. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const Hooks& hooks = {}) {
  CLI::App app{"Paley frame RIP toolkit", "paley"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;

  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
  auto common = [&](CLI::App* sub, bool needs_p) {
    auto* opt = sub->add_option("--p", cfg.p, "prime modulus");
    if (needs_p) opt->required();
    sub->add_option("--format", cfg.format, "output format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", cfg.out, "output file (stdout if absent); writes <out>.meta.json");
  };

  auto* frame = app.add_subcommand("frame", "emit the Paley frame as JSON");
  common(frame, true);

  auto* gram = app.add_subcommand("gram", "emit the Gramian of a support as JSON");
  common(gram, true);
  gram->add_option("--support", cfg.support, "comma-separated indices (reduced mod p)")->delimiter(',')->required();

  auto* bounds = app.add_subcommand("bounds", "all RIP bound families and sparsity thresholds");
  common(bounds, true);
  bounds->add_option("--k", cfg.k, "sparsity level")->required();
  bounds->add_option("--beta", cfg.beta, "exponent of the conditional bound");
  bounds->add_flag("--empirical", cfg.empirical, "include an empirical lower bound d'(k)");
  bounds->add_option("--trials", cfg.trials, "trials for --empirical");
  bounds->add_option("--seed", cfg.seed, "master seed for --empirical");

  auto* estimate = app.add_subcommand("estimate", "empirical RIP curve d(j) or d'(j)");
  common(estimate, true);
  estimate->add_option("--k", cfg.k, "largest support size")->required();
  estimate->add_option("--seed", cfg.seed, "master seed");
  estimate->add_option("--trials", cfg.trials, "number of random supports (worst case taken)");

  auto* fit = app.add_subcommand("fit", "log-log least-squares slope of a ripcurve");
  common(fit, false);
  fit->add_option("--in", cfg.in, "ripcurve CSV or JSON")->required();
  fit->add_option("--j-min", cfg.j_min, "first j in the fit window");

  auto* dembo = app.add_subcommand("demboratio", "Dembo vs Gershgorin sharpness table");
  common(dembo, true);
  dembo->add_option("--k", cfg.k, "largest support size")->required();
  dembo->add_option("--seed", cfg.seed, "seed");

  auto* conj = app.add_subcommand("conjecture", "quadratic-residue conjecture experiments");
  common(conj, true);
  conj->add_option("--support", cfg.support, "explicit support (reduced mod p)")->delimiter(',');
  conj->add_option("--k", cfg.k, "support size for a random scan");
  conj->add_option("--trials", cfg.trials, "random supports to scan");
  conj->add_option("--seed", cfg.seed, "master seed");
  conj->add_option("--alpha", cfg.alpha, "ratio threshold");
  conj->add_option("--m-alpha", cfg.m_alpha, "peel stopping size");
  conj->add_flag("--peel", cfg.peel, "greedy pair removal trace for --support");

  auto* verify = app.add_subcommand("verify", "run the identity suite at p");
  common(verify, true);

  std::vector<const char*> argv{"paley"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorCode::ParameterRange);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  detail::Payload payload;
  try {
    if (cfg.command == "frame") payload = detail::cmd_frame(cfg);
    else if (cfg.command == "gram") payload = detail::cmd_gram(cfg, err);
    else if (cfg.command == "bounds") payload = detail::cmd_bounds(cfg, err);
    else if (cfg.command == "estimate") payload = detail::cmd_estimate(cfg);
    else if (cfg.command == "fit") payload = detail::cmd_fit(cfg);
    else if (cfg.command == "demboratio") payload = detail::cmd_demboratio(cfg, hooks);
    else if (cfg.command == "conjecture") payload = detail::cmd_conjecture(cfg, err);
    else payload = detail::cmd_verify(cfg, hooks, err);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cfg.out.empty()) {
      out << payload.text;
    } else {
      detail::write_file(cfg.out, payload.text);
      io::Json meta{{"command", cfg.command},
                    {"version", kVersion},
                    {"params", detail::params_json(cfg)},
                    {"seed", cfg.seed},
                    {"wall_time", wall},
                    {"exit_status", payload.status}};
      meta.update(payload.extra_meta);
      detail::write_file(cfg.out + ".meta.json", detail::dump(meta));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return payload.status;
}

}  // namespace paley::cli
