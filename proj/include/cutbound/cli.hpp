// Subcommand implementations behind the command-line front end:
//   bound     first-moment lower-bound curve (exact and/or log-domain)
//   simulate  Monte Carlo empirical curve with Wilson intervals
//   exact     full-enumeration oracle (tail, E[B_w], E[A_{u,v,w}])
//   compare   gap table between a bound file and an empirical file
// Each returns a process exit code: 0 success, 1 usage/validation error,
// 2 enumeration guard exceeded, 3 comparison violation.
#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "cutbound/bound.hpp"
#include "cutbound/cutspace.hpp"
#include "cutbound/ensemble.hpp"
#include "cutbound/mincut.hpp"
#include "cutbound/montecarlo.hpp"
#include "cutbound/rational.hpp"
#include "cutbound/serialize.hpp"
#include "cutbound/version.hpp"

namespace cutbound {

struct CliOptions {
  unsigned k = 0, n = 0;
  std::string mu;
  unsigned long long delta_max = 0;
  bool has_delta_max = false;
  std::uint64_t instances = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string out_dir = ".";
  std::string format = "both";           // csv | json | both
  std::string representation = "exact";  // exact | log | both
  std::string window;                    // "LO..HI"; empty = full range
  std::string bound_file, empirical_file;
};

namespace detail {

inline bool want_csv(const std::string& format) { return format == "csv" || format == "both"; }
inline bool want_json(const std::string& format) { return format == "json" || format == "both"; }

inline void check_enum(const std::string& value, std::initializer_list<const char*> allowed,
                       const std::string& flag) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string msg = flag + " must be one of:";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw validation_error(msg + " (got \"" + value + "\")");
}

inline std::pair<unsigned long long, unsigned long long> parse_window(const std::string& text) {
  const std::size_t dots = text.find("..");
  auto fail = [&] {
    throw validation_error("--window must look like LO..HI (got \"" + text + "\")");
  };
  if (dots == std::string::npos) fail();
  unsigned long long lo = 0, hi = 0;
  const char* b1 = text.data();
  const char* e1 = text.data() + dots;
  const char* b2 = text.data() + dots + 2;
  const char* e2 = text.data() + text.size();
  auto r1 = std::from_chars(b1, e1, lo);
  auto r2 = std::from_chars(b2, e2, hi);
  if (r1.ec != std::errc() || r1.ptr != e1 || r2.ec != std::errc() || r2.ptr != e2) fail();
  if (lo > hi) throw validation_error("--window needs LO <= HI");
  return {lo, hi};
}

inline std::string out_path(const CliOptions& opts, const char* name) {
  return (std::filesystem::path(opts.out_dir) / name).string();
}

inline void prepare_out_dir(const CliOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
}

inline EnsembleParams make_params(const CliOptions& opts) {
  if (opts.mu.empty()) throw validation_error("--mu is required");
  EnsembleParams params;
  params.k = opts.k;
  params.n = opts.n;
  params.pmf = WeightPmf::parse(opts.mu);
  params.validate();
  return params;
}

inline Json base_manifest(const char* subcommand, const EnsembleParams& params,
                          const CliOptions& opts, unsigned long long delta_max) {
  return Json{{"subcommand", subcommand},
              {"k", params.k},
              {"n", params.n},
              {"mu", params.pmf.to_string()},
              {"delta_max", delta_max},
              {"out_dir", opts.out_dir},
              {"format", opts.format},
              {"version", kVersion},
              {"timestamp", manifest_timestamp()}};
}

}  // namespace detail

inline int run_bound(const CliOptions& opts) {
  detail::check_enum(opts.format, {"csv", "json", "both"}, "--format");
  detail::check_enum(opts.representation, {"exact", "log", "both"}, "--representation");
  const EnsembleParams params = detail::make_params(opts);
  const bool want_exact = opts.representation != "log";
  const bool want_log = opts.representation != "exact";

  const unsigned long long delta_max =
      opts.has_delta_max
          ? opts.delta_max
          : 2 * zero_crossing_delta(params, want_exact ? Representation::exact
                                                       : Representation::log_domain);

  Json manifest = detail::base_manifest("bound", params, opts, delta_max);
  manifest["representation"] = opts.representation;

  BoundCurve exact_curve, log_curve;
  if (want_exact) exact_curve = tail_lower_bound(params, delta_max);
  if (want_log) log_curve = tail_lower_bound_logdomain(params, delta_max);
  const BoundCurve& primary = want_exact ? exact_curve : log_curve;

  detail::prepare_out_dir(opts);
  if (detail::want_csv(opts.format)) {
    write_text_file(detail::out_path(opts, "bound.csv"), to_csv(primary, manifest));
    if (want_exact && want_log)
      write_text_file(detail::out_path(opts, "bound_log.csv"), to_csv(log_curve, manifest));
  }

  double max_rel = 0.0;
  if (want_exact && want_log) {
    for (unsigned long long delta = 0; delta <= delta_max; ++delta) {
      const double e = exact_curve.raw[delta];
      if (std::abs(e) <= 1e-12) continue;
      max_rel = std::max(max_rel, std::abs(log_curve.raw[delta] - e) / std::abs(e));
    }
    std::cout << "cross-check max relative disagreement: " << double_string(max_rel) << "\n";
  }

  if (detail::want_json(opts.format)) {
    Json j = to_json(primary);
    j["manifest"] = manifest;
    if (want_exact && want_log) {
      j["cross_check"] = Json{{"max_relative_disagreement", max_rel}};
      Json jl = to_json(log_curve);
      jl["manifest"] = manifest;
      write_text_file(detail::out_path(opts, "bound_log.json"), jl.dump(2) + "\n");
    }
    write_text_file(detail::out_path(opts, "bound.json"), j.dump(2) + "\n");
  }

  std::cout << "bound curve written for delta in [0, " << delta_max << "] to " << opts.out_dir
            << "\n";
  return 0;
}

inline int run_simulate(const CliOptions& opts) {
  detail::check_enum(opts.format, {"csv", "json", "both"}, "--format");
  SimulationConfig config;
  config.params = detail::make_params(opts);
  config.instances = opts.instances;
  config.master_seed = opts.seed;
  config.workers = opts.workers;
  config.delta_max = opts.has_delta_max
                         ? opts.delta_max
                         : 2 * zero_crossing_delta(config.params, Representation::log_domain);
  config.validate();

  const EmpiricalCurve curve = run_simulation(config);

  Json manifest = detail::base_manifest("simulate", config.params, opts, config.delta_max);
  manifest["instances"] = config.instances;
  manifest["seed"] = config.master_seed;

  detail::prepare_out_dir(opts);
  if (detail::want_csv(opts.format))
    write_text_file(detail::out_path(opts, "empirical.csv"), to_csv(curve, manifest));
  if (detail::want_json(opts.format)) {
    Json j = to_json(curve);
    j["manifest"] = manifest;
    write_text_file(detail::out_path(opts, "empirical.json"), j.dump(2) + "\n");
  }

  std::cout << "simulated " << config.instances << " instances; empirical curve for delta in [0, "
            << curve.delta_max() << "] written to " << opts.out_dir << "\n";
  return 0;
}

inline int run_exact(const CliOptions& opts) {
  detail::check_enum(opts.format, {"csv", "json", "both"}, "--format");
  const EnsembleParams params = detail::make_params(opts);

  std::map<unsigned long long, BigRat> tail_mass;  // lambda -> probability
  std::map<unsigned long long, BigRat> e_b;
  std::map<std::tuple<unsigned, unsigned, unsigned long long>, BigRat> e_a;
  BigRat total = 0;
  enumerate_ensemble(params, [&](const WeightedGraph& g, const BigRat& prob) {
    total += prob;
    tail_mass[global_min_cut(g).value] += prob;
    const CutSpectrum bs = cut_weight_distribution(g);
    for (const auto& [w, count] : bs.b)
      if (count) e_b[w] += prob * count;
    const CutSpectrum as = detailed_cut_distribution(g);
    for (const auto& [cell, count] : as.a)
      if (count) e_a[cell] += prob * count;
  });
  if (total != 1) throw std::logic_error("enumeration probabilities do not sum to 1");

  const unsigned long long max_lambda = tail_mass.rbegin()->first;
  const unsigned long long delta_max =
      opts.has_delta_max ? opts.delta_max : max_lambda + 1;

  // Exact tail by suffix sums over the lambda distribution.
  std::vector<BigRat> tail(delta_max + 1, BigRat(0));
  for (unsigned long long delta = 0; delta <= delta_max; ++delta)
    for (const auto& [lambda, mass] : tail_mass)
      if (lambda >= delta) tail[delta] += mass;

  Json manifest = detail::base_manifest("exact", params, opts, delta_max);

  detail::prepare_out_dir(opts);
  if (detail::want_csv(opts.format)) {
    std::string csv = manifest_comment(manifest);
    csv += "delta,probability\n";
    for (unsigned long long delta = 0; delta <= delta_max; ++delta)
      csv += std::to_string(delta) + "," + decimal_string(tail[delta]) + "\n";
    write_text_file(detail::out_path(opts, "exact_tail.csv"), csv);
  }

  if (detail::want_json(opts.format)) {
    Json points = Json::array();
    for (unsigned long long delta = 0; delta <= delta_max; ++delta)
      points.push_back(Json{{"delta", delta},
                            {"probability", to_double(tail[delta])},
                            {"probability_decimal", decimal_string(tail[delta])},
                            {"probability_exact", exact_string(tail[delta])}});
    Json jb = Json::object();
    for (const auto& [w, value] : e_b)
      jb[std::to_string(w)] =
          Json{{"decimal", decimal_string(value)}, {"exact", exact_string(value)}};
    Json ja = Json::object();
    for (const auto& [cell, value] : e_a) {
      const auto& [u, v, w] = cell;
      ja[std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w)] =
          Json{{"decimal", decimal_string(value)}, {"exact", exact_string(value)}};
    }
    Json j{{"manifest", manifest},
           {"cardinality", ensemble_cardinality(params).str()},
           {"tail", points},
           {"expected_b", jb},
           {"expected_a", ja}};
    write_text_file(detail::out_path(opts, "exact.json"), j.dump(2) + "\n");
  }

  std::cout << "exact enumeration done; max lambda " << max_lambda << "; files written to "
            << opts.out_dir << "\n";
  return 0;
}

namespace detail {

// The empirical side of a comparison may be a real empirical file or, for
// degenerate self-checks, another bound file read as p-hat = clamped bound.
inline EmpiricalCurve empirical_input(const Json& j) {
  if (j.contains("instances")) return empirical_curve_from_json(j);
  const BoundCurve as_bound = bound_curve_from_json(j);
  EmpiricalCurve curve;
  curve.params = as_bound.params;
  for (unsigned long long delta = 0; delta <= as_bound.delta_max(); ++delta) {
    const double value = as_bound.clamped(delta);
    curve.successes.push_back(0);
    curve.empirical.push_back(value);
    curve.ci_low.push_back(value);
    curve.ci_high.push_back(value);
  }
  return curve;
}

inline void check_same_params(const Json& ma, const Json& mb) {
  std::string differing;
  for (const char* field : {"k", "n", "mu"})
    if (ma.at(field) != mb.at(field)) differing += std::string(" ") + field;
  if (!differing.empty())
    throw validation_error("input manifests disagree on:" + differing);
}

}  // namespace detail

inline int run_compare(const CliOptions& opts) {
  detail::check_enum(opts.format, {"csv", "json", "both"}, "--format");
  if (opts.bound_file.empty() || opts.empirical_file.empty())
    throw validation_error("compare needs a bound file and an empirical file");
  const Json jb = read_json_file(opts.bound_file);
  const Json je = read_json_file(opts.empirical_file);
  detail::check_same_params(jb.at("manifest"), je.at("manifest"));

  const BoundCurve bound = bound_curve_from_json(jb);
  const EmpiricalCurve emp = detail::empirical_input(je);

  const unsigned long long common = std::min(bound.delta_max(), emp.delta_max());
  unsigned long long lo = 1, hi = common;
  if (!opts.window.empty()) std::tie(lo, hi) = detail::parse_window(opts.window);
  const ComparisonReport report = compare_curves(bound, emp, lo, hi);

  Json manifest{{"subcommand", "compare"},
                {"k", jb.at("manifest").at("k")},
                {"n", jb.at("manifest").at("n")},
                {"mu", jb.at("manifest").at("mu")},
                {"window", std::to_string(report.window_lo) + ".." +
                               std::to_string(report.window_hi)},
                {"bound_file", opts.bound_file},
                {"empirical_file", opts.empirical_file},
                {"out_dir", opts.out_dir},
                {"format", opts.format},
                {"version", kVersion},
                {"timestamp", manifest_timestamp()}};

  detail::prepare_out_dir(opts);
  if (detail::want_csv(opts.format))
    write_text_file(detail::out_path(opts, "compare.csv"), to_csv(report, manifest));
  if (detail::want_json(opts.format)) {
    Json j = to_json(report);
    j["manifest"] = manifest;
    write_text_file(detail::out_path(opts, "compare.json"), j.dump(2) + "\n");
  }

  std::cout << "max gap over delta in [" << report.window_lo << ", " << report.window_hi
            << "]: " << double_string(report.max_gap_in_window) << "\n";
  if (report.any_violation) {
    std::cerr << "violation: clamped bound exceeds the empirical upper confidence limit\n";
    return 3;
  }
  return 0;
}

// Maps library errors onto the documented exit codes.
template <class Fn>
int run_cli(Fn&& fn) {
  try {
    return fn();
  } catch (const guard_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cutbound
