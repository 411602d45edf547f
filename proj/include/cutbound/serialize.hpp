// Serialization of curves, spectra, and run manifests to CSV and JSON.
//
// CSV files are plot-ready: a "# manifest: {...}" comment line, a mandatory
// header row, then data rows with '.' decimals and LF endings.  JSON files
// embed the same manifest plus machine-friendly numeric fields; exact
// rationals additionally carry 15-significant-digit decimal strings and
// "p/q" forms.  Doubles are rendered through std::to_chars so output never
// depends on locale.
#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cutbound/bound.hpp"
#include "cutbound/cutspace.hpp"
#include "cutbound/montecarlo.hpp"
#include "cutbound/rational.hpp"
#include "cutbound/version.hpp"

namespace cutbound {

using Json = nlohmann::json;

inline std::string double_string(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

// Timestamp for manifests; honors SOURCE_DATE_EPOCH so archived runs and
// determinism tests can pin it.
inline std::string manifest_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long pinned = std::strtoll(sde, &end, 10);
    if (end && *end == '\0') t = static_cast<std::time_t>(pinned);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw validation_error("write to " + path + " failed");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw validation_error(path + " is not valid JSON: " + e.what());
  }
  return j;
}

// --- curves -> JSON ---------------------------------------------------------

inline Json to_json(const BoundCurve& curve) {
  Json rows = Json::array();
  const bool exact = curve.representation == Representation::exact;
  for (unsigned long long delta = 0; delta <= curve.delta_max(); ++delta) {
    Json row{{"delta", delta},
             {"raw", curve.raw[delta]},
             {"clamped", curve.clamped(delta)}};
    if (exact) {
      row["raw_decimal"] = decimal_string(curve.raw_exact[delta]);
      row["raw_exact"] = exact_string(curve.raw_exact[delta]);
    }
    rows.push_back(std::move(row));
  }
  return Json{{"representation", exact ? "exact" : "log"}, {"points", rows}};
}

inline Json to_json(const EmpiricalCurve& curve) {
  Json rows = Json::array();
  for (unsigned long long delta = 0; delta <= curve.delta_max(); ++delta)
    rows.push_back(Json{{"delta", delta},
                        {"empirical", curve.empirical[delta]},
                        {"ci_low", curve.ci_low[delta]},
                        {"ci_high", curve.ci_high[delta]},
                        {"successes", curve.successes[delta]}});
  Json hist = Json::object();
  for (const auto& [lambda, count] : curve.histogram) hist[std::to_string(lambda)] = count;
  return Json{{"points", rows},
              {"histogram", hist},
              {"instances", curve.instances},
              {"seed", curve.master_seed}};
}

inline Json to_json(const ComparisonReport& report) {
  Json rows = Json::array();
  for (const ComparisonRow& row : report.rows)
    rows.push_back(Json{{"delta", row.delta},
                        {"clamped_bound", row.clamped_bound},
                        {"empirical", row.empirical},
                        {"gap", row.gap},
                        {"violation", row.violation}});
  return Json{{"points", rows},
              {"window", {{"lo", report.window_lo}, {"hi", report.window_hi}}},
              {"max_gap_in_window", report.max_gap_in_window},
              {"any_violation", report.any_violation}};
}

// Sparse {"w": count} and {"u,v,w": count} maps.
inline Json spectrum_to_json(const CutSpectrum& spectrum) {
  Json b = Json::object();
  for (const auto& [w, count] : spectrum.b) b[std::to_string(w)] = count;
  Json a = Json::object();
  for (const auto& [cell, count] : spectrum.a) {
    const auto& [u, v, w] = cell;
    a[std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w)] = count;
  }
  return Json{{"k", spectrum.k}, {"n", spectrum.n},
              {"max_weight", spectrum.max_weight}, {"b", b}, {"a", a}};
}

// --- curves -> CSV ----------------------------------------------------------

inline std::string manifest_comment(const Json& manifest) {
  return "# manifest: " + manifest.dump() + "\n";
}

// Column schema: delta,raw,clamped.  The raw column keeps the exact value
// (15 significant digits) on the exact path.
inline std::string to_csv(const BoundCurve& curve, const Json& manifest) {
  std::string out = manifest_comment(manifest);
  out += "delta,raw,clamped\n";
  const bool exact = curve.representation == Representation::exact;
  for (unsigned long long delta = 0; delta <= curve.delta_max(); ++delta) {
    out += std::to_string(delta);
    out += ',';
    out += exact ? decimal_string(curve.raw_exact[delta]) : double_string(curve.raw[delta]);
    out += ',';
    out += exact ? decimal_string(curve.clamped_exact(delta)) : double_string(curve.clamped(delta));
    out += '\n';
  }
  return out;
}

// Column schema: delta,empirical,ci_low,ci_high.
inline std::string to_csv(const EmpiricalCurve& curve, const Json& manifest) {
  std::string out = manifest_comment(manifest);
  out += "delta,empirical,ci_low,ci_high\n";
  for (unsigned long long delta = 0; delta <= curve.delta_max(); ++delta) {
    out += std::to_string(delta);
    out += ',';
    out += double_string(curve.empirical[delta]);
    out += ',';
    out += double_string(curve.ci_low[delta]);
    out += ',';
    out += double_string(curve.ci_high[delta]);
    out += '\n';
  }
  return out;
}

// Column schema: delta,clamped_bound,empirical,gap,violation.
inline std::string to_csv(const ComparisonReport& report, const Json& manifest) {
  std::string out = manifest_comment(manifest);
  out += "delta,clamped_bound,empirical,gap,violation\n";
  for (const ComparisonRow& row : report.rows) {
    out += std::to_string(row.delta);
    out += ',';
    out += double_string(row.clamped_bound);
    out += ',';
    out += double_string(row.empirical);
    out += ',';
    out += double_string(row.gap);
    out += ',';
    out += row.violation ? '1' : '0';
    out += '\n';
  }
  return out;
}

// --- JSON -> curves (for the compare subcommand) ----------------------------

inline EnsembleParams params_from_manifest(const Json& manifest) {
  EnsembleParams params;
  params.k = manifest.at("k").get<unsigned>();
  params.n = manifest.at("n").get<unsigned>();
  params.pmf = WeightPmf::parse(manifest.at("mu").get<std::string>());
  params.validate();
  return params;
}

inline BoundCurve bound_curve_from_json(const Json& j) {
  BoundCurve curve;
  curve.params = params_from_manifest(j.at("manifest"));
  curve.representation = j.at("representation").get<std::string>() == "exact"
                             ? Representation::exact
                             : Representation::log_domain;
  for (const Json& row : j.at("points")) curve.raw.push_back(row.at("raw").get<double>());
  if (curve.raw.empty() || curve.raw[0] != 1.0)
    throw validation_error("bound curve must start at raw(0) = 1");
  return curve;
}

inline EmpiricalCurve empirical_curve_from_json(const Json& j) {
  EmpiricalCurve curve;
  curve.params = params_from_manifest(j.at("manifest"));
  curve.instances = j.at("instances").get<std::uint64_t>();
  curve.master_seed = j.at("seed").get<std::uint64_t>();
  for (const Json& row : j.at("points")) {
    curve.successes.push_back(row.at("successes").get<std::uint64_t>());
    curve.empirical.push_back(row.at("empirical").get<double>());
    curve.ci_low.push_back(row.at("ci_low").get<double>());
    curve.ci_high.push_back(row.at("ci_high").get<double>());
  }
  if (curve.empirical.empty())
    throw validation_error("empirical curve has no data points");
  for (const auto& [key, count] : j.at("histogram").items())
    curve.histogram[std::stoull(key)] = count.get<std::uint64_t>();
  return curve;
}

}  // namespace cutbound
