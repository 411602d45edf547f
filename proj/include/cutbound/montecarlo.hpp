// Monte Carlo estimation of the accumulate distribution Pr[lambda(G) >= delta]:
// N seeded instances, min cut per instance, Wilson confidence intervals, and
// comparison against the analytic lower bound.  Instance i always draws from
// a stream derived from (master_seed, i), so the result is byte-identical for
// every worker count.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cutbound/bound.hpp"
#include "cutbound/ensemble.hpp"
#include "cutbound/mincut.hpp"
#include "cutbound/rng.hpp"

namespace cutbound {

struct SimulationConfig {
  EnsembleParams params;
  std::uint64_t instances = 0;       // N
  std::uint64_t master_seed = 0;
  unsigned long long delta_max = 1;  // cap on the reported delta range
  unsigned workers = 1;

  void validate() const {
    params.validate();
    if (instances < 1) throw validation_error("instances must be at least 1");
    if (delta_max < 1) throw validation_error("delta-max must be at least 1");
    if (workers < 1) throw validation_error("workers must be at least 1");
  }
};

struct EmpiricalCurve {
  EnsembleParams params;
  std::uint64_t instances = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> successes;  // delta -> #instances with lambda >= delta
  std::vector<double> empirical;         // delta -> successes / N
  std::vector<double> ci_low, ci_high;   // 95% Wilson interval
  std::map<unsigned long long, std::uint64_t> histogram;  // lambda -> count

  unsigned long long delta_max() const { return empirical.size() - 1; }
};

// Inverse standard normal CDF: Acklam's rational approximation polished by
// one Halley step through erfc, giving full double accuracy.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw validation_error("quantile needs p in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1 + x * u / 2);
}

inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                                 double confidence) {
  if (trials < 1 || successes > trials)
    throw validation_error("wilson interval needs 0 <= successes <= trials, trials >= 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw validation_error("confidence must lie in (0, 1)");
  const double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2n = z * z / n;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n));
  double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  double high = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

// Samples N instances and folds their min cuts into the empirical curve.
// The reported range is [0, min(delta_max, max lambda + 1)].
inline EmpiricalCurve run_simulation(const SimulationConfig& config) {
  config.validate();
  const std::uint64_t total = config.instances;
  std::vector<unsigned long long> lambdas(total);

  auto solve_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      RandomStream stream = RandomStream::for_instance(config.master_seed, i);
      const WeightedGraph g = sample_graph(config.params, stream);
      lambdas[i] = global_min_cut(g).value;
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(config.workers, total));
  if (workers <= 1) {
    solve_range(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = total * w / workers;
      const std::uint64_t end = total * (w + 1) / workers;
      pool.emplace_back(solve_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  EmpiricalCurve curve;
  curve.params = config.params;
  curve.instances = total;
  curve.master_seed = config.master_seed;
  unsigned long long max_lambda = 0;
  for (unsigned long long l : lambdas) {
    ++curve.histogram[l];
    max_lambda = std::max(max_lambda, l);
  }
  const unsigned long long dmax = std::min(config.delta_max, max_lambda + 1);
  curve.successes.assign(dmax + 1, 0);
  for (const auto& [lambda, count] : curve.histogram)
    for (unsigned long long delta = 0; delta <= std::min(lambda, dmax); ++delta)
      curve.successes[delta] += count;
  for (unsigned long long delta = 0; delta <= dmax; ++delta) {
    const auto [low, high] = wilson_interval(curve.successes[delta], total, 0.95);
    curve.empirical.push_back(static_cast<double>(curve.successes[delta]) /
                              static_cast<double>(total));
    curve.ci_low.push_back(low);
    curve.ci_high.push_back(high);
  }
  return curve;
}

struct ComparisonRow {
  unsigned long long delta = 0;
  double clamped_bound = 0.0;
  double empirical = 0.0;
  double gap = 0.0;        // empirical - clamped_bound
  bool violation = false;  // clamped_bound > ci_high
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;  // delta = 0 .. common delta_max
  unsigned long long window_lo = 0, window_hi = 0;
  double max_gap_in_window = 0.0;
  bool any_violation = false;
};

// Per-delta gaps and violation flags over the common delta range; the max
// gap is taken over [window_lo, window_hi] clipped to that range.
inline ComparisonReport compare_curves(const BoundCurve& bound, const EmpiricalCurve& emp,
                                       unsigned long long window_lo,
                                       unsigned long long window_hi) {
  if (bound.params.k != emp.params.k || bound.params.n != emp.params.n ||
      bound.params.pmf.probs != emp.params.pmf.probs)
    throw validation_error("bound and empirical curves use different ensemble parameters");
  const unsigned long long dmax = std::min(bound.delta_max(), emp.delta_max());
  ComparisonReport report;
  report.window_lo = window_lo;
  report.window_hi = std::min(window_hi, dmax);
  if (window_lo > report.window_hi)
    throw validation_error("comparison window lies outside the common delta range");
  bool have_gap = false;
  for (unsigned long long delta = 0; delta <= dmax; ++delta) {
    ComparisonRow row;
    row.delta = delta;
    row.clamped_bound = bound.clamped(delta);
    row.empirical = emp.empirical[delta];
    row.gap = row.empirical - row.clamped_bound;
    row.violation = row.clamped_bound > emp.ci_high[delta];
    report.any_violation = report.any_violation || row.violation;
    if (delta >= report.window_lo && delta <= report.window_hi &&
        (!have_gap || row.gap > report.max_gap_in_window)) {
      report.max_gap_in_window = row.gap;
      have_gap = true;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cutbound
