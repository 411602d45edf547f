// Monte Carlo pipeline: normal quantile, Wilson intervals, seeded
// simulation, and bound-vs-empirical comparison.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "cutbound/montecarlo.hpp"
#include "oracles.hpp"

using cutbound::BoundCurve;
using cutbound::EmpiricalCurve;
using cutbound::EnsembleParams;
using cutbound::SimulationConfig;
using cutbound::WeightPmf;

namespace {

EnsembleParams make(unsigned k, unsigned n, const char* mu) {
  return {k, n, WeightPmf::parse(mu)};
}

SimulationConfig config(unsigned k, unsigned n, const char* mu, std::uint64_t instances,
                        std::uint64_t seed, unsigned long long delta_max = 32,
                        unsigned workers = 1) {
  return {make(k, n, mu), instances, seed, delta_max, workers};
}

}  // namespace

TEST_CASE("normal quantile reference values") {
  // Reference values cross-checked against high-precision erfc inversion.
  CHECK(cutbound::normal_quantile(0.975) ==
        Catch::Approx(1.959963984540054).margin(1e-12));
  CHECK(cutbound::normal_quantile(0.005) ==
        Catch::Approx(-2.5758293035489004).margin(1e-12));
  CHECK(cutbound::normal_quantile(0.5) == Catch::Approx(0.0).margin(1e-15));
  for (double p : {0.001, 0.01, 0.2, 0.4, 0.7, 0.99, 0.9999}) {
    CHECK(cutbound::normal_quantile(p) ==
          Catch::Approx(-cutbound::normal_quantile(1.0 - p)).margin(1e-13));
  }
  CHECK_THROWS_AS(cutbound::normal_quantile(0.0), cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::normal_quantile(1.0), cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::normal_quantile(-0.1), cutbound::validation_error);
}

TEST_CASE("wilson interval reference values") {
  const auto mid = cutbound::wilson_interval(50, 100, 0.95);
  CHECK(mid.first == Catch::Approx(0.403831530365996).margin(1e-12));
  CHECK(mid.second == Catch::Approx(0.596168469634004).margin(1e-12));

  const auto none = cutbound::wilson_interval(0, 100, 0.95);
  CHECK(none.first == 0.0);  // exactly, by construction
  CHECK(none.second == Catch::Approx(0.0369934982069857).margin(1e-12));

  const auto all = cutbound::wilson_interval(100, 100, 0.95);
  CHECK(all.first == Catch::Approx(0.963006501793014).margin(1e-12));
  CHECK(all.second == 1.0);

  const auto near = cutbound::wilson_interval(9999, 10000, 0.95);
  CHECK(near.first == Catch::Approx(0.999433731102599).margin(1e-12));
  CHECK(near.second == Catch::Approx(0.999982347326399).margin(1e-12));

  const auto wide = cutbound::wilson_interval(1, 10, 0.99);
  CHECK(wide.first == Catch::Approx(0.0118515034110329).margin(1e-12));
  CHECK(wide.second == Catch::Approx(0.507231771232894).margin(1e-12));
}

TEST_CASE("wilson interval contains the point estimate and validates input") {
  for (std::uint64_t s : {0, 1, 7, 50, 99, 100}) {
    const auto [low, high] = cutbound::wilson_interval(s, 100, 0.95);
    const double p = static_cast<double>(s) / 100.0;
    CHECK(low <= p);
    CHECK(high >= p);
    CHECK(low >= 0.0);
    CHECK(high <= 1.0);
  }
  CHECK_THROWS_AS(cutbound::wilson_interval(5, 4, 0.95), cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::wilson_interval(0, 0, 0.95), cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::wilson_interval(1, 2, 0.0), cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::wilson_interval(1, 2, 1.0), cutbound::validation_error);
}

TEST_CASE("simulation of a one-member ensemble is deterministic in value") {
  // k = 3, n = 3 has a single member: the unit triangle with lambda = 2.
  const EmpiricalCurve curve = cutbound::run_simulation(config(3, 3, "1", 100, 7));
  CHECK(curve.histogram == std::map<unsigned long long, std::uint64_t>{{2, 100}});
  REQUIRE(curve.delta_max() == 3);  // capped at max lambda + 1
  CHECK(curve.successes == std::vector<std::uint64_t>{100, 100, 100, 0});
  CHECK(curve.empirical == std::vector<double>{1.0, 1.0, 1.0, 0.0});
  CHECK(curve.ci_low[0] == Catch::Approx(0.963006501793014).margin(1e-12));
  CHECK(curve.ci_high[3] == Catch::Approx(0.0369934982069857).margin(1e-12));
  CHECK(curve.instances == 100);
  CHECK(curve.master_seed == 7);

  const EmpiricalCurve edge = cutbound::run_simulation(config(2, 1, "1", 10, 1));
  CHECK(edge.histogram == std::map<unsigned long long, std::uint64_t>{{1, 10}});
  CHECK(edge.successes == std::vector<std::uint64_t>{10, 10, 0});
}

TEST_CASE("simulation respects the delta cap") {
  const EmpiricalCurve curve = cutbound::run_simulation(config(3, 3, "1", 20, 7, 2));
  CHECK(curve.delta_max() == 2);
  CHECK(curve.empirical == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("simulation is reproducible and independent of the worker count") {
  const EmpiricalCurve base = cutbound::run_simulation(config(6, 8, "1/2,1/2", 500, 99));
  for (unsigned workers : {1u, 3u, 4u, 8u, 64u}) {
    const EmpiricalCurve again =
        cutbound::run_simulation(config(6, 8, "1/2,1/2", 500, 99, 32, workers));
    CHECK(again.successes == base.successes);
    CHECK(again.empirical == base.empirical);
    CHECK(again.ci_low == base.ci_low);
    CHECK(again.ci_high == base.ci_high);
    CHECK(again.histogram == base.histogram);
  }
}

TEST_CASE("simulation validates its configuration") {
  CHECK_THROWS_AS(cutbound::run_simulation(config(3, 2, "1", 0, 1)),
                  cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::run_simulation(config(3, 2, "1", 10, 1, 0)),
                  cutbound::validation_error);
  CHECK_THROWS_AS(cutbound::run_simulation(config(3, 2, "1", 10, 1, 4, 0)),
                  cutbound::validation_error);
}

TEST_CASE("empirical tail tracks the exact tail on an enumerable ensemble") {
  const EnsembleParams p = make(4, 3, "1/2,1/2");
  const std::uint64_t N = 10000;
  const EmpiricalCurve curve = cutbound::run_simulation({p, N, 12345, 16, 4});
  const std::vector<cutbound::BigRat> truth = oracles::exact_tail(p, curve.delta_max());
  for (unsigned long long d = 0; d <= curve.delta_max(); ++d) {
    const double t = cutbound::to_double(truth[d]);
    const double slack = 5.0 * std::sqrt(t * (1.0 - t) / static_cast<double>(N)) + 1e-4;
    CHECK(std::abs(curve.empirical[d] - t) <= slack);
    CHECK(curve.ci_low[d] <= curve.empirical[d]);
    CHECK(curve.ci_high[d] >= curve.empirical[d]);
  }
}

TEST_CASE("comparison of matching curves has zero gaps") {
  const BoundCurve bound = cutbound::tail_lower_bound(make(3, 3, "1"), 3);
  const EmpiricalCurve emp = cutbound::run_simulation(config(3, 3, "1", 50, 5));
  const cutbound::ComparisonReport report = cutbound::compare_curves(bound, emp, 1, 3);
  REQUIRE(report.rows.size() == 4);
  for (const auto& row : report.rows) {
    CHECK(row.gap == 0.0);
    CHECK_FALSE(row.violation);
  }
  CHECK(report.max_gap_in_window == 0.0);
  CHECK_FALSE(report.any_violation);
  CHECK(report.window_lo == 1);
  CHECK(report.window_hi == 3);
}

TEST_CASE("comparison flags violations and clips the window") {
  const BoundCurve bound = cutbound::tail_lower_bound(make(3, 3, "1"), 3);
  EmpiricalCurve emp;
  emp.params = make(3, 3, "1");
  emp.instances = 100;
  emp.successes = {100, 95, 80, 0};
  emp.empirical = {1.0, 0.95, 0.80, 0.0};
  emp.ci_low = {1.0, 0.90, 0.70, 0.0};
  emp.ci_high = {1.0, 0.97, 0.88, 0.05};

  const cutbound::ComparisonReport report = cutbound::compare_curves(bound, emp, 1, 100);
  CHECK(report.window_hi == 3);  // clipped to the common range
  CHECK(report.rows[1].gap == Catch::Approx(-0.05));
  CHECK(report.rows[2].gap == Catch::Approx(-0.20));
  // clamped bound 1.0 exceeds ci_high at delta = 1 and 2.
  CHECK(report.rows[1].violation);
  CHECK(report.rows[2].violation);
  CHECK_FALSE(report.rows[3].violation);
  CHECK(report.any_violation);
  // Window gaps are -0.05, -0.20 and 0; the maximum picks the zero.
  CHECK(report.max_gap_in_window == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("comparison validates parameters and window") {
  const BoundCurve bound = cutbound::tail_lower_bound(make(3, 3, "1"), 3);
  EmpiricalCurve other;
  other.params = make(3, 2, "1");
  other.empirical = {1.0, 1.0};
  other.ci_low = {1.0, 1.0};
  other.ci_high = {1.0, 1.0};
  CHECK_THROWS_AS(cutbound::compare_curves(bound, other, 1, 2), cutbound::validation_error);

  const EmpiricalCurve emp = cutbound::run_simulation(config(3, 3, "1", 20, 5));
  CHECK_THROWS_AS(cutbound::compare_curves(bound, emp, 5, 9), cutbound::validation_error);
}
