// Acceptance suite: one line per criterion, exit 0 only if all pass.
//
// The heavy criteria pin the two reference configurations
//   k = 100, n = 400 and k = 100, n = 700, mu = (0.1, 0.2, 0.4, 0.2, 0.1),
// with 10^4 simulated instances at master seed 1.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cutbound/bound.hpp"
#include "cutbound/cutspace.hpp"
#include "cutbound/mincut.hpp"
#include "cutbound/montecarlo.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace cutbound;

namespace {

int failures = 0;

// Runs one criterion, prints its verdict line, and tracks failures.
template <class Fn>
void criterion(int id, const char* title, Fn&& body) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    detail = body(pass);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!pass) ++failures;
  std::printf("criterion %d: %s - %s (%s; %.1f s)\n", id, pass ? "PASS" : "FAIL", title,
              detail.c_str(), seconds);
  std::fflush(stdout);
}

std::vector<EnsembleParams> small_grid() {
  std::vector<EnsembleParams> grid;
  for (unsigned k : {3u, 4u, 5u}) {
    const unsigned pairs = static_cast<unsigned>(pair_count(k));
    for (unsigned n = 1; n <= pairs; ++n)
      for (const char* mu : {"1", "1/2,1/2"})
        grid.push_back({k, n, WeightPmf::parse(mu)});
  }
  return grid;
}

WeightedGraph random_graph(std::mt19937& rng, unsigned kmax, unsigned qmax) {
  const unsigned k = 2 + rng() % (kmax - 1);
  const unsigned pairs = static_cast<unsigned>(pair_count(k));
  const unsigned n = 1 + rng() % pairs;
  const unsigned q = 1 + rng() % qmax;
  return oracles::random_graph(rng, k, n, q);
}

// Reference configurations shared by criteria 5-7, computed once on demand.
const EnsembleParams& fig_params(unsigned n) {
  static const EnsembleParams p400{100, 400, WeightPmf::parse("1/10,1/5,2/5,1/5,1/10")};
  static const EnsembleParams p700{100, 700, WeightPmf::parse("1/10,1/5,2/5,1/5,1/10")};
  return n == 400 ? p400 : p700;
}

unsigned long long fig_delta_max(unsigned n) { return n == 400 ? 10 : 20; }

const BoundCurve& fig_bound(unsigned n, Representation rep) {
  static std::optional<BoundCurve> cache[4];
  const int slot = (n == 400 ? 0 : 1) + (rep == Representation::exact ? 0 : 2);
  if (!cache[slot]) {
    cache[slot] = rep == Representation::exact
                      ? tail_lower_bound(fig_params(n), fig_delta_max(n))
                      : tail_lower_bound_logdomain(fig_params(n), fig_delta_max(n));
  }
  return *cache[slot];
}

const EmpiricalCurve& fig_empirical(unsigned n) {
  static std::optional<EmpiricalCurve> cache[2];
  const int slot = n == 400 ? 0 : 1;
  if (!cache[slot]) {
    SimulationConfig config;
    config.params = fig_params(n);
    config.instances = 10000;
    config.master_seed = 1;
    config.delta_max = n == 400 ? 20 : 30;
    config.workers = 4;
    cache[slot] = run_simulation(config);
  }
  return *cache[slot];
}

// Shared checks (a)-(b) of the two curve-validation criteria: no bound above
// the upper confidence limit, and both curves monotone from 1.
std::string validate_curves(unsigned n, const ComparisonReport& report, bool& ok) {
  const BoundCurve& bound = fig_bound(n, Representation::exact);
  const EmpiricalCurve& emp = fig_empirical(n);
  if (report.any_violation) {
    ok = false;
    return "clamped bound exceeds ci_high";
  }
  if (bound.raw[0] != 1.0 || emp.empirical[0] != 1.0) {
    ok = false;
    return "curves do not start at 1";
  }
  for (unsigned long long d = 1; d <= bound.delta_max(); ++d)
    if (bound.clamped(d) > bound.clamped(d - 1)) {
      ok = false;
      return "bound curve increases at delta " + std::to_string(d);
    }
  for (unsigned long long d = 1; d <= emp.delta_max(); ++d)
    if (emp.empirical[d] > emp.empirical[d - 1]) {
      ok = false;
      return "empirical curve increases at delta " + std::to_string(d);
    }
  return "";
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "closed-form E[A_{u,v,w}] equals the enumeration average", [](bool& ok) {
    std::size_t cells = 0, configs = 0;
    for (const EnsembleParams& p : small_grid()) {
      ++configs;
      const auto avg = oracles::average_a(p);
      for (unsigned u = 1; u < p.k; ++u) {
        const unsigned su = u * (p.k - u);
        for (unsigned long long v = 0; v <= std::min<unsigned long long>(su, p.n); ++v) {
          for (unsigned long long w = 0; w <= std::uint64_t(p.pmf.q) * p.n; ++w) {
            auto it = avg.find({u, static_cast<unsigned>(v), w});
            const BigRat expect = it == avg.end() ? BigRat(0) : it->second;
            if (expected_A(p, u, v, w) != expect) {
              ok = false;
              return "mismatch at k=" + std::to_string(p.k) + " n=" + std::to_string(p.n) +
                     " mu=" + p.pmf.to_string() + " cell (" + std::to_string(u) + "," +
                     std::to_string(v) + "," + std::to_string(w) + ")";
            }
            ++cells;
          }
        }
      }
    }
    ok = true;
    return std::to_string(cells) + " cells over " + std::to_string(configs) + " ensembles";
  });

  criterion(2, "tail lower bound never exceeds the exact tail", [](bool& ok) {
    std::size_t points = 0;
    for (const EnsembleParams& p : small_grid()) {
      const unsigned long long dmax = std::uint64_t(p.pmf.q) * p.n + 1;
      const BoundCurve curve = tail_lower_bound(p, dmax);
      const std::vector<BigRat> truth = oracles::exact_tail(p, dmax);
      for (unsigned long long d = 0; d <= dmax; ++d) {
        if (curve.raw_exact[d] > truth[d]) {
          ok = false;
          return "bound above tail at k=" + std::to_string(p.k) + " n=" + std::to_string(p.n) +
                 " mu=" + p.pmf.to_string() + " delta=" + std::to_string(d);
        }
        ++points;
      }
    }
    ok = true;
    return std::to_string(points) + " curve points checked";
  });

  criterion(3, "per-graph inequality 2 B_w <= sum_{u,v} A_{u,v,w}", [](bool& ok) {
    std::mt19937 rng(1001);
    for (int rep = 0; rep < 500; ++rep) {
      const WeightedGraph g = random_graph(rng, 10, 5);
      const Lemma1Report report = lemma1_check(g);
      if (!report.holds) {
        ok = false;
        return "violated at w=" + std::to_string(report.violating_w) + " on graph " +
               std::to_string(rep);
      }
    }
    ok = true;
    return std::string("500 random graphs, k <= 10, q <= 5");
  });

  criterion(4, "min-cut triple agreement (contraction, max-flow, enumeration)", [](bool& ok) {
    std::mt19937 rng(1002);
    for (int rep = 0; rep < 1000; ++rep) {
      const WeightedGraph g = random_graph(rng, 12, 3);
      const unsigned long long sw = global_min_cut(g).value;
      const unsigned long long mf = global_min_cut_via_maxflow(g).value;
      const unsigned long long brute = oracles::min_cut(g);
      if (sw != brute || mf != brute) {
        ok = false;
        return "disagreement on graph " + std::to_string(rep) + ": " + std::to_string(sw) +
               "/" + std::to_string(mf) + "/" + std::to_string(brute);
      }
    }
    ok = true;
    return std::string("1000 random graphs, k <= 12");
  });

  criterion(5, "k=100 n=400 curves: bound within CI, monotone, tight at delta 1",
            [](bool& ok) {
              const ComparisonReport report =
                  compare_curves(fig_bound(400, Representation::exact), fig_empirical(400), 1, 4);
              ok = true;
              std::string msg = validate_curves(400, report, ok);
              if (!ok) return msg;
              const double gap1 =
                  fig_empirical(400).empirical[1] - fig_bound(400, Representation::exact).clamped(1);
              if (gap1 > 0.05) {
                ok = false;
                return "gap at delta 1 is " + format_double(gap1) + " > 0.05";
              }
              return "max gap [1,4] = " + format_double(report.max_gap_in_window) +
                     ", gap at delta 1 = " + format_double(gap1);
            });

  criterion(6, "k=100 n=700 curves: within CI, monotone, tighter than n=400",
            [](bool& ok) {
              const ComparisonReport rep700 =
                  compare_curves(fig_bound(700, Representation::exact), fig_empirical(700), 1, 15);
              ok = true;
              std::string msg = validate_curves(700, rep700, ok);
              if (!ok) return msg;
              const ComparisonReport rep400 =
                  compare_curves(fig_bound(400, Representation::exact), fig_empirical(400), 1, 4);
              const std::string detail =
                  "max gap [1,15] n=700 = " + format_double(rep700.max_gap_in_window) +
                  " vs max gap [1,4] n=400 = " + format_double(rep400.max_gap_in_window);
              if (!(rep700.max_gap_in_window < rep400.max_gap_in_window)) {
                ok = false;
                return detail + "; denser ensemble is not tighter here";
              }
              return detail;
            });

  criterion(7, "exact and log-domain bound curves agree to 1e-9 relative", [](bool& ok) {
    double worst = 0.0;
    for (unsigned n : {400u, 700u}) {
      const BoundCurve& exact = fig_bound(n, Representation::exact);
      const BoundCurve& log = fig_bound(n, Representation::log_domain);
      for (unsigned long long d = 0; d <= exact.delta_max(); ++d) {
        if (std::abs(exact.raw[d]) <= 1e-12) continue;
        worst = std::max(worst, std::abs(log.raw[d] - exact.raw[d]) / std::abs(exact.raw[d]));
      }
    }
    ok = worst <= 1e-9;
    return "max relative disagreement " + format_double(worst);
  });

  criterion(8, "simulate CLI output is byte-identical for workers 1/4/8", [](bool& ok) {
    // Sequential runs into one out-dir with a pinned timestamp; the whole
    // artifact, manifest included, must not change with the worker count.
    const fs::path root = fs::temp_directory_path() / "cutbound_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path out = root / "out";
    std::vector<std::string> csv, json;
    for (unsigned workers : {1u, 4u, 8u}) {
      const std::string cmd =
          std::string("SOURCE_DATE_EPOCH=1700000000 \"") + CUTBOUND_CLI_PATH +
          "\" simulate --k 100 --n 400 --mu 1/10,1/5,2/5,1/5,1/10 --instances 1000 --seed 5 "
          "--delta-max 12 --workers " +
          std::to_string(workers) + " --out-dir \"" + out.string() + "\" > \"" +
          (root / "log.txt").string() + "\" 2>&1";
      const int rc = std::system(cmd.c_str());
      if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
        ok = false;
        return "CLI run with --workers " + std::to_string(workers) + " failed";
      }
      csv.push_back(read_file(out / "empirical.csv"));
      json.push_back(read_file(out / "empirical.json"));
    }
    ok = csv[0] == csv[1] && csv[1] == csv[2] && json[0] == json[1] && json[1] == json[2];
    return ok ? std::string("3 runs, 2 artifacts each, all byte-identical")
              : std::string("artifacts differ between worker counts");
  });

  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures > 0 ? 1 : 0;
}
