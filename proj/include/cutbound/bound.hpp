// Closed-form ensemble averages and the tail lower bound:
//   [x^w] f(x)^v            coefficients of powers of the weight polynomial
//   E[A_{u,v,w}]            exact detailed-distribution average
//   upper bound on E[B_w]   1/2 double sum over (u, v)
//   Pr[lambda >= delta]     lower bound 1 - sum_{w < delta} E[B_w]-bound
// Everything exists twice: exact big-rational arithmetic (authoritative) and
// a log-gamma / long-double path for large parameters, which must agree to
// 1e-9 relative wherever |raw| > 1e-12.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "cutbound/ensemble.hpp"
#include "cutbound/rational.hpp"

namespace cutbound {

// Exact-rational polynomial truncated at max_degree.
struct TruncatedPolynomial {
  unsigned long long max_degree = 0;
  std::vector<BigRat> coeffs;  // size max_degree + 1

  // Smallest degree with a nonzero coefficient, or max_degree + 1 if none.
  unsigned long long min_support() const {
    for (unsigned long long d = 0; d <= max_degree; ++d)
      if (coeffs[d] != 0) return d;
    return max_degree + 1;
  }
};

// f(x) = sum_i mu(i) x^i, truncated at max_degree.
inline TruncatedPolynomial weight_poly(const WeightPmf& pmf, unsigned long long max_degree) {
  pmf.validate();
  TruncatedPolynomial f;
  f.max_degree = max_degree;
  f.coeffs.assign(max_degree + 1, BigRat(0));
  for (unsigned i = 1; i <= pmf.q && i <= max_degree; ++i) f.coeffs[i] = pmf(i);
  return f;
}

namespace detail {

// One truncated multiply-by-f step: p * f mod x^(deg+1).
inline std::vector<BigRat> truncated_mul(const std::vector<BigRat>& p,
                                         const std::vector<BigRat>& f,
                                         unsigned long long deg) {
  std::vector<BigRat> out(deg + 1, BigRat(0));
  for (unsigned long long i = 0; i <= deg && i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (unsigned long long j = 0; i + j <= deg && j < f.size(); ++j) {
      if (f[j] != 0) out[i + j] += p[i] * f[j];
    }
  }
  return out;
}

}  // namespace detail

// [x^w] f(x)^v by repeated truncated multiplication at degree w.
inline BigRat power_coeff(const TruncatedPolynomial& f, unsigned long long v,
                          unsigned long long w) {
  if (w > f.max_degree)
    throw validation_error("power_coeff degree exceeds the polynomial truncation");
  if (v == 0) return w == 0 ? BigRat(1) : BigRat(0);
  const unsigned long long ms = f.min_support();
  if (ms > f.max_degree || v * ms > w) return 0;  // support starts too high
  std::vector<BigRat> acc{BigRat(1)};
  for (unsigned long long step = 0; step < v; ++step)
    acc = detail::truncated_mul(acc, f.coeffs, w);
  return acc[w];
}

// Closed form: E[A_{u,v,w}] = C(k,u) C(su,v) C(A-su, n-v) [x^w]f^v / C(A,n)
// with su = u(k-u), A = C(k,2); out-of-range binomials vanish.
inline BigRat expected_A(const EnsembleParams& params, unsigned u, unsigned long long v,
                         unsigned long long w) {
  params.validate();
  if (u < 1 || u >= params.k)
    throw validation_error("u must lie in [1, k-1]");
  const long long A = static_cast<long long>(pair_count(params.k));
  const long long su = static_cast<long long>(u) * (params.k - u);
  const BigInt top = binomial(params.k, u) * binomial(su, static_cast<long long>(v)) *
                     binomial(A - su, static_cast<long long>(params.n) - static_cast<long long>(v));
  if (top == 0) return 0;
  const BigRat coeff = power_coeff(weight_poly(params.pmf, w), v, w);
  if (coeff == 0) return 0;
  return BigRat(top) * coeff / BigRat(binomial(A, params.n));
}

namespace detail {

// Shared tables for evaluating T(w) = upper bound on E[B_w] for all
// w <= W: truncated powers of f and the (u, v) binomial-ratio factors
//   ratio[u][v] = C(k,u) C(su,v) C(A-su, n-v) / C(A,n),
// computed once.  The exact table is the authoritative path; the float
// table mirrors it in long double via log-gamma.
class BoundTables {
 public:
  BoundTables(const EnsembleParams& params, unsigned long long W, bool exact)
      : params_(params), W_(W) {
    params.validate();
    const unsigned long long ms = params.pmf.min_support();
    vmax_ = std::min<unsigned long long>(params.n, W / ms);
    if (exact) build_exact();
    else build_float();
  }

  unsigned long long vmax() const { return vmax_; }

  // Exact T(w) = 1/2 sum_u sum_v ratio[u][v] * [x^w]f^v.
  BigRat t_exact(unsigned long long w) const {
    BigRat total = 0;
    for (unsigned u = 1; u < params_.k; ++u) {
      const auto& row = ratio_exact_[u];
      const unsigned long long vhi = std::min<unsigned long long>(row.size() - 1, w == 0 ? 0 : vmax_);
      for (unsigned long long v = 0; v <= vhi; ++v) {
        if (row[v] == 0) continue;
        const BigRat& c = powers_exact_[v][w];
        if (c != 0) total += row[v] * c;
      }
    }
    return total / 2;
  }

  // Long-double mirror with a fixed summation order (u asc, v asc).
  long double t_float(unsigned long long w) const {
    long double total = 0.0L;
    for (unsigned u = 1; u < params_.k; ++u) {
      const auto& row = ratio_float_[u];
      const unsigned long long vhi = std::min<unsigned long long>(row.size() - 1, w == 0 ? 0 : vmax_);
      for (unsigned long long v = 0; v <= vhi; ++v)
        total += row[v] * powers_float_[v][w];
    }
    return total / 2.0L;
  }

 private:
  void build_exact() {
    const TruncatedPolynomial f = weight_poly(params_.pmf, W_);
    powers_exact_.resize(vmax_ + 1);
    powers_exact_[0].assign(W_ + 1, BigRat(0));
    powers_exact_[0][0] = 1;
    for (unsigned long long v = 1; v <= vmax_; ++v)
      powers_exact_[v] = truncated_mul(powers_exact_[v - 1], f.coeffs, W_);

    const long long A = static_cast<long long>(pair_count(params_.k));
    const long long n = params_.n;
    ratio_exact_.resize(params_.k);
    for (unsigned u = 1; u < params_.k; ++u) {
      const long long su = static_cast<long long>(u) * (params_.k - u);
      const unsigned long long vhi =
          std::min<unsigned long long>(vmax_, std::min<long long>(su, n));
      const BigInt cku = binomial(params_.k, u);
      auto& row = ratio_exact_[u];
      row.assign(vhi + 1, BigRat(0));
      if (A - su >= n) {
        // C(A-su, n-v) > 0 throughout; step v with one-term updates.
        BigInt num = 1, den = 1;
        for (long long i = 0; i < n; ++i) {
          num *= A - su - i;
          den *= A - i;
        }
        BigRat r(num, den);  // C(A-su, n) / C(A, n)
        row[0] = BigRat(cku) * r;
        for (unsigned long long v = 1; v <= vhi; ++v) {
          r *= BigRat(BigInt(su - static_cast<long long>(v) + 1) * (n - static_cast<long long>(v) + 1),
                      BigInt(v) * (A - su - n + static_cast<long long>(v)));
          row[v] = BigRat(cku) * r;
        }
      } else {
        // Small dense cases where C(A-su, n-v) can vanish: direct binomials.
        const BigInt can = binomial(A, n);
        for (unsigned long long v = 0; v <= vhi; ++v) {
          const BigInt top = cku * binomial(su, static_cast<long long>(v)) *
                             binomial(A - su, n - static_cast<long long>(v));
          row[v] = BigRat(top, can);
        }
      }
    }
  }

  static long double lchoose(long long a, long long b) {
    if (b < 0 || b > a) return -HUGE_VALL;
    return std::lgamma(static_cast<long double>(a) + 1.0L) -
           std::lgamma(static_cast<long double>(b) + 1.0L) -
           std::lgamma(static_cast<long double>(a - b) + 1.0L);
  }

  void build_float() {
    powers_float_.resize(vmax_ + 1);
    powers_float_[0].assign(W_ + 1, 0.0L);
    powers_float_[0][0] = 1.0L;
    std::vector<long double> f(W_ + 1, 0.0L);
    for (unsigned i = 1; i <= params_.pmf.q && i <= W_; ++i)
      f[i] = static_cast<long double>(to_double(params_.pmf(i)));
    for (unsigned long long v = 1; v <= vmax_; ++v) {
      auto& out = powers_float_[v];
      const auto& prev = powers_float_[v - 1];
      out.assign(W_ + 1, 0.0L);
      for (unsigned long long i = 0; i <= W_; ++i) {
        if (prev[i] == 0.0L) continue;
        for (unsigned long long j = 1; i + j <= W_; ++j) out[i + j] += prev[i] * f[j];
      }
    }

    const long long A = static_cast<long long>(pair_count(params_.k));
    const long long n = params_.n;
    const long double lcan = lchoose(A, n);
    ratio_float_.resize(params_.k);
    for (unsigned u = 1; u < params_.k; ++u) {
      const long long su = static_cast<long long>(u) * (params_.k - u);
      const unsigned long long vhi =
          std::min<unsigned long long>(vmax_, std::min<long long>(su, n));
      auto& row = ratio_float_[u];
      row.assign(vhi + 1, 0.0L);
      for (unsigned long long v = 0; v <= vhi; ++v) {
        const long double l = lchoose(params_.k, u) + lchoose(su, static_cast<long long>(v)) +
                              lchoose(A - su, n - static_cast<long long>(v)) - lcan;
        row[v] = l == -HUGE_VALL ? 0.0L : std::exp(l);
      }
    }
  }

  EnsembleParams params_;
  unsigned long long W_;
  unsigned long long vmax_ = 0;
  std::vector<std::vector<BigRat>> powers_exact_;      // [v][w]
  std::vector<std::vector<BigRat>> ratio_exact_;       // [u][v]
  std::vector<std::vector<long double>> powers_float_; // [v][w]
  std::vector<std::vector<long double>> ratio_float_;  // [u][v]
};

}  // namespace detail

// Averaged bound: E[B_w] <= 1/2 sum_{u=1}^{k-1} sum_v E[A_{u,v,w}].
inline BigRat expected_Bw_upper(const EnsembleParams& params, unsigned long long w) {
  return detail::BoundTables(params, w, /*exact=*/true).t_exact(w);
}

enum class Representation { exact, log_domain };

// Tail bound curve: delta -> raw lower bound on Pr[lambda >= delta] plus its
// clamp to [0, 1].  Index delta runs 0..delta_max.
struct BoundCurve {
  EnsembleParams params;
  Representation representation = Representation::exact;
  std::vector<BigRat> raw_exact;  // populated on the exact path
  std::vector<double> raw;        // populated on both paths

  unsigned long long delta_max() const { return raw.size() - 1; }

  BigRat clamped_exact(unsigned long long delta) const {
    return raw_exact[delta] > 0 ? raw_exact[delta] : BigRat(0);
  }

  double clamped(unsigned long long delta) const {
    return raw[delta] > 0 ? raw[delta] : 0.0;
  }
};

// Exact evaluation: raw(delta) = 1 - sum_{w=0}^{delta-1} T(w),
// accumulated in one pass over w.
inline BoundCurve tail_lower_bound(const EnsembleParams& params, unsigned long long delta_max) {
  detail::BoundTables tables(params, delta_max == 0 ? 0 : delta_max - 1, /*exact=*/true);
  BoundCurve curve;
  curve.params = params;
  curve.representation = Representation::exact;
  curve.raw_exact.reserve(delta_max + 1);
  curve.raw.reserve(delta_max + 1);
  BigRat sum = 0;
  curve.raw_exact.push_back(1);
  curve.raw.push_back(1.0);
  for (unsigned long long delta = 1; delta <= delta_max; ++delta) {
    sum += tables.t_exact(delta - 1);
    BigRat raw = BigRat(1) - sum;
    curve.raw.push_back(to_double(raw));
    curve.raw_exact.push_back(std::move(raw));
  }
  return curve;
}

// Same quantity via log-gamma binomials and long-double accumulation; the
// running sum is kept separately and subtracted from 1 once per delta, so no
// signed cancellation happens inside the loops.
inline BoundCurve tail_lower_bound_logdomain(const EnsembleParams& params,
                                             unsigned long long delta_max) {
  detail::BoundTables tables(params, delta_max == 0 ? 0 : delta_max - 1, /*exact=*/false);
  BoundCurve curve;
  curve.params = params;
  curve.representation = Representation::log_domain;
  curve.raw.reserve(delta_max + 1);
  curve.raw.push_back(1.0);
  long double sum = 0.0L, carry = 0.0L;  // Kahan compensation
  for (unsigned long long delta = 1; delta <= delta_max; ++delta) {
    const long double term = tables.t_float(delta - 1) - carry;
    const long double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
    curve.raw.push_back(static_cast<double>(1.0L - sum));
  }
  return curve;
}

// Smallest delta with raw(delta) <= 0, found by geometric extension of the
// curve; the CLI's default range is twice this value.
inline unsigned long long zero_crossing_delta(const EnsembleParams& params,
                                              Representation rep = Representation::exact) {
  for (unsigned long long delta_max = 4;; delta_max *= 2) {
    const BoundCurve curve = rep == Representation::exact
                                 ? tail_lower_bound(params, delta_max)
                                 : tail_lower_bound_logdomain(params, delta_max);
    for (unsigned long long delta = 1; delta <= delta_max; ++delta) {
      const bool nonpositive = rep == Representation::exact ? curve.raw_exact[delta] <= 0
                                                            : curve.raw[delta] <= 0.0;
      if (nonpositive) return delta;
    }
    // A pmf with all mass on high weights keeps the bound at 1 only up to
    // q*n + 1; beyond that T(w) > 0 is guaranteed, so the loop terminates.
  }
}

}  // namespace cutbound
