// Exact arbitrary-precision integer/rational helpers shared by all modules.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cutbound {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Thrown on malformed or out-of-contract user input (CLI exit code 1).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an enumeration would exceed its configured guard (CLI exit code 2).
class guard_error : public std::runtime_error {
 public:
  guard_error(const std::string& what, BigInt configurations, BigInt limit)
      : std::runtime_error(what + ": " + configurations.str() +
                           " configurations exceed guard " + limit.str()),
        configurations(std::move(configurations)),
        limit(std::move(limit)) {}

  BigInt configurations;
  BigInt limit;
};

inline BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// C(n, k) with the usual convention that out-of-range arguments give 0.
inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step
  }
  return r;
}

// Parses "0.1", "-3", "1/10", "2." style inputs into an exact rational.
// Decimal fractions are exact: "0.1" means 1/10, never the nearest double.
inline BigRat parse_rational(std::string_view text) {
  auto fail = [&] {
    throw validation_error("cannot parse rational from \"" + std::string(text) + "\"");
  };

  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) fail();

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (num.empty() || den.empty()) fail();
    bool neg = false;
    if (num.front() == '+' || num.front() == '-') {
      neg = num.front() == '-';
      num.remove_prefix(1);
    }
    if (num.empty() || den.empty()) fail();
    for (char c : num)
      if (c < '0' || c > '9') fail();
    for (char c : den)
      if (c < '0' || c > '9') fail();
    BigInt n{std::string(num)};
    BigInt d{std::string(den)};
    if (d == 0) throw validation_error("zero denominator in \"" + std::string(text) + "\"");
    BigRat r(n, d);
    return neg ? BigRat(-r) : r;
  }

  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view ip = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) fail();
  for (char c : ip)
    if (c < '0' || c > '9') fail();
  for (char c : fp)
    if (c < '0' || c > '9') fail();

  BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
  BigInt num = whole * pow10(static_cast<unsigned>(fp.size()));
  if (!fp.empty()) num += BigInt(std::string(fp));
  BigRat r(num, pow10(static_cast<unsigned>(fp.size())));
  return neg ? BigRat(-r) : r;
}

// "p/q" (or just "p" for integers); lossless round-trip form.
inline std::string exact_string(const BigRat& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Rounds x to `digits` significant decimal digits (round half to even) and
// renders it without trailing zeros; falls back to e-notation far from 1.
inline std::string decimal_string(const BigRat& x, int digits = 15) {
  if (x == 0) return "0";
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  bool neg = num < 0;
  if (neg) num = -num;

  // decimal exponent e: 10^e <= num/den < 10^{e+1}
  auto ge_pow10 = [&](long long e) {
    if (e >= 0) return num >= den * pow10(static_cast<unsigned>(e));
    return num * pow10(static_cast<unsigned>(-e)) >= den;
  };
  long long e = static_cast<long long>(num.str().size()) -
                static_cast<long long>(den.str().size());
  while (!ge_pow10(e)) --e;
  while (ge_pow10(e + 1)) ++e;

  // scaled = round(num/den * 10^{digits-1-e}), half to even
  long long shift = digits - 1 - e;
  BigInt n = num, d = den;
  if (shift >= 0)
    n *= pow10(static_cast<unsigned>(shift));
  else
    d *= pow10(static_cast<unsigned>(-shift));
  BigInt q = n / d;
  BigInt r = n - q * d;
  BigInt twice = r * 2;
  if (twice > d || (twice == d && boost::multiprecision::bit_test(q, 0))) ++q;
  if (q == pow10(static_cast<unsigned>(digits))) {
    q /= 10;
    ++e;
  }

  std::string sig = q.str();  // exactly `digits` characters
  while (sig.size() > 1 && sig.back() == '0') sig.pop_back();

  std::string out;
  if (e >= -4 && e <= 17) {
    if (e >= static_cast<long long>(sig.size()) - 1) {
      out = sig + std::string(static_cast<size_t>(e) - (sig.size() - 1), '0');
    } else if (e >= 0) {
      out = sig.substr(0, static_cast<size_t>(e) + 1) + "." +
            sig.substr(static_cast<size_t>(e) + 1);
    } else {
      out = "0." + std::string(static_cast<size_t>(-e) - 1, '0') + sig;
    }
  } else {
    out = sig.substr(0, 1);
    if (sig.size() > 1) out += "." + sig.substr(1);
    long long ae = e < 0 ? -e : e;
    std::string es = std::to_string(ae);
    if (es.size() < 2) es.insert(es.begin(), '0');
    out += (e < 0 ? "e-" : "e+") + es;
  }
  return neg ? "-" + out : out;
}

// double conversion that stays accurate for ratios of very large integers.
inline double to_double(const BigRat& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  if (num == 0) return 0.0;
  bool neg = num < 0;
  if (neg) num = -num;
  long long k = 64 - (static_cast<long long>(boost::multiprecision::msb(num)) -
                      static_cast<long long>(boost::multiprecision::msb(den)));
  BigInt q;
  if (k >= 0)
    q = (num << static_cast<unsigned>(k)) / den;
  else
    q = num / (den << static_cast<unsigned>(-k));
  double r = std::ldexp(q.convert_to<double>(), static_cast<int>(-k));
  return neg ? -r : r;
}

}  // namespace cutbound
