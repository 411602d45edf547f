// The weighted random graph ensemble (R_{k,n}^q, P): k labeled vertices,
// n distinct edges drawn uniformly from the C(k,2) vertex pairs, each edge
// carrying an integer weight in [1,q] drawn i.i.d. from a pmf mu held as
// exact rationals.  Supports seeded sampling, exact probability evaluation,
// and exhaustive enumeration for oracle use.
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cutbound/rational.hpp"
#include "cutbound/rng.hpp"

namespace cutbound {

// Discrete measure mu over weights 1..q, stored exactly.
struct WeightPmf {
  unsigned q = 0;                // max weight; probs.size() == q
  std::vector<BigRat> probs;     // probs[i] = mu(i + 1)

  void validate() const {
    if (q == 0 || probs.size() != q)
      throw validation_error("pmf must have at least one entry");
    BigRat sum = 0;
    for (const BigRat& p : probs) {
      if (p < 0) throw validation_error("pmf entries must be non-negative");
      sum += p;
    }
    if (sum != 1)
      throw validation_error("pmf sums to " + decimal_string(sum) + ", expected 1");
  }

  // Comma-separated decimals or rationals, e.g. "0.1,0.2,0.4,0.2,0.1".
  static WeightPmf parse(std::string_view text) {
    WeightPmf pmf;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      pmf.probs.push_back(parse_rational(text.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    pmf.q = static_cast<unsigned>(pmf.probs.size());
    pmf.validate();
    return pmf;
  }

  const BigRat& operator()(unsigned weight) const { return probs.at(weight - 1); }

  // Smallest weight with positive probability (exists since the pmf sums to 1).
  unsigned min_support() const {
    for (unsigned i = 0; i < q; ++i)
      if (probs[i] > 0) return i + 1;
    throw validation_error("pmf has empty support");
  }

  std::string to_string() const {
    std::string out;
    for (unsigned i = 0; i < q; ++i) {
      if (i) out += ',';
      out += exact_string(probs[i]);
    }
    return out;
  }
};

struct EnsembleParams {
  unsigned k = 0;  // labeled vertices
  unsigned n = 0;  // edges
  WeightPmf pmf;

  void validate() const {
    if (k < 2) throw validation_error("k must be at least 2");
    pmf.validate();
    const unsigned long long pairs = 1ULL * k * (k - 1) / 2;
    if (n < 1 || n > pairs)
      throw validation_error("n must lie in [1, k(k-1)/2] = [1, " +
                             std::to_string(pairs) + "]");
  }
};

struct Edge {
  unsigned u = 0, v = 0;  // 1-based endpoints, u < v
  unsigned w = 1;         // integer weight in [1, q]

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A labeled simple graph with weighted edges; edge label i = position i.
struct WeightedGraph {
  unsigned k = 0;
  std::vector<Edge> edges;

  void validate(unsigned q) const {
    if (k < 2) throw validation_error("graph needs at least 2 vertices");
    std::vector<unsigned long long> seen;
    seen.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u == e.v) throw validation_error("self-loop on vertex " + std::to_string(e.u));
      if (e.u < 1 || e.v < 1 || e.u > k || e.v > k)
        throw validation_error("edge endpoint out of range");
      if (e.w < 1 || e.w > q)
        throw validation_error("edge weight " + std::to_string(e.w) +
                               " outside [1, " + std::to_string(q) + "]");
      unsigned a = std::min(e.u, e.v), b = std::max(e.u, e.v);
      seen.push_back(1ULL * a * (k + 1) + b);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw validation_error("duplicate edge (multi-edges not allowed)");
  }
};

inline unsigned long long pair_count(unsigned k) { return 1ULL * k * (k - 1) / 2; }

// Lexicographic unordered pairs: index 0 -> (1,2), 1 -> (1,3), ...
inline std::pair<unsigned, unsigned> pair_from_index(unsigned k, unsigned long long idx) {
  unsigned u = 1;
  unsigned long long row = k - 1;  // pairs with first endpoint u
  while (idx >= row) {
    idx -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + static_cast<unsigned>(idx)};
}

// |R_{k,n}^q| = n! * C(C(k,2), n) * q^n.
inline BigInt ensemble_cardinality(const EnsembleParams& params) {
  params.validate();
  BigInt card = factorial(params.n) * binomial(static_cast<long long>(pair_count(params.k)),
                                               params.n);
  BigInt qn = 1;
  for (unsigned i = 0; i < params.n; ++i) qn *= params.pmf.q;
  return card * qn;
}

// P(G) = prod_i mu(w_i) / (n! * C(C(k,2), n)).
inline BigRat graph_probability(const EnsembleParams& params, const WeightedGraph& g) {
  params.validate();
  if (g.k != params.k || g.edges.size() != params.n)
    throw validation_error("graph dimensions do not match ensemble parameters");
  g.validate(params.pmf.q);
  BigRat mass = 1;
  for (const Edge& e : g.edges) mass *= params.pmf(e.w);
  BigRat labelings(factorial(params.n) *
                   binomial(static_cast<long long>(pair_count(params.k)), params.n));
  return mass / labelings;
}

namespace detail {

// Exact inverse-CDF weight sampler: one integer draw below the common
// denominator D, then a walk over cumulative numerators.
class WeightSampler {
 public:
  explicit WeightSampler(const WeightPmf& pmf) {
    denom_ = 1;
    for (const BigRat& p : pmf.probs)
      denom_ = boost::multiprecision::lcm(denom_, BigInt(boost::multiprecision::denominator(p)));
    BigInt cum = 0;
    for (const BigRat& p : pmf.probs) {
      cum += boost::multiprecision::numerator(p) *
             (denom_ / boost::multiprecision::denominator(p));
      cum_.push_back(cum);
    }
  }

  unsigned draw(RandomStream& stream) const {
    BigInt r = stream.below_big(denom_);
    for (unsigned i = 0; i < cum_.size(); ++i)
      if (r < cum_[i]) return i + 1;
    return static_cast<unsigned>(cum_.size());  // unreachable for a valid pmf
  }

 private:
  BigInt denom_;
  std::vector<BigInt> cum_;
};

}  // namespace detail

// Uniform n-subset of pair indices by partial Fisher-Yates over a sparse
// permutation, then i.i.d. weights from mu; deterministic given the stream.
inline WeightedGraph sample_graph(const EnsembleParams& params, RandomStream& stream) {
  const unsigned long long pairs = pair_count(params.k);
  detail::WeightSampler weights(params.pmf);
  std::unordered_map<unsigned long long, unsigned long long> moved;
  WeightedGraph g;
  g.k = params.k;
  g.edges.reserve(params.n);
  for (unsigned i = 0; i < params.n; ++i) {
    unsigned long long j = i + stream.below(pairs - i);
    auto it = moved.find(j);
    unsigned long long pick = it == moved.end() ? j : it->second;
    auto slot = moved.find(i);
    moved[j] = slot == moved.end() ? i : slot->second;
    auto [u, v] = pair_from_index(params.k, pick);
    g.edges.push_back({u, v, weights.draw(stream)});
  }
  return g;
}

// Visits one representative per (edge-set, weight-assignment) pair; the n!
// edge labelings are folded into the emitted probability, which therefore
// sums to exactly 1 over the whole iteration.
template <class Visitor>
void enumerate_ensemble(const EnsembleParams& params, Visitor&& visit,
                        const BigInt& guard = BigInt(10000000)) {
  params.validate();
  const unsigned long long pairs = pair_count(params.k);
  const unsigned n = params.n;
  BigInt configurations = binomial(static_cast<long long>(pairs), n);
  for (unsigned i = 0; i < n; ++i) configurations *= params.pmf.q;
  if (configurations > guard) throw guard_error("ensemble enumeration", configurations, guard);

  const BigRat edge_set_mass(1, binomial(static_cast<long long>(pairs), n));
  std::vector<unsigned long long> combo(n);
  for (unsigned i = 0; i < n; ++i) combo[i] = i;
  WeightedGraph g;
  g.k = params.k;
  g.edges.resize(n);
  for (;;) {
    for (unsigned i = 0; i < n; ++i) {
      auto [u, v] = pair_from_index(params.k, combo[i]);
      g.edges[i] = {u, v, 1};
    }
    // Odometer over weight assignments for this edge set.
    for (;;) {
      BigRat prob = edge_set_mass;
      for (const Edge& e : g.edges) prob *= params.pmf(e.w);
      visit(g, prob);
      unsigned pos = 0;
      while (pos < n && g.edges[pos].w == params.pmf.q) g.edges[pos++].w = 1;
      if (pos == n) break;
      ++g.edges[pos].w;
    }
    // Next lexicographic n-combination of pair indices.
    unsigned pos = n;
    while (pos > 0 && combo[pos - 1] == pairs - n + pos - 1) --pos;
    if (pos == 0) break;
    ++combo[pos - 1];
    for (unsigned i = pos; i < n; ++i) combo[i] = combo[i - 1] + 1;
  }
}

}  // namespace cutbound
