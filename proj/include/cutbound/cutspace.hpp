// Per-graph exact cut-space computations: incidence matrix over F2, its
// rank, the cut weight distribution B_w(G), and the detailed distribution
// A_{u,v,w}(G).  Everything works by explicit enumeration, so these are
// oracle-grade routines for small k.
#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "cutbound/ensemble.hpp"
#include "cutbound/rational.hpp"

namespace cutbound {

// k x n binary matrix; column j holds exactly the two endpoints of edge j.
struct IncidenceMatrix {
  unsigned k = 0, n = 0;
  std::vector<std::uint64_t> bits;  // row-major, stride words per row

  unsigned stride() const { return (n + 63) / 64; }

  bool at(unsigned row, unsigned col) const {
    return (bits[row * stride() + col / 64] >> (col % 64)) & 1;
  }

  void set(unsigned row, unsigned col) {
    bits[row * stride() + col / 64] |= std::uint64_t(1) << (col % 64);
  }
};

inline IncidenceMatrix incidence_matrix(const WeightedGraph& g) {
  IncidenceMatrix m;
  m.k = g.k;
  m.n = static_cast<unsigned>(g.edges.size());
  m.bits.assign(std::size_t(m.k) * m.stride(), 0);
  for (unsigned j = 0; j < m.n; ++j) {
    m.set(g.edges[j].u - 1, j);
    m.set(g.edges[j].v - 1, j);
  }
  return m;
}

// Rank over F2 by row elimination; equals k minus the component count.
inline unsigned f2_rank(const IncidenceMatrix& m) {
  const unsigned stride = m.stride();
  std::vector<std::uint64_t> rows(m.bits);
  unsigned rank = 0;
  for (unsigned col = 0; col < m.n && rank < m.k; ++col) {
    const unsigned word = col / 64;
    const std::uint64_t mask = std::uint64_t(1) << (col % 64);
    unsigned pivot = rank;
    while (pivot < m.k && !(rows[pivot * stride + word] & mask)) ++pivot;
    if (pivot == m.k) continue;
    for (unsigned w = 0; w < stride; ++w)
      std::swap(rows[rank * stride + w], rows[pivot * stride + w]);
    for (unsigned r = 0; r < m.k; ++r) {
      if (r != rank && (rows[r * stride + word] & mask))
        for (unsigned w = 0; w < stride; ++w)
          rows[r * stride + w] ^= rows[rank * stride + w];
    }
    ++rank;
  }
  return rank;
}

// Sparse cut weight distributions of a single graph.
struct CutSpectrum {
  unsigned k = 0, n = 0;
  unsigned long long max_weight = 0;                          // sum of all edge weights
  std::map<unsigned long long, std::uint64_t> b;              // w -> B_w(G)
  std::map<std::tuple<unsigned, unsigned, unsigned long long>, std::uint64_t>
      a;                                                      // (u, v, w) -> A_{u,v,w}(G)
};

namespace detail {

inline void spectrum_header(const WeightedGraph& g, CutSpectrum& s) {
  s.k = g.k;
  s.n = static_cast<unsigned>(g.edges.size());
  s.max_weight = 0;
  for (const Edge& e : g.edges) s.max_weight += e.w;
}

inline std::vector<std::uint64_t> endpoint_masks(const WeightedGraph& g) {
  std::vector<std::uint64_t> masks;
  masks.reserve(g.edges.size());
  for (const Edge& e : g.edges)
    masks.push_back((std::uint64_t(1) << (e.u - 1)) | (std::uint64_t(1) << (e.v - 1)));
  return masks;
}

}  // namespace detail

// B_w(G) over all 2^(k-1) - 1 bipartitions with vertex 1 fixed on side X;
// zero-weight cuts appear exactly when the graph is disconnected.
inline CutSpectrum cut_weight_distribution(const WeightedGraph& g, unsigned guard_k = 24) {
  if (g.k > guard_k)
    throw guard_error("bipartition enumeration", BigInt(1) << (g.k - 1),
                      BigInt(1) << (guard_k - 1));
  CutSpectrum s;
  detail::spectrum_header(g, s);
  const auto masks = detail::endpoint_masks(g);
  const std::uint64_t side_count = std::uint64_t(1) << (g.k - 1);
  for (std::uint64_t rest = 0; rest + 1 < side_count; ++rest) {
    const std::uint64_t side = (rest << 1) | 1;  // vertex 1 always on side X
    unsigned long long w = 0;
    for (std::size_t j = 0; j < masks.size(); ++j)
      if (std::popcount(side & masks[j]) == 1) w += g.edges[j].w;
    ++s.b[w];
  }
  return s;
}

// A_{u,v,w}(G): for every m outside {0^k, 1^k}, c = m M(G) over F2,
// u = |m|, v = |c|, w = sum of c_j * w_j.
inline CutSpectrum detailed_cut_distribution(const WeightedGraph& g, unsigned guard_k = 20) {
  if (g.k > guard_k)
    throw guard_error("detailed cut enumeration", BigInt(1) << g.k, BigInt(1) << guard_k);
  CutSpectrum s;
  detail::spectrum_header(g, s);
  const auto masks = detail::endpoint_masks(g);
  const std::uint64_t all = (std::uint64_t(1) << g.k) - 1;
  for (std::uint64_t m = 1; m < all; ++m) {
    const unsigned u = static_cast<unsigned>(std::popcount(m));
    unsigned v = 0;
    unsigned long long w = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (std::popcount(m & masks[j]) == 1) {
        ++v;
        w += g.edges[j].w;
      }
    }
    ++s.a[{u, v, w}];
  }
  return s;
}

struct Lemma1Report {
  bool holds = true;
  unsigned long long violating_w = 0;  // meaningful only when !holds
};

// Checks B_w(G) <= 1/2 sum_{u,v} A_{u,v,w}(G) for every w.
inline Lemma1Report lemma1_check(const WeightedGraph& g, unsigned guard_k = 20) {
  const CutSpectrum bs = cut_weight_distribution(g, guard_k > 24 ? guard_k : 24);
  const CutSpectrum as = detailed_cut_distribution(g, guard_k);
  std::map<unsigned long long, std::uint64_t> a_by_w;
  for (const auto& [cell, count] : as.a) a_by_w[std::get<2>(cell)] += count;
  for (const auto& [w, bw] : bs.b) {
    auto it = a_by_w.find(w);
    const std::uint64_t rhs = it == a_by_w.end() ? 0 : it->second;
    if (2 * bw > rhs) return {false, w};
  }
  return {true, 0};
}

}  // namespace cutbound
