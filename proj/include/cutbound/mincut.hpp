// Global minimum cut capacity lambda(G) of a weighted undirected graph, by
// two independent deterministic algorithms:
//   - Stoer-Wagner maximum-adjacency contraction (fast default, O(k^3)),
//   - repeated s-t max flow from a fixed source (Edmonds-Karp augmenting
//     paths), taking the minimum over all sinks.
// Integer capacities throughout; disconnected inputs short-circuit to 0.
#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cutbound/ensemble.hpp"

namespace cutbound {

struct MinCutResult {
  unsigned long long value = 0;
  std::vector<unsigned> witness;  // 1-based vertex ids of side X (non-empty, proper)
};

namespace detail {

// Vertices (1-based) reachable from vertex 1; a proper subset iff disconnected.
inline std::vector<unsigned> component_of_v1(const WeightedGraph& g) {
  std::vector<std::vector<unsigned>> adj(g.k + 1);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(g.k + 1, 0);
  std::vector<unsigned> stack{1}, out;
  seen[1] = 1;
  while (!stack.empty()) {
    unsigned v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (unsigned nb : adj[v])
      if (!seen[nb]) {
        seen[nb] = 1;
        stack.push_back(nb);
      }
  }
  return out;
}

inline unsigned long long crossing_weight(const WeightedGraph& g,
                                          const std::vector<unsigned>& side) {
  std::vector<char> in_side(g.k + 1, 0);
  for (unsigned v : side) in_side[v] = 1;
  unsigned long long w = 0;
  for (const Edge& e : g.edges)
    if (in_side[e.u] != in_side[e.v]) w += e.w;
  return w;
}

inline void verify_witness(const WeightedGraph& g, const MinCutResult& r) {
  if (r.witness.empty() || r.witness.size() >= g.k)
    throw std::logic_error("min-cut witness is not a proper non-empty subset");
  if (crossing_weight(g, r.witness) != r.value)
    throw std::logic_error("min-cut witness does not reproduce the cut value");
}

}  // namespace detail

inline bool is_connected(const WeightedGraph& g) {
  return detail::component_of_v1(g).size() == g.k;
}

// Stoer-Wagner with deterministic maximum-adjacency ordering (smallest
// vertex index wins ties, first-found minimum cut kept).
inline MinCutResult global_min_cut(const WeightedGraph& g) {
  if (g.k < 2) throw validation_error("min cut needs at least 2 vertices");
  auto comp = detail::component_of_v1(g);
  if (comp.size() < g.k) {
    MinCutResult r{0, std::move(comp)};
    detail::verify_witness(g, r);
    return r;
  }

  const unsigned k = g.k;
  std::vector<std::vector<unsigned long long>> adj(k, std::vector<unsigned long long>(k, 0));
  for (const Edge& e : g.edges) {
    adj[e.u - 1][e.v - 1] += e.w;
    adj[e.v - 1][e.u - 1] += e.w;
  }
  std::vector<std::vector<unsigned>> groups(k);
  for (unsigned v = 0; v < k; ++v) groups[v] = {v + 1};
  std::vector<char> active(k, 1);

  MinCutResult best;
  best.value = std::numeric_limits<unsigned long long>::max();
  for (unsigned phase = 0; phase + 1 < k; ++phase) {
    std::vector<char> in_a(k, 0);
    std::vector<unsigned long long> wsum(k, 0);
    unsigned first = 0;
    while (!active[first]) ++first;
    in_a[first] = 1;
    for (unsigned v = 0; v < k; ++v)
      if (active[v] && !in_a[v]) wsum[v] = adj[first][v];
    unsigned prev = first, last = first;
    for (unsigned step = phase + 2; step < k + 1; ++step) {
      unsigned pick = k;
      for (unsigned v = 0; v < k; ++v)
        if (active[v] && !in_a[v] && (pick == k || wsum[v] > wsum[pick])) pick = v;
      prev = last;
      last = pick;
      in_a[pick] = 1;
      if (step < k) {  // wsum only needed for still-unselected vertices
        for (unsigned v = 0; v < k; ++v)
          if (active[v] && !in_a[v]) wsum[v] += adj[pick][v];
      }
    }
    if (wsum[last] < best.value) {
      best.value = wsum[last];
      best.witness = groups[last];
    }
    // Contract last into prev.
    active[last] = 0;
    groups[prev].insert(groups[prev].end(), groups[last].begin(), groups[last].end());
    for (unsigned v = 0; v < k; ++v) {
      adj[prev][v] += adj[last][v];
      adj[v][prev] = adj[prev][v];
    }
  }
  detail::verify_witness(g, best);
  return best;
}

namespace detail {

struct FlowResult {
  unsigned long long value = 0;
  std::vector<std::vector<unsigned long long>> residual;  // 0-based capacity matrix
};

inline FlowResult edmonds_karp(const WeightedGraph& g, unsigned s, unsigned t) {
  const unsigned k = g.k;
  FlowResult fr;
  fr.residual.assign(k, std::vector<unsigned long long>(k, 0));
  for (const Edge& e : g.edges) {
    fr.residual[e.u - 1][e.v - 1] += e.w;
    fr.residual[e.v - 1][e.u - 1] += e.w;
  }
  const unsigned src = s - 1, dst = t - 1;
  for (;;) {
    std::vector<int> parent(k, -1);
    parent[src] = static_cast<int>(src);
    std::queue<unsigned> bfs;
    bfs.push(src);
    while (!bfs.empty() && parent[dst] < 0) {
      unsigned v = bfs.front();
      bfs.pop();
      for (unsigned nb = 0; nb < k; ++nb)
        if (parent[nb] < 0 && fr.residual[v][nb] > 0) {
          parent[nb] = static_cast<int>(v);
          bfs.push(nb);
        }
    }
    if (parent[dst] < 0) break;
    unsigned long long push = std::numeric_limits<unsigned long long>::max();
    for (unsigned v = dst; v != src; v = static_cast<unsigned>(parent[v]))
      push = std::min(push, fr.residual[parent[v]][v]);
    for (unsigned v = dst; v != src; v = static_cast<unsigned>(parent[v])) {
      fr.residual[parent[v]][v] -= push;
      fr.residual[v][static_cast<unsigned>(parent[v])] += push;
    }
    fr.value += push;
  }
  return fr;
}

inline std::vector<unsigned> residual_reachable(const FlowResult& fr, unsigned s) {
  const unsigned k = static_cast<unsigned>(fr.residual.size());
  std::vector<char> seen(k, 0);
  std::vector<unsigned> stack{s - 1}, out;
  seen[s - 1] = 1;
  while (!stack.empty()) {
    unsigned v = stack.back();
    stack.pop_back();
    out.push_back(v + 1);
    for (unsigned nb = 0; nb < k; ++nb)
      if (!seen[nb] && fr.residual[v][nb] > 0) {
        seen[nb] = 1;
        stack.push_back(nb);
      }
  }
  return out;
}

}  // namespace detail

// s-t max flow with each undirected edge as capacity w in both directions.
inline unsigned long long max_flow(const WeightedGraph& g, unsigned s, unsigned t) {
  if (s == t || s < 1 || t < 1 || s > g.k || t > g.k)
    throw validation_error("max flow needs distinct vertices within the graph");
  return detail::edmonds_karp(g, s, t).value;
}

// Global min cut as min over t != v1 of maxflow(v1, t); witness from the
// residual reachability set of the best sink.
inline MinCutResult global_min_cut_via_maxflow(const WeightedGraph& g) {
  if (g.k < 2) throw validation_error("min cut needs at least 2 vertices");
  auto comp = detail::component_of_v1(g);
  if (comp.size() < g.k) {
    MinCutResult r{0, std::move(comp)};
    detail::verify_witness(g, r);
    return r;
  }
  MinCutResult best;
  best.value = std::numeric_limits<unsigned long long>::max();
  for (unsigned t = 2; t <= g.k; ++t) {
    detail::FlowResult fr = detail::edmonds_karp(g, 1, t);
    if (fr.value < best.value) {
      best.value = fr.value;
      best.witness = detail::residual_reachable(fr, 1);
    }
  }
  detail::verify_witness(g, best);
  return best;
}

}  // namespace cutbound
