#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "bmssp/distance_state.hpp"
#include "bmssp/graph.hpp"

namespace bmssp {

/// Receives each vertex as Dijkstra finalizes it. Used by tests to observe
/// settling order; the default does nothing.
struct NoSettleObserver {
  template <class D>
  void operator()(VertexId, const D&) const noexcept {}
};

/// Dijkstra's algorithm over std::priority_queue (a binary heap). Stale heap
/// entries are skipped on pop instead of using decrease-key.
template <WeightType W, class Observer = NoSettleObserver>
DistanceState<W> dijkstra(const Graph<W>& graph, std::uint64_t source, Observer&& on_settle = {}) {
  DistanceState<W> state(graph.vertex_count(), source);
  using Entry = std::pair<Distance<W>, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({state.dist(state.source()), state.source()});

  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (state.is_complete(u) || d != state.dist(u)) continue;
    state.mark_complete(u);
    on_settle(u, d);
    for (const auto& arc : graph.out_edges(u)) {
      auto candidate = d + arc.weight;
      if (candidate < state.dist(arc.target)) {
        state.dist(arc.target) = candidate;
        heap.push({candidate, arc.target});
      }
    }
  }
  return state;
}

/// Exact distances by n-1 rounds of relaxing every arc. O(n*m); intended as a
/// test oracle on small graphs. Stops early once a round changes nothing.
template <WeightType W>
DistanceState<W> bellman_ford_oracle(const Graph<W>& graph, std::uint64_t source) {
  DistanceState<W> state(graph.vertex_count(), source);
  const std::size_t n = graph.vertex_count();
  for (std::size_t round = 0; round + 1 < n; ++round) {
    bool changed = false;
    for (VertexId u = 0; u < n; ++u) {
      const auto du = state.dist(u);
      if (du.is_infinite()) continue;
      for (const auto& arc : graph.out_edges(u)) {
        auto candidate = du + arc.weight;
        if (candidate < state.dist(arc.target)) {
          state.dist(arc.target) = candidate;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  for (VertexId v = 0; v < n; ++v) {
    if (state.dist(v).is_finite()) state.mark_complete(v);
  }
  return state;
}

}  // namespace bmssp
