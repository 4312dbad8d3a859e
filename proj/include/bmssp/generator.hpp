#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bmssp/graph.hpp"

namespace bmssp {

struct GeneratorOptions {
  static constexpr std::uint64_t kDefaultMaxWeight = 1'000'000;
  static constexpr std::size_t kMaxOutDegree = 4;
  static constexpr std::size_t kTargetMeanOutDegree = 3;
};

/// Sparse random digraph on n vertices in which vertex 1 reaches every
/// vertex, every out-degree is at most 4 and the mean out-degree is 3 (or as
/// close as the degree cap allows for tiny n). No self-loops or parallel arcs.
/// Weights are uniform on {1, ..., max_weight}. The result is a pure function
/// of (n, seed, max_weight).
///
/// Construction: a random arborescence rooted at vertex 1 over a random
/// ordering of the remaining vertices, each vertex hanging off a uniformly
/// chosen earlier vertex with spare out-degree; then uniformly random extra
/// arcs until m = 3n or no vertex has spare capacity.
inline Graph<std::uint64_t> generate_sparse_random(std::size_t n, std::uint64_t seed,
                                                   std::uint64_t max_weight = GeneratorOptions::kDefaultMaxWeight) {
  if (n == 0) throw GraphError("generator requires at least one vertex");
  if (max_weight == 0) throw GraphError("max_weight must be positive");
  if (n >= std::numeric_limits<VertexId>::max()) throw GraphError("vertex count exceeds 32-bit index range");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> weight_dist(1, max_weight);

  const std::size_t cap = std::min<std::size_t>(GeneratorOptions::kMaxOutDegree, n - 1);
  std::vector<std::uint8_t> out_degree(n, 0);
  std::vector<std::pair<VertexId, Arc<std::uint64_t>>> edges;
  edges.reserve(GeneratorOptions::kTargetMeanOutDegree * n);
  std::unordered_set<std::uint64_t> present;
  present.reserve(GeneratorOptions::kTargetMeanOutDegree * n);
  auto key = [n](VertexId u, VertexId v) { return static_cast<std::uint64_t>(u) * n + v; };

  // Vertices that may still receive an out-arc; swap-removed when full.
  std::vector<VertexId> open;
  std::vector<std::size_t> open_pos(n, SIZE_MAX);
  auto add_open = [&](VertexId v) {
    if (out_degree[v] < cap) {
      open_pos[v] = open.size();
      open.push_back(v);
    }
  };
  auto add_edge = [&](VertexId u, VertexId v) {
    edges.push_back({u, Arc<std::uint64_t>{v, weight_dist(rng)}});
    present.insert(key(u, v));
    if (++out_degree[u] >= cap) {
      auto pos = open_pos[u];
      open_pos[open.back()] = pos;
      std::swap(open[pos], open.back());
      open.pop_back();
      open_pos[u] = SIZE_MAX;
    }
  };

  std::vector<VertexId> order(n - 1);
  std::iota(order.begin(), order.end(), VertexId{1});
  std::shuffle(order.begin(), order.end(), rng);

  add_open(0);
  for (VertexId v : order) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    add_edge(open[pick(rng)], v);
    add_open(v);
  }

  const std::size_t target = GeneratorOptions::kTargetMeanOutDegree * n;
  std::uniform_int_distribution<VertexId> any_vertex(0, static_cast<VertexId>(n - 1));
  while (edges.size() < target && !open.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    VertexId u = open[pick(rng)];
    VertexId v = any_vertex(rng);
    if (v == u || present.contains(key(u, v))) continue;
    add_edge(u, v);
  }

  return Graph<std::uint64_t>::from_indexed(n, edges);
}

}  // namespace bmssp
