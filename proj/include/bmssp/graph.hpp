#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmssp/weight.hpp"

namespace bmssp {

/// 0-based vertex index. Vertex numbers seen by users (DIMACS files, CLI,
/// source arguments) are 1-based; see to_index / to_number.
using VertexId = std::uint32_t;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr VertexId to_index(std::uint64_t vertex_number) noexcept {
  return static_cast<VertexId>(vertex_number - 1);
}
constexpr std::uint64_t to_number(VertexId index) noexcept {
  return static_cast<std::uint64_t>(index) + 1;
}

template <WeightType W>
struct Arc {
  VertexId target;
  W weight;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Edge with 1-based endpoints, as accepted by build_graph.
template <WeightType W>
struct EdgeSpec {
  std::uint64_t from;
  std::uint64_t to;
  W weight;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Immutable directed graph in compressed sparse row form.
template <WeightType W = std::uint64_t>
class Graph {
 public:
  using weight_type = W;

  Graph() : offsets_(1, 0) {}

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return arcs_.size(); }

  std::span<const Arc<W>> out_edges(VertexId u) const noexcept {
    return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
  }
  std::size_t out_degree(VertexId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  bool contains_number(std::uint64_t vertex_number) const noexcept {
    return vertex_number >= 1 && vertex_number <= vertex_count();
  }

  /// All edges as 1-based EdgeSpecs, grouped by source in adjacency order.
  std::vector<EdgeSpec<W>> edges() const {
    std::vector<EdgeSpec<W>> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u) {
      for (const auto& a : out_edges(u)) out.push_back({to_number(u), to_number(a.target), a.weight});
    }
    return out;
  }

  /// Builds from 0-based (source, arc) pairs. Arcs of one source keep their
  /// relative order. Endpoints and weights must already be validated.
  static Graph from_indexed(std::size_t n, std::span<const std::pair<VertexId, Arc<W>>> edges) {
    if (n >= std::numeric_limits<VertexId>::max()) throw GraphError("vertex count exceeds 32-bit index range");
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, arc] : edges) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.arcs_.resize(edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, arc] : edges) g.arcs_[cursor[u]++] = arc;
    return g;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Arc<W>> arcs_;
};

/// Builds a graph from 1-based edges. Throws GraphError on an endpoint outside
/// 1..n or an invalid (negative, NaN, infinite) weight.
template <WeightType W>
Graph<W> build_graph(std::size_t n, std::span<const EdgeSpec<W>> edges) {
  std::vector<std::pair<VertexId, Arc<W>>> indexed;
  indexed.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      throw GraphError("edge " + std::to_string(i) + ": endpoint out of range 1.." + std::to_string(n));
    }
    if (!WeightTraits<W>::is_valid_edge_weight(e.weight)) {
      throw GraphError("edge " + std::to_string(i) + ": weight must be finite and non-negative");
    }
    indexed.push_back({to_index(e.from), Arc<W>{to_index(e.to), e.weight}});
  }
  return Graph<W>::from_indexed(n, indexed);
}

template <WeightType W>
Graph<W> build_graph(std::size_t n, const std::vector<EdgeSpec<W>>& edges) {
  return build_graph<W>(n, std::span<const EdgeSpec<W>>(edges));
}

}  // namespace bmssp
