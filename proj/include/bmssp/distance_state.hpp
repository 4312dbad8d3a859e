#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bmssp/graph.hpp"
#include "bmssp/weight.hpp"

namespace bmssp {

/// Tentative distances plus completion flags for one single-source run.
/// Indexed by 0-based VertexId.
template <WeightType W>
class DistanceState {
 public:
  DistanceState() = default;

  /// Validates the 1-based source number and seeds dist[source] = 0.
  DistanceState(std::size_t n, std::uint64_t source_number)
      : dist_(n, Distance<W>::infinity()), complete_(n, 0) {
    if (source_number < 1 || source_number > n) {
      throw GraphError("source vertex " + std::to_string(source_number) + " outside 1.." + std::to_string(n));
    }
    source_ = to_index(source_number);
    dist_[source_] = Distance<W>(W{0});
  }

  std::size_t size() const noexcept { return dist_.size(); }
  VertexId source() const noexcept { return source_; }

  const Distance<W>& dist(VertexId v) const noexcept { return dist_[v]; }
  Distance<W>& dist(VertexId v) noexcept { return dist_[v]; }
  std::span<const Distance<W>> distances() const noexcept { return dist_; }

  bool is_complete(VertexId v) const noexcept { return complete_[v] != 0; }
  void mark_complete(VertexId v) noexcept { complete_[v] = 1; }

  friend bool operator==(const DistanceState& a, const DistanceState& b) {
    return a.source_ == b.source_ && a.dist_ == b.dist_;
  }

 private:
  std::vector<Distance<W>> dist_;
  std::vector<std::uint8_t> complete_;
  VertexId source_ = 0;
};

/// Sum of all finite distances with wrap-around; equal outputs give equal
/// checksums, which is how benchmark runs cross-check algorithms.
template <WeightType W>
std::uint64_t distance_checksum(const DistanceState<W>& state) {
  std::uint64_t sum = 0;
  for (const auto& d : state.distances()) {
    if (d.is_finite()) sum += static_cast<std::uint64_t>(d.value());
  }
  return sum;
}

}  // namespace bmssp
