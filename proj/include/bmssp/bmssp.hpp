#pragma once

// Deterministic bounded multi-source shortest paths: the O(m log^{2/3} n)
// divide-and-conquer SSSP algorithm built from pivot finding, a truncated
// Dijkstra base case and the batch-pulling BoundedQueue.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bmssp/bounded_queue.hpp"
#include "bmssp/distance_state.hpp"
#include "bmssp/graph.hpp"
#include "bmssp/selection.hpp"

namespace bmssp {

struct Params {
  std::size_t n = 1;
  std::uint32_t k = 1;      // relaxation rounds in find_pivots; base case settles k+1
  std::uint32_t t = 1;      // each level splits the distance range into about 2^t parts
  std::uint32_t l_max = 1;  // top recursion level
};

/// k = floor((log2 n)^(1/3)), t = floor((log2 n)^(2/3)), l_max = ceil(log2(n)/t),
/// each clamped to at least 1.
inline Params compute_params(std::size_t n) {
  if (n == 0) throw std::invalid_argument("compute_params requires n >= 1");
  const double lg = std::log2(static_cast<double>(n));
  // Largest integer r with r^3 <= x, computed without pow() rounding at exact cubes.
  auto floor_cbrt = [](double x) {
    std::uint32_t r = 1;
    while (static_cast<double>(r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
  };
  Params p;
  p.n = n;
  p.k = floor_cbrt(lg);
  p.t = floor_cbrt(lg * lg);
  p.l_max = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(lg / p.t)));
  return p;
}

namespace detail {

/// 2^e, saturating well below overflow.
constexpr std::uint64_t pow2_saturated(std::uint64_t e) noexcept { return std::uint64_t{1} << std::min<std::uint64_t>(e, 48); }

}  // namespace detail

/// Total order on vertices used by the recursion: distance, then hop count of
/// the fewest-hop shortest path, then vertex index. Distinct vertices never
/// share a label, and a vertex on another's shortest path always has the
/// smaller label, even across zero-weight arcs.
template <WeightType W>
struct Label {
  Distance<W> dist;
  std::uint32_t hops = std::numeric_limits<std::uint32_t>::max();
  VertexId vertex = std::numeric_limits<VertexId>::max();

  static constexpr Label infinity() noexcept { return Label{}; }
  constexpr bool is_infinite() const noexcept { return dist.is_infinite(); }

  // All infinite labels are equivalent; none is below the infinite bound.
  friend constexpr std::weak_ordering operator<=>(const Label& a, const Label& b) noexcept {
    if (a.dist.is_infinite() || b.dist.is_infinite()) {
      return a.dist.is_infinite() == b.dist.is_infinite() ? std::weak_ordering::equivalent
             : a.dist.is_infinite()                     ? std::weak_ordering::greater
                                                        : std::weak_ordering::less;
    }
    if (auto c = a.dist <=> b.dist; c != 0) return c;
    if (auto c = a.hops <=> b.hops; c != 0) return c;
    return a.vertex <=> b.vertex;
  }
  friend constexpr bool operator==(const Label& a, const Label& b) noexcept { return (a <=> b) == 0; }
};

template <WeightType W>
struct BoundedResult {
  Label<W> bound;                    // B' <= B
  std::vector<VertexId> completed;   // U: every member has label < B'
};

struct PivotResult {
  std::vector<VertexId> pivots;   // P, a subset of S
  std::vector<VertexId> working;  // W, a superset of S
  bool early_exit = false;        // |W| outgrew k|S|, so P = S
};

struct SolverStats {
  std::uint64_t relaxations = 0;  // arc examinations across all phases
  std::uint64_t bmssp_calls = 0;
  std::uint64_t base_cases = 0;
  std::uint64_t driver_rounds = 0;
  std::uint32_t max_depth = 0;    // deepest level below l_max reached
};

/// One single-source run. The building blocks (find_pivots, base_case,
/// bmssp) are public so they can be exercised on a prepared state; run()
/// drives the whole computation.
template <WeightType W, class Select = MedianOfMediansSelect>
class BmsspSolver {
 public:
  using LabelT = Label<W>;
  using Result = BoundedResult<W>;
  using ResultObserver = std::function<void(std::uint32_t level, const Result&)>;

  BmsspSolver(const Graph<W>& graph, std::uint64_t source_number, std::optional<Params> params = std::nullopt)
      : graph_(graph),
        params_(params ? *params : compute_params(std::max<std::size_t>(1, graph.vertex_count()))),
        state_(graph.vertex_count(), source_number),
        hops_(graph.vertex_count(), std::numeric_limits<std::uint32_t>::max()) {
    if (params_.k == 0 || params_.t == 0 || params_.l_max == 0) throw std::invalid_argument("k, t and l_max must be positive");
    hops_[state_.source()] = 0;
    state_.mark_complete(state_.source());
  }

  const Params& params() const noexcept { return params_; }
  const SolverStats& stats() const noexcept { return stats_; }
  const DistanceState<W>& state() const noexcept { return state_; }
  DistanceState<W> take_state() && { return std::move(state_); }

  /// Called with every bmssp/base_case result, innermost first.
  void set_result_observer(ResultObserver observer) { observer_ = std::move(observer); }

  LabelT label(VertexId v) const noexcept { return LabelT{state_.dist(v), hops_[v], v}; }

  /// Overrides a tentative distance. For preparing states in tests.
  void set_tentative(VertexId v, W dist, std::uint32_t hops) {
    state_.dist(v) = Distance<W>(dist);
    hops_[v] = hops;
  }
  void mark_complete(VertexId v) { state_.mark_complete(v); }

  /// Runs to completion: bmssp(l_max, inf, {source}), re-invoked on the
  /// frontier of completed vertices while a call ends with a finite bound.
  void run() {
    std::vector<VertexId> sources{state_.source()};
    while (!sources.empty()) {
      ++stats_.driver_rounds;
      auto result = bmssp(params_.l_max, LabelT::infinity(), sources);
      if (result.bound.is_infinite()) break;
      sources = completed_frontier();
    }
  }

  /// k rounds of Bellman-Ford style relaxation from S, restricted to labels
  /// below the bound, then pivots = roots in S whose relaxation tree has at
  /// least k vertices.
  PivotResult find_pivots(const LabelT& bound, std::span<const VertexId> sources) {
    for (VertexId s : sources) {
      if (!(label(s) < bound)) throw std::logic_error("find_pivots: source at or beyond the bound");
    }
    PivotResult out;
    std::unordered_set<VertexId> in_working;
    for (VertexId s : sources) {
      if (in_working.insert(s).second) out.working.push_back(s);
    }
    const std::size_t source_count = in_working.size();
    // Last arc that set each vertex's label during these rounds; a member of
    // W without an entry is a root (only members of S start that way).
    std::unordered_map<VertexId, VertexId> parent;

    std::vector<VertexId> frontier(out.working);
    std::vector<VertexId> next;
    std::unordered_set<VertexId> in_next;
    for (std::uint32_t round = 0; round < params_.k && !frontier.empty(); ++round) {
      next.clear();
      in_next.clear();
      for (VertexId u : frontier) {
        const auto du = state_.dist(u);
        const auto hu = hops_[u];
        for (const auto& arc : graph_.out_edges(u)) {
          ++stats_.relaxations;
          const VertexId v = arc.target;
          const auto cand = du + arc.weight;
          const auto order = compare_tentative(cand, hu + 1, v);
          if (order > 0) continue;
          const bool known = in_working.contains(v);
          if (order == 0 && known) continue;
          state_.dist(v) = cand;
          hops_[v] = hu + 1;
          if (!(label(v) < bound)) continue;
          parent[v] = u;
          if (!known) {
            in_working.insert(v);
            out.working.push_back(v);
          }
          if (in_next.insert(v).second) next.push_back(v);
        }
      }
      std::swap(frontier, next);
      if (out.working.size() > static_cast<std::size_t>(params_.k) * source_count) {
        out.pivots.assign(sources.begin(), sources.end());
        out.early_exit = true;
        return out;
      }
    }

    std::unordered_map<VertexId, VertexId> root_of;
    std::unordered_map<VertexId, std::size_t> tree_size;
    std::vector<VertexId> chain;
    for (VertexId w : out.working) {
      chain.clear();
      VertexId cur = w;
      VertexId root;
      while (true) {
        if (auto r = root_of.find(cur); r != root_of.end()) {
          root = r->second;
          break;
        }
        chain.push_back(cur);
        auto p = parent.find(cur);
        if (p == parent.end()) {
          root = cur;
          break;
        }
        cur = p->second;
      }
      for (VertexId c : chain) root_of[c] = root;
      ++tree_size[root];
    }
    std::unordered_set<VertexId> seen;
    for (VertexId s : sources) {
      if (!seen.insert(s).second || parent.contains(s)) continue;
      if (tree_size[s] >= params_.k) out.pivots.push_back(s);
    }
    return out;
  }

  /// Dijkstra from the single source x, limited to labels below the bound and
  /// stopped once k+1 vertices are settled.
  Result base_case(const LabelT& bound, std::span<const VertexId> sources) {
    if (sources.size() != 1) throw std::invalid_argument("base_case requires exactly one source");
    const VertexId x = sources.front();
    if (!(label(x) < bound)) throw std::logic_error("base_case: source at or beyond the bound");
    ++stats_.base_cases;

    using Entry = std::pair<LabelT, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    std::unordered_set<VertexId> settled_set;
    std::vector<VertexId> settled;
    heap.push({label(x), x});
    const std::size_t want = static_cast<std::size_t>(params_.k) + 1;
    while (!heap.empty() && settled.size() < want) {
      auto [lab, u] = heap.top();
      heap.pop();
      if (lab != label(u) || !settled_set.insert(u).second) continue;
      settled.push_back(u);
      const auto du = state_.dist(u);
      const auto hu = hops_[u];
      for (const auto& arc : graph_.out_edges(u)) {
        ++stats_.relaxations;
        const VertexId v = arc.target;
        const auto cand = du + arc.weight;
        if (compare_tentative(cand, hu + 1, v) > 0) continue;
        if (!(LabelT{cand, hu + 1, v} < bound)) continue;
        state_.dist(v) = cand;
        hops_[v] = hu + 1;
        heap.push({label(v), v});
      }
    }

    Result result;
    if (settled.size() < want) {
      result.bound = bound;
      result.completed = std::move(settled);
    } else {
      // Heap order makes the last settled vertex the largest label.
      result.bound = label(settled.back());
      settled.pop_back();
      result.completed = std::move(settled);
    }
    for (VertexId v : result.completed) state_.mark_complete(v);
    notify(0, result);
    return result;
  }

  /// Completes every vertex whose label is below the returned bound and whose
  /// shortest path runs through S. The bound equals `bound` unless the call
  /// stopped early after completing more than k * 2^(level*t) vertices.
  Result bmssp(std::uint32_t level, const LabelT& bound, std::span<const VertexId> sources) {
    if (level > params_.l_max) throw std::logic_error("bmssp: level above l_max");
    if (level == 0) return base_case(bound, sources);
    if (sources.size() > detail::pow2_saturated(std::uint64_t{level} * params_.t)) {
      throw std::logic_error("bmssp: |S| exceeds 2^(level*t)");
    }
    ++stats_.bmssp_calls;
    stats_.max_depth = std::max(stats_.max_depth, params_.l_max - level + 1);

    auto pivots = find_pivots(bound, sources);

    const std::uint64_t batch = detail::pow2_saturated(std::uint64_t{level - 1} * params_.t);
    const std::uint64_t limit = params_.k * detail::pow2_saturated(std::uint64_t{level} * params_.t);
    BoundedQueue<VertexId, LabelT, Select> queue(static_cast<std::size_t>(batch), bound);
    for (VertexId p : pivots.pivots) queue.insert(p, label(p));

    std::vector<VertexId> completed;
    std::unordered_set<VertexId> in_completed;
    LabelT last_child_bound = bound;
    bool looped = false;
    std::vector<typename BoundedQueue<VertexId, LabelT, Select>::Item> prepend;

    while (completed.size() < limit && !queue.empty()) {
      looped = true;
      auto pulled = queue.pull();
      auto child = bmssp(level - 1, pulled.bound, pulled.keys);
      last_child_bound = child.bound;
      for (VertexId u : child.completed) {
        if (in_completed.insert(u).second) completed.push_back(u);
      }

      prepend.clear();
      for (VertexId u : child.completed) {
        const auto du = state_.dist(u);
        const auto hu = hops_[u];
        for (const auto& arc : graph_.out_edges(u)) {
          ++stats_.relaxations;
          const VertexId v = arc.target;
          const auto cand = du + arc.weight;
          if (compare_tentative(cand, hu + 1, v) > 0) continue;
          state_.dist(v) = cand;
          hops_[v] = hu + 1;
          const LabelT lv = label(v);
          if (!(lv < bound)) continue;
          if (!(lv < pulled.bound)) {
            queue.insert(v, lv);
          } else if (!(lv < child.bound)) {
            prepend.push_back({v, lv});
          }
        }
      }
      for (VertexId x : pulled.keys) {
        const LabelT lx = label(x);
        if (!(lx < child.bound) && lx < pulled.bound) prepend.push_back({x, lx});
      }
      queue.batch_prepend(prepend);
    }

    Result result;
    result.bound = looped ? std::min(last_child_bound, bound) : bound;
    for (VertexId w : pivots.working) {
      if (label(w) < result.bound && in_completed.insert(w).second) completed.push_back(w);
    }
    for (VertexId v : completed) state_.mark_complete(v);
    result.completed = std::move(completed);
    notify(level, result);
    return result;
  }

 private:
  /// Three-way comparison of the candidate (dist, hops) for v against v's
  /// current pair.
  int compare_tentative(const Distance<W>& dist, std::uint32_t hops, VertexId v) const noexcept {
    const auto& cur = state_.dist(v);
    if (dist < cur) return -1;
    if (cur < dist) return 1;
    if (hops < hops_[v]) return -1;
    if (hops_[v] < hops) return 1;
    return 0;
  }

  /// Completed vertices with an arc into an incomplete one.
  std::vector<VertexId> completed_frontier() const {
    std::vector<VertexId> out;
    for (VertexId u = 0; u < graph_.vertex_count(); ++u) {
      if (!state_.is_complete(u)) continue;
      for (const auto& arc : graph_.out_edges(u)) {
        if (!state_.is_complete(arc.target)) {
          out.push_back(u);
          break;
        }
      }
    }
    return out;
  }

  void notify(std::uint32_t level, const Result& result) {
    if (observer_) observer_(level, result);
  }

  const Graph<W>& graph_;
  Params params_;
  DistanceState<W> state_;
  std::vector<std::uint32_t> hops_;
  SolverStats stats_;
  ResultObserver observer_;
};

/// Single-source shortest paths via the bounded multi-source recursion.
/// Output is identical to dijkstra(graph, source).
template <WeightType W>
DistanceState<W> sssp(const Graph<W>& graph, std::uint64_t source, SolverStats* stats = nullptr) {
  BmsspSolver<W> solver(graph, source);
  solver.run();
  if (stats) *stats = solver.stats();
  return std::move(solver).take_state();
}

}  // namespace bmssp
