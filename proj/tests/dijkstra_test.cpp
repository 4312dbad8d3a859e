#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bmssp/dijkstra.hpp"
#include "bmssp/generator.hpp"
#include "bmssp/graph.hpp"
#include "bmssp/selection.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace bmssp {
namespace {

using Edges = std::vector<EdgeSpec<std::uint64_t>>;

std::vector<std::uint64_t> finite(const DistanceState<std::uint64_t>& s) {
  std::vector<std::uint64_t> out;
  for (const auto& d : s.distances()) out.push_back(d.is_finite() ? d.value() : UINT64_MAX);
  return out;
}

TEST(DijkstraTest, SingleVertex) {
  auto g = build_graph<std::uint64_t>(1, Edges{});
  EXPECT_EQ(finite(dijkstra(g, 1)), (std::vector<std::uint64_t>{0}));
}

TEST(DijkstraTest, UniquePath) {
  auto g = build_graph<std::uint64_t>(3, Edges{{1, 2, 5}, {2, 3, 7}});
  EXPECT_EQ(finite(dijkstra(g, 1)), (std::vector<std::uint64_t>{0, 5, 12}));
}

TEST(DijkstraTest, UnreachableVerticesStayInfinite) {
  auto g = build_graph<std::uint64_t>(3, Edges{{2, 3, 1}});
  auto s = dijkstra(g, 1);
  EXPECT_TRUE(s.dist(0).is_finite());
  EXPECT_TRUE(s.dist(1).is_infinite());
  EXPECT_TRUE(s.dist(2).is_infinite());
  EXPECT_FALSE(s.is_complete(1));
}

TEST(DijkstraTest, SourceOutOfRange) {
  auto g = build_graph<std::uint64_t>(2, Edges{});
  EXPECT_THROW(dijkstra(g, 0), GraphError);
  EXPECT_THROW(dijkstra(g, 3), GraphError);
  EXPECT_THROW(bellman_ford_oracle(g, 3), GraphError);
}

TEST(DijkstraTest, MatchesOracleOnGeneratedGraph) {
  auto g = generate_sparse_random(64, 1, GeneratorOptions::kDefaultMaxWeight);
  EXPECT_EQ(dijkstra(g, 1), bellman_ford_oracle(g, 1));
}

TEST(DijkstraTest, FloatingPointWeights) {
  auto g = build_graph<double>(3, std::vector<EdgeSpec<double>>{{1, 2, 0.5}, {2, 3, 0.25}, {1, 3, 1.0}});
  auto s = dijkstra(g, 1);
  EXPECT_DOUBLE_EQ(s.dist(2).value(), 0.75);
}

TEST(BellmanFordOracleTest, HandExamples) {
  auto one = build_graph<std::uint64_t>(1, Edges{});
  EXPECT_EQ(finite(bellman_ford_oracle(one, 1)), (std::vector<std::uint64_t>{0}));
  auto tri = build_graph<std::uint64_t>(3, Edges{{1, 2, 3}, {2, 3, 4}, {1, 3, 10}});
  EXPECT_EQ(finite(bellman_ford_oracle(tri, 1)), (std::vector<std::uint64_t>{0, 3, 7}));
}

TEST(DijkstraTest, OracleEquivalenceRandomized) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 256;
    auto g = testing::random_digraph(rng, n, rng() % (4 * n + 1), 0, 100);
    std::uint64_t source = 1 + rng() % n;
    ASSERT_EQ(dijkstra(g, source), bellman_ford_oracle(g, source)) << "trial " << trial;
  }
}

TEST(DijkstraTest, SettlingOrderIsNonDecreasing) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = testing::random_digraph(rng, 200, 800, 0, 50);
    std::vector<std::uint64_t> order;
    (void)dijkstra(g, 1, [&](VertexId, const Distance<std::uint64_t>& d) { order.push_back(d.value()); });
    EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
  }
}

TEST(DijkstraTest, IndependentOfAdjacencyOrder) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = testing::random_digraph(rng, 100, 400, 0, 30);
    auto edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    auto shuffled = build_graph<std::uint64_t>(g.vertex_count(), edges);
    EXPECT_EQ(dijkstra(g, 1), dijkstra(shuffled, 1));
  }
}

TEST(SelectionTest, MedianOfMediansMatchesSortedPosition) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t len = 1 + rng() % 300;
    std::vector<int> data(len);
    const int spread = trial % 3 == 0 ? 5 : 1000;  // many ties in a third of the trials
    for (auto& x : data) x = static_cast<int>(rng() % spread);
    auto sorted = data;
    std::sort(sorted.begin(), sorted.end());
    std::size_t k = rng() % len;
    MedianOfMediansSelect{}(data.begin(), data.begin() + k, data.end());
    ASSERT_EQ(data[k], sorted[k]);
    for (std::size_t i = 0; i < k; ++i) ASSERT_LE(data[i], data[k]);
    for (std::size_t i = k + 1; i < len; ++i) ASSERT_GE(data[i], data[k]);
    std::sort(data.begin(), data.end());
    ASSERT_EQ(data, sorted);
  }
}

TEST(SelectionTest, CustomComparator) {
  std::vector<int> v{5, 1, 4, 2, 3, 9, 7, 8, 6, 0, 11, 10};
  MedianOfMediansSelect{}(v.begin(), v.begin() + 2, v.end(), std::greater<>{});
  EXPECT_EQ(v[2], 9);
}

}  // namespace
}  // namespace bmssp
