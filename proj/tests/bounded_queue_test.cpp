#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "bmssp/bounded_queue.hpp"
#include "bmssp/weight.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace bmssp {
namespace {

using V = Distance<std::uint64_t>;
using Queue = BoundedQueue<int, V>;
using Item = Queue::Item;
constexpr int a = 0, b = 1, c = 2;

V v(std::uint64_t x) { return V(x); }
std::set<int> as_set(const std::vector<int>& keys) { return {keys.begin(), keys.end()}; }

TEST(BoundedQueueTest, EmptyPullReturnsBound) {
  Queue q(2, V::infinity());
  EXPECT_TRUE(q.empty());
  auto r = q.pull();
  EXPECT_TRUE(r.bound.is_infinite());
  EXPECT_TRUE(r.keys.empty());
}

TEST(BoundedQueueTest, RejectsZeroBatch) { EXPECT_THROW(Queue(0, V::infinity()), std::invalid_argument); }

TEST(BoundedQueueTest, InsertAtBoundRejected) {
  Queue q(1, v(100));
  EXPECT_THROW(q.insert(a, v(100)), std::invalid_argument);
  EXPECT_THROW(q.insert(a, v(150)), std::invalid_argument);
  EXPECT_TRUE(q.empty());
}

TEST(BoundedQueueTest, FewerThanBatchReturnsAllWithBound) {
  Queue q(4, v(10));
  q.insert(a, v(3));
  EXPECT_FALSE(q.empty());
  auto r = q.pull();
  EXPECT_EQ(r.bound, v(10));
  EXPECT_EQ(as_set(r.keys), std::set<int>{a});
  EXPECT_TRUE(q.empty());
}

TEST(BoundedQueueTest, InsertKeepsMinimumEitherOrder) {
  for (bool decreasing : {true, false}) {
    Queue q(1, V::infinity());
    if (decreasing) {
      q.insert(a, v(5));
      q.insert(a, v(2));
    } else {
      q.insert(a, v(2));
      q.insert(a, v(5));
    }
    q.insert(b, v(3));
    EXPECT_EQ(q.size(), 2u);
    auto first = q.pull();
    EXPECT_EQ(first.keys, std::vector<int>{a});
    EXPECT_EQ(first.bound, v(3));
    auto second = q.pull();
    EXPECT_EQ(second.keys, std::vector<int>{b});
    EXPECT_TRUE(second.bound.is_infinite());
  }
}

TEST(BoundedQueueTest, BatchPrependGoesFirst) {
  Queue q(2, V::infinity());
  q.insert(c, v(10));
  q.batch_prepend(std::vector<Item>{{a, v(1)}, {b, v(2)}});
  auto r = q.pull();
  EXPECT_EQ(as_set(r.keys), (std::set<int>{a, b}));
  EXPECT_GT(r.bound, v(2));
  EXPECT_LE(r.bound, v(10));
}

TEST(BoundedQueueTest, EmptyBatchPrependIsNoOp) {
  Queue q(2, V::infinity());
  q.batch_prepend(std::vector<Item>{});
  EXPECT_TRUE(q.empty());
}

TEST(BoundedQueueTest, BatchPrependDuplicatesKeepMinimum) {
  Queue q(1, V::infinity());
  q.batch_prepend(std::vector<Item>{{a, v(1)}, {a, v(0)}});
  EXPECT_EQ(q.size(), 1u);
  q.insert(b, v(1));  // a must still come out first: its effective value is 0
  auto r = q.pull();
  EXPECT_EQ(r.keys, std::vector<int>{a});
  EXPECT_EQ(r.bound, v(1));
}

TEST(BoundedQueueTest, PullSeparatesBatch) {
  Queue q(2, V::infinity());
  q.insert(a, v(1));
  q.insert(b, v(2));
  q.insert(c, v(3));
  auto r = q.pull();
  EXPECT_EQ(as_set(r.keys), (std::set<int>{a, b}));
  EXPECT_GT(r.bound, v(2));
  EXPECT_LE(r.bound, v(3));
}

TEST(BoundedQueueTest, SingleKeyDrainsToBound) {
  Queue q(2, V::infinity());
  q.insert(a, v(1));
  auto r = q.pull();
  EXPECT_EQ(r.keys, std::vector<int>{a});
  EXPECT_TRUE(r.bound.is_infinite());
}

TEST(BoundedQueueTest, TiesAtTheCutArePulledTogether) {
  Queue q(2, v(100));
  q.insert(a, v(1));
  q.insert(b, v(5));
  q.insert(c, v(5));
  q.insert(3, v(7));
  auto r = q.pull();
  EXPECT_EQ(as_set(r.keys), (std::set<int>{a, b, c}));
  EXPECT_EQ(r.bound, v(7));
}

TEST(BoundedQueueTest, KeyCanReturnAfterPull) {
  Queue q(1, V::infinity());
  q.insert(a, v(4));
  q.insert(a, v(2));  // leaves a stale copy at 4
  EXPECT_EQ(q.pull().keys, std::vector<int>{a});
  q.insert(a, v(4));  // same value as the stale copy
  q.insert(b, v(9));
  auto r = q.pull();
  EXPECT_EQ(r.keys, std::vector<int>{a});
  EXPECT_EQ(r.bound, v(9));
  EXPECT_EQ(q.pull().keys, std::vector<int>{b});
  EXPECT_TRUE(q.empty());
}

TEST(BoundedQueueTest, DrainEmptiesAfterManyInserts) {
  std::mt19937_64 rng(1);
  Queue q(16, V::infinity());
  for (int k = 0; k < 500; ++k) q.insert(k, v(rng() % 1000));
  std::set<int> seen;
  while (true) {
    auto r = q.pull();
    for (int k : r.keys) EXPECT_TRUE(seen.insert(k).second);
    if (r.bound.is_infinite()) break;
  }
  EXPECT_EQ(seen.size(), 500u);
  EXPECT_TRUE(q.empty());
}

/// Random mix of operations compared step by step with the reference.
void run_oracle_sequence(std::mt19937_64& rng, std::size_t batch, int ops, bool with_ties) {
  const std::uint64_t bound = 1'000'000;
  Queue q(batch, v(bound));
  testing::QueueOracle<int, V> ref(batch, v(bound));
  const int key_space = 1 + static_cast<int>(rng() % 600);
  const std::uint64_t value_space = with_ties ? 40 : bound;
  std::optional<V> last_bound;

  for (int op = 0; op < ops; ++op) {
    const auto roll = rng() % 10;
    if (roll < 5) {
      int key = static_cast<int>(rng() % key_space);
      V value = v((rng() % value_space) * (bound / value_space));
      q.insert(key, value);
      ref.insert(key, value);
      last_bound.reset();
    } else if (roll < 7) {
      auto floor = ref.min_value().value_or(v(bound));
      if (floor.value() == 0) continue;
      std::vector<Item> items;
      const auto count = rng() % (3 * batch + 2);
      for (std::uint64_t i = 0; i < count; ++i) {
        items.push_back({static_cast<int>(rng() % key_space), v(rng() % floor.value())});
      }
      q.batch_prepend(items);
      for (const auto& it : items) ref.insert(it.key, it.value);
      last_bound.reset();
    } else {
      auto before = ref.contents();
      auto got = q.pull();
      auto want = ref.pull();
      ASSERT_EQ(as_set(got.keys), as_set(want.second)) << "op " << op;
      ASSERT_EQ(got.keys.size(), want.second.size());
      ASSERT_EQ(got.bound, want.first);
      for (int k : got.keys) ASSERT_LT(before.at(k), got.bound);
      for (const auto& [k, val] : ref.contents()) ASSERT_LE(got.bound, val);
      if (last_bound) { ASSERT_LE(*last_bound, got.bound); }
      last_bound = got.bound;
    }
    ASSERT_EQ(q.size(), ref.size());
    ASSERT_EQ(q.empty(), ref.empty());
  }
}

TEST(BoundedQueueTest, OracleEquivalenceDistinctValues) {
  std::mt19937_64 rng(77);
  for (std::size_t batch : {1u, 2u, 4u, 16u, 256u}) {
    for (int seq = 0; seq < 60; ++seq) run_oracle_sequence(rng, batch, 400, false);
  }
}

TEST(BoundedQueueTest, OracleEquivalenceHeavyTies) {
  std::mt19937_64 rng(78);
  for (std::size_t batch : {1u, 2u, 4u, 16u, 256u}) {
    for (int seq = 0; seq < 60; ++seq) run_oracle_sequence(rng, batch, 400, true);
  }
}

TEST(BoundedQueueTest, IntroSelectVariantBehavesTheSame) {
  std::mt19937_64 rng(5);
  BoundedQueue<int, V, IntroSelect> fast(4, V::infinity());
  Queue deterministic(4, V::infinity());
  for (int k = 0; k < 300; ++k) {
    auto value = v(rng() % 100000);
    fast.insert(k, value);
    deterministic.insert(k, value);
  }
  while (!deterministic.empty()) {
    auto x = fast.pull();
    auto y = deterministic.pull();
    EXPECT_EQ(as_set(x.keys), as_set(y.keys));
    EXPECT_EQ(x.bound, y.bound);
  }
}

TEST(BoundedQueueTest, AmortizedScanCostStaysLogarithmic) {
  std::mt19937_64 rng(9);
  for (std::size_t batch : {4u, 64u}) {
    const int n = 1 << 15;
    Queue q(batch, V::infinity());
    for (int k = 0; k < n; ++k) q.insert(k, v(rng()));
    while (!q.empty()) (void)q.pull();
    const double per_key = static_cast<double>(q.counters().entries_scanned) / n;
    const double log_term = std::max(1.0, std::log2(static_cast<double>(n) / batch));
    EXPECT_LT(per_key, 4.0 * log_term) << "batch " << batch;
  }
}

}  // namespace
}  // namespace bmssp
