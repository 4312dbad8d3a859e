#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bmssp/selection.hpp"

namespace bmssp {

/// Operation counts, used to check amortized cost empirically.
struct QueueCounters {
  std::uint64_t inserts = 0;
  std::uint64_t prepended = 0;
  std::uint64_t pulls = 0;
  std::uint64_t block_splits = 0;
  std::uint64_t entries_scanned = 0;
};

/// Partial priority structure that hands out its smallest keys in batches of
/// (about) M, each batch paired with a bound separating it from what is left.
///
/// Keys carry one value each (the minimum offered since the key was last
/// pulled). Every stored value must be below the bound B fixed at creation.
/// Two block sequences hold the entries:
///  - the prepend region, a deque of unsorted blocks where batch_prepend puts
///    values smaller than anything stored;
///  - the insert region, unsorted blocks of at most M entries indexed by their
///    upper bounds in an ordered map, so insert locates its block in
///    O(log(N/M)) and splits it around the median when it overflows.
/// Within each region, every value of a block is <= every value of the next.
///
/// Superseded entries are not searched for and erased. Each live entry carries
/// the stamp recorded for its key in `live_`; anything else is stale and is
/// dropped the next time its block is scanned.
template <class Key, class Value, class Select = MedianOfMediansSelect, class Hash = std::hash<Key>>
class BoundedQueue {
 public:
  struct Item {
    Key key;
    Value value;
  };

  struct PullResult {
    Value bound;
    std::vector<Key> keys;
  };

  BoundedQueue(std::size_t batch_size, Value bound) : batch_size_(batch_size), bound_(bound) {
    if (batch_size == 0) throw std::invalid_argument("BoundedQueue batch size must be positive");
  }

  std::size_t batch_size() const noexcept { return batch_size_; }
  const Value& bound() const noexcept { return bound_; }
  bool empty() const noexcept { return live_.empty(); }
  std::size_t size() const noexcept { return live_.size(); }
  const QueueCounters& counters() const noexcept { return counters_; }

  void insert(const Key& key, const Value& value) {
    if (!(value < bound_)) throw std::invalid_argument("BoundedQueue::insert value not below the bound");
    ++counters_.inserts;
    auto stamp = claim(key, value);
    if (!stamp) return;

    auto it = insert_blocks_.lower_bound(value);
    if (it == insert_blocks_.end()) it = insert_blocks_.emplace(bound_, Block{}).first;
    it->second.push_back({key, value, *stamp});
    if (it->second.size() > batch_size_) split_insert_block(it);
  }

  /// Adds pairs whose values are all smaller than every stored value.
  /// Duplicated keys keep their smallest value. The ordering precondition is
  /// checked only when contract checks are compiled in.
  void batch_prepend(std::span<const Item> items) {
    if (items.empty()) return;
#ifndef NDEBUG
    check_prepend_precondition(items);
#endif
    counters_.prepended += items.size();
    Block fresh;
    fresh.reserve(items.size());
    for (const auto& item : items) {
      if (auto stamp = claim(item.key, item.value)) fresh.push_back({item.key, item.value, *stamp});
    }
    if (fresh.empty()) return;
    if (fresh.size() <= batch_size_) {
      prepend_blocks_.push_front(std::move(fresh));
      return;
    }
    // Median splits down to blocks of at most ceil(M/2), emitted in order.
    std::vector<Block> pieces;
    split_sorted_pieces(fresh.begin(), fresh.end(), std::max<std::size_t>(1, (batch_size_ + 1) / 2), pieces);
    for (auto p = pieces.rbegin(); p != pieces.rend(); ++p) prepend_blocks_.push_front(std::move(*p));
  }

  void batch_prepend(const std::vector<Item>& items) { batch_prepend(std::span<const Item>(items)); }

  /// Removes up to M smallest keys (more only when values tie at the cut) and
  /// returns them with a bound x, max(pulled) < x <= min(remaining), or B if
  /// nothing remains.
  PullResult pull() {
    ++counters_.pulls;
    PullResult result{bound_, {}};
    if (live_.empty()) {
      prepend_blocks_.clear();
      insert_blocks_.clear();
      return result;
    }

    candidates_.clear();
    std::size_t d0_taken = gather_prepend(0);
    auto d1_end = gather_insert();

    if (live_.size() <= batch_size_) {
      take_all_candidates(result);
      prepend_blocks_.clear();
      insert_blocks_.clear();
      return result;
    }

    auto by_value = [](const Entry& a, const Entry& b) { return a.value < b.value; };
    auto nth = candidates_.begin() + static_cast<std::ptrdiff_t>(batch_size_ - 1);
    Select{}(candidates_.begin(), nth, candidates_.end(), by_value);
    const Value cut = nth->value;

    std::optional<Value> remaining_min;
    auto note_remaining = [&](const Value& v) {
      if (!remaining_min || v < *remaining_min) remaining_min = v;
    };

    for (const auto& e : candidates_) {
      if (!(cut < e.value)) {
        result.keys.push_back(e.key);
        live_.erase(e.key);
      } else {
        note_remaining(e.value);
      }
    }

    // Later prepend blocks may still hold values equal to the cut; pull those
    // too so the bound stays strictly above everything returned.
    std::size_t d0_inspected = d0_taken;
    while (d0_inspected < prepend_blocks_.size()) {
      auto& block = prepend_blocks_[d0_inspected++];
      compact(block);
      bool beyond_cut = false;
      for (const auto& e : block) {
        if (!(cut < e.value) && !(e.value < cut)) {
          result.keys.push_back(e.key);
          live_.erase(e.key);
        } else {
          note_remaining(e.value);
          beyond_cut = true;
        }
      }
      if (beyond_cut) break;
    }
    // The first insert block past the gathered prefix holds that region's
    // smallest remaining values, all above the cut.
    auto d1_inspected = d1_end;
    while (d1_inspected != insert_blocks_.end()) {
      auto& block = (d1_inspected++)->second;
      compact(block);
      for (const auto& e : block) note_remaining(e.value);
      if (!block.empty()) break;
    }

    drop_empty_prefix(d0_inspected, d1_inspected);
    if (remaining_min) {
      result.bound = *remaining_min;
    } else {
      prepend_blocks_.clear();
      insert_blocks_.clear();
    }
    return result;
  }

 private:
  struct Entry {
    Key key;
    Value value;
    std::uint64_t stamp;
  };
  using Block = std::vector<Entry>;

  struct Slot {
    Value value;
    std::uint64_t stamp;
  };

  /// Records value as the key's current minimum. Returns the new stamp, or
  /// nothing when the key already holds a value <= this one.
  std::optional<std::uint64_t> claim(const Key& key, const Value& value) {
    auto [it, inserted] = live_.try_emplace(key, Slot{value, next_stamp_});
    if (!inserted) {
      if (!(value < it->second.value)) return std::nullopt;
      it->second = Slot{value, next_stamp_};
    }
    return next_stamp_++;
  }

  bool is_live(const Entry& e) const {
    auto it = live_.find(e.key);
    return it != live_.end() && it->second.stamp == e.stamp;
  }

  void compact(Block& block) {
    counters_.entries_scanned += block.size();
    std::erase_if(block, [this](const Entry& e) { return !is_live(e); });
  }

  /// Collects live entries from the front of the prepend region until at
  /// least M are gathered. Returns how many blocks were consumed.
  std::size_t gather_prepend(std::size_t start) {
    std::size_t gathered = 0;
    std::size_t b = start;
    for (; b < prepend_blocks_.size() && gathered < batch_size_; ++b) {
      auto& block = prepend_blocks_[b];
      compact(block);
      candidates_.insert(candidates_.end(), block.begin(), block.end());
      gathered += block.size();
    }
    return b;
  }

  typename std::map<Value, Block>::iterator gather_insert() {
    std::size_t gathered = 0;
    auto it = insert_blocks_.begin();
    for (; it != insert_blocks_.end() && gathered < batch_size_; ++it) {
      compact(it->second);
      candidates_.insert(candidates_.end(), it->second.begin(), it->second.end());
      gathered += it->second.size();
    }
    return it;
  }

  void take_all_candidates(PullResult& result) {
    result.keys.reserve(candidates_.size());
    for (const auto& e : candidates_) result.keys.push_back(e.key);
    live_.clear();
  }

  /// Re-compacts the blocks a pull touched and drops the ones left empty.
  void drop_empty_prefix(std::size_t d0_count, typename std::map<Value, Block>::iterator d1_end) {
    auto d0_last = prepend_blocks_.begin() + static_cast<std::ptrdiff_t>(d0_count);
    auto kept = std::remove_if(prepend_blocks_.begin(), d0_last, [this](Block& block) {
      compact(block);
      return block.empty();
    });
    prepend_blocks_.erase(kept, d0_last);
    for (auto it = insert_blocks_.begin(); it != d1_end;) {
      compact(it->second);
      it = it->second.empty() ? insert_blocks_.erase(it) : std::next(it);
    }
  }

  void split_insert_block(typename std::map<Value, Block>::iterator it) {
    Block& block = it->second;
    compact(block);
    if (block.size() <= batch_size_) return;
    ++counters_.block_splits;

    auto by_value = [](const Entry& a, const Entry& b) { return a.value < b.value; };
    auto mid = block.begin() + static_cast<std::ptrdiff_t>((block.size() - 1) / 2);
    Select{}(block.begin(), mid, block.end(), by_value);
    Value pivot = mid->value;
    // Lower part must be strictly below the upper part so block upper bounds
    // stay distinct map keys.
    auto upper_begin = std::partition(block.begin(), block.end(), [&](const Entry& e) { return !(pivot < e.value); });
    if (upper_begin == block.end()) {
      upper_begin = std::partition(block.begin(), block.end(), [&](const Entry& e) { return e.value < pivot; });
      if (upper_begin == block.begin()) return;  // every value ties; cannot split
      pivot = std::max_element(block.begin(), upper_begin, by_value)->value;
    }
    Block lower(block.begin(), upper_begin);
    block.erase(block.begin(), upper_begin);
    insert_blocks_.emplace(pivot, std::move(lower));
  }

  template <class It>
  void split_sorted_pieces(It first, It last, std::size_t max_piece, std::vector<Block>& out) {
    const auto len = static_cast<std::size_t>(last - first);
    if (len <= max_piece) {
      out.emplace_back(first, last);
      return;
    }
    ++counters_.block_splits;
    auto by_value = [](const Entry& a, const Entry& b) { return a.value < b.value; };
    It mid = first + static_cast<std::ptrdiff_t>(len / 2);
    Select{}(first, mid, last, by_value);
    split_sorted_pieces(first, mid, max_piece, out);
    split_sorted_pieces(mid, last, max_piece, out);
  }

#ifndef NDEBUG
  void check_prepend_precondition(std::span<const Item> items) {
    std::optional<Value> stored_min;
    auto visit = [&](Block& block) {
      compact(block);
      for (const auto& e : block) {
        if (!stored_min || e.value < *stored_min) stored_min = e.value;
      }
    };
    for (auto& block : prepend_blocks_) visit(block);
    for (auto& [upper, block] : insert_blocks_) visit(block);
    for (const auto& item : items) {
      if (!(item.value < bound_) || (stored_min && !(item.value < *stored_min))) {
        throw std::logic_error("BoundedQueue::batch_prepend value not below every stored value");
      }
    }
  }
#endif

  std::size_t batch_size_;
  Value bound_;
  std::unordered_map<Key, Slot, Hash> live_;
  std::deque<Block> prepend_blocks_;
  std::map<Value, Block> insert_blocks_;
  std::vector<Entry> candidates_;
  std::uint64_t next_stamp_ = 0;
  QueueCounters counters_;
};

}  // namespace bmssp
