#pragma once

#include <algorithm>
#include <functional>
#include <iterator>
#include <utility>

namespace bmssp {

namespace detail {

template <class It, class Cmp>
void insertion_sort(It first, It last, Cmp& cmp) {
  if (first == last) return;
  for (It i = std::next(first); i != last; ++i) {
    auto value = std::move(*i);
    It j = i;
    while (j != first && cmp(value, *std::prev(j))) {
      *j = std::move(*std::prev(j));
      --j;
    }
    *j = std::move(value);
  }
}

template <class It, class Cmp>
void median_of_medians_select(It first, It nth, It last, Cmp& cmp) {
  constexpr std::ptrdiff_t kSmall = 10;
  while (last - first > kSmall) {
    // Median of each group of five, gathered at the front.
    const auto len = last - first;
    std::ptrdiff_t groups = 0;
    for (std::ptrdiff_t g = 0; g < len; g += 5) {
      It lo = first + g;
      It hi = first + std::min<std::ptrdiff_t>(g + 5, len);
      insertion_sort(lo, hi, cmp);
      std::iter_swap(first + groups, lo + (hi - lo - 1) / 2);
      ++groups;
    }
    It mid = first + (groups - 1) / 2;
    median_of_medians_select(first, mid, first + groups, cmp);
    auto pivot = *mid;

    // Three-way partition: [first, lt) < pivot, [lt, gt) == pivot, [gt, last) > pivot.
    It lt = first;
    It i = first;
    It gt = last;
    while (i != gt) {
      if (cmp(*i, pivot)) {
        std::iter_swap(lt++, i++);
      } else if (cmp(pivot, *i)) {
        std::iter_swap(i, --gt);
      } else {
        ++i;
      }
    }
    if (nth < lt) {
      last = lt;
    } else if (nth < gt) {
      return;
    } else {
      first = gt;
    }
  }
  insertion_sort(first, last, cmp);
}

}  // namespace detail

/// Worst-case linear selection (groups of five). Same postcondition as
/// std::nth_element: *nth is the element a full sort would put there, nothing
/// before it is greater and nothing after it is smaller.
struct MedianOfMediansSelect {
  template <class It, class Cmp = std::less<>>
  void operator()(It first, It nth, It last, Cmp cmp = {}) const {
    if (first == last || nth == last) return;
    detail::median_of_medians_select(first, nth, last, cmp);
  }
};

/// Introselect from the standard library: expected linear, much lower constant.
struct IntroSelect {
  template <class It, class Cmp = std::less<>>
  void operator()(It first, It nth, It last, Cmp cmp = {}) const {
    std::nth_element(first, nth, last, cmp);
  }
};

}  // namespace bmssp
