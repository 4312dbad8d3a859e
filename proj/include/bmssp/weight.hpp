#pragma once

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <type_traits>

namespace bmssp {

/// Edge weights must be totally ordered and closed under addition. Integers
/// and floating point types both qualify; the integer instantiation is exact.
template <class W>
concept WeightType = std::is_arithmetic_v<W> && !std::same_as<W, bool>;

template <WeightType W>
struct WeightTraits {
  /// Reserved representation of "unreached". Never a valid path length.
  static constexpr W sentinel() noexcept {
    if constexpr (std::numeric_limits<W>::has_infinity) {
      return std::numeric_limits<W>::infinity();
    } else {
      return std::numeric_limits<W>::max();
    }
  }

  static constexpr bool is_valid_edge_weight(W w) noexcept {
    if constexpr (std::is_floating_point_v<W>) {
      return std::isfinite(w) && w >= W{0};
    } else if constexpr (std::is_signed_v<W>) {
      return w >= W{0} && w != sentinel();
    } else {
      return w != sentinel();
    }
  }
};

/// A path length that may be infinite. Infinity is its own state of the type,
/// so callers never compare against a magic number.
template <WeightType W>
class Distance {
 public:
  using value_type = W;

  constexpr Distance() noexcept : raw_(WeightTraits<W>::sentinel()) {}
  constexpr explicit Distance(W value) : raw_(value) {
    if (value == WeightTraits<W>::sentinel()) {
      throw std::overflow_error("distance value collides with the infinity sentinel");
    }
  }

  static constexpr Distance infinity() noexcept { return Distance{}; }

  constexpr bool is_finite() const noexcept { return raw_ != WeightTraits<W>::sentinel(); }
  constexpr bool is_infinite() const noexcept { return !is_finite(); }

  /// Precondition: is_finite().
  constexpr W value() const noexcept { return raw_; }

  /// Path extension. Infinity absorbs; finite sums never reach the sentinel
  /// for well-formed inputs (see Graph::max_path_length).
  constexpr Distance operator+(W w) const noexcept {
    if (!is_finite()) return *this;
    Distance d;
    d.raw_ = static_cast<W>(raw_ + w);
    return d;
  }

  // The sentinel is the largest representable value, so raw ordering already
  // places infinity above every finite distance.
  friend constexpr auto operator<=>(const Distance& a, const Distance& b) noexcept {
    if constexpr (std::is_floating_point_v<W>) {
      return std::weak_order(a.raw_, b.raw_);
    } else {
      return a.raw_ <=> b.raw_;
    }
  }
  friend constexpr bool operator==(const Distance& a, const Distance& b) noexcept {
    return a.raw_ == b.raw_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
    if (d.is_finite()) return os << d.raw_;
    return os << "inf";
  }

 private:
  W raw_;
};

}  // namespace bmssp
