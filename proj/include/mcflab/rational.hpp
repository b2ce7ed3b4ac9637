#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace mcflab {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "[-]digits" or "[-]digits/digits" with a nonzero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Nonnegative edge capacity, possibly unbounded. An unbounded capacity is a
/// distinct state, never a large sentinel.
class Capacity {
 public:
  Capacity() = default;
  Capacity(Rational value) : value_(std::move(value)) {}  // NOLINT: implicit by intent
  Capacity(long value) : value_(value) {}                 // NOLINT

  static Capacity unbounded() {
    Capacity c;
    c.unbounded_ = true;
    return c;
  }

  bool is_unbounded() const { return unbounded_; }
  bool is_finite() const { return !unbounded_; }

  /// Finite value; calling this on an unbounded capacity is a logic error.
  const Rational& value() const;

  bool is_zero() const { return !unbounded_ && value_ == 0; }

  /// Remaining headroom after `used` units; unbounded stays unbounded.
  Capacity minus(const Rational& used) const;

  friend bool operator==(const Capacity& a, const Capacity& b) {
    return a.unbounded_ == b.unbounded_ && (a.unbounded_ || a.value_ == b.value_);
  }
  friend bool operator<(const Capacity& a, const Capacity& b) {
    if (a.unbounded_) return false;
    if (b.unbounded_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Capacity& a, const Capacity& b) { return !(b < a); }
  friend bool operator>(const Capacity& a, const Capacity& b) { return b < a; }

  /// True when `flow` lies in [0, capacity].
  bool admits(const Rational& flow) const {
    return flow >= 0 && (unbounded_ || flow <= value_);
  }

 private:
  Rational value_{0};
  bool unbounded_ = false;
};

std::string to_string(const Capacity& c);  // "inf" when unbounded

}  // namespace mcflab
