#pragma once

#include <compare>
#include <string>

#include "torusnielsen/integer.hpp"

namespace tn {

/// A natural number or infinity. Infinity absorbs addition.
class ExtNat {
 public:
  ExtNat() = default;
  ExtNat(const Int& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtNat(long v) : value_(v) {}        // NOLINT(google-explicit-constructor)

  static ExtNat infinity() {
    ExtNat e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Finite value; only meaningful when is_finite().
  const Int& value() const { return value_; }

  /// Infinity replaced by zero.
  Int finite_or_zero() const { return infinite_ ? Int(0) : value_; }

  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtNat(a.value_ + b.value_);
  }
  ExtNat& operator+=(const ExtNat& o) { return *this = *this + o; }

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "inf" or the decimal value.
  std::string to_string() const { return infinite_ ? "inf" : value_.get_str(); }

 private:
  Int value_ = 0;
  bool infinite_ = false;
};

}  // namespace tn
