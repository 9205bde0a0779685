#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "magnus/rational.hpp"

namespace magnus {

// int64 arithmetic that throws std::overflow_error instead of wrapping.
// Lattice routines run on this first and redo the work on BigInt only when a
// computation actually overflows; inputs in this project almost never do.
struct CheckedI64 {
  std::int64_t v = 0;

  CheckedI64() = default;
  CheckedI64(int x) : v(x) {}
  CheckedI64(std::int64_t x) : v(x) {}

  friend CheckedI64 operator+(CheckedI64 a, CheckedI64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw std::overflow_error("i64 +");
    return CheckedI64(r);
  }
  friend CheckedI64 operator-(CheckedI64 a, CheckedI64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw std::overflow_error("i64 -");
    return CheckedI64(r);
  }
  friend CheckedI64 operator*(CheckedI64 a, CheckedI64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw std::overflow_error("i64 *");
    return CheckedI64(r);
  }
  friend CheckedI64 operator/(CheckedI64 a, CheckedI64 b) {
    if (b.v == 0) throw std::domain_error("i64 division by zero");
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1)
      throw std::overflow_error("i64 /");
    return CheckedI64(a.v / b.v);
  }
  friend CheckedI64 operator%(CheckedI64 a, CheckedI64 b) {
    if (b.v == 0) throw std::domain_error("i64 modulo by zero");
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1)
      return CheckedI64(0);
    return CheckedI64(a.v % b.v);
  }
  CheckedI64 operator-() const { return CheckedI64(0) - *this; }

  friend bool operator==(CheckedI64 a, CheckedI64 b) { return a.v == b.v; }
  friend bool operator!=(CheckedI64 a, CheckedI64 b) { return a.v != b.v; }
  friend bool operator<(CheckedI64 a, CheckedI64 b) { return a.v < b.v; }
  friend bool operator>(CheckedI64 a, CheckedI64 b) { return a.v > b.v; }
  friend bool operator<=(CheckedI64 a, CheckedI64 b) { return a.v <= b.v; }
  friend bool operator>=(CheckedI64 a, CheckedI64 b) { return a.v >= b.v; }
};

inline bool fits_i64(const BigInt& x) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  return x >= lo && x <= hi;
}

inline CheckedI64 to_i64(const BigInt& x) {
  if (!fits_i64(x)) throw std::overflow_error("value exceeds int64");
  return CheckedI64(x.convert_to<std::int64_t>());
}

inline BigInt to_big(CheckedI64 x) { return BigInt(x.v); }
inline const BigInt& to_big(const BigInt& x) { return x; }

}  // namespace magnus
