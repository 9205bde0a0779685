#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace magnus {

// Arbitrary-precision integers and rationals used throughout the library.
// BigRat keeps gcd(num, den) = 1 and den >= 1 canonically.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<BigInt>;

inline BigInt rat_num(const BigRat& q) { return numerator(q); }
inline BigInt rat_den(const BigRat& q) { return denominator(q); }

}  // namespace magnus
