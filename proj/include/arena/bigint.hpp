#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

namespace arena {

// Exact arithmetic everywhere: 2^{C_e} exceeds 64 bits once an edge
// carries 64 players, and equilibrium detection must not round.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(std::uint64_t exponent) {
  BigInt result = 1;
  result <<= exponent;
  return result;
}

// floor(log2 x) for x >= 1.
inline std::uint64_t floor_log2(const BigInt& x) {
  return static_cast<std::uint64_t>(boost::multiprecision::msb(x));
}

// ceil(log2 x) for x >= 1.
inline std::uint64_t ceil_log2(const BigInt& x) {
  std::uint64_t f = floor_log2(x);
  return (pow2(f) == x) ? f : f + 1;
}

// log2 as a double, for reporting only; comparisons stay on the integer.
inline double log2_value(const BigInt& x) {
  std::uint64_t f = floor_log2(x);
  BigInt rem = x - pow2(f);
  // x = 2^f * (1 + rem/2^f); rem/2^f < 1 so the double conversion is safe.
  double frac = rem.convert_to<double>() / std::ldexp(1.0, static_cast<int>(f));
  return static_cast<double>(f) + std::log2(1.0 + frac);
}

}  // namespace arena
