#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "afr/error.hpp"

namespace afr {

/// Exact rational arithmetic for weight inner products, quadratic forms and
/// simple-current charges. Arbitrary precision so no path through the weight
/// combinatorics ever touches floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long long num, long long den) {
  if (den == 0) throw InternalError("rational with zero denominator");
  return Rational(num, den);
}

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline long long to_int64(const Rational& q) {
  if (denominator(q) != 1) throw InternalError("rational is not an integer: " + q.str());
  return numerator(q).template convert_to<long long>();
}

inline long long to_int64(const BigInt& n) { return n.template convert_to<long long>(); }

/// Reduce into [0, 1).
inline Rational mod1(const Rational& q) {
  BigInt num = numerator(q), den = denominator(q);
  BigInt m = num % den;
  if (m < 0) m += den;
  return Rational(m, den);
}

inline bool congruent_mod1(const Rational& a, const Rational& b) {
  return mod1(a - b) == 0;
}

/// Snap a floating-point phase to the nearest multiple of 1/grid, returned
/// reduced mod 1. Fails (nullopt) when the residual exceeds tol.
inline std::optional<Rational> snap_to_grid(double x, long long grid, double tol) {
  if (grid <= 0) throw InternalError("snap_to_grid: nonpositive grid");
  double scaled = x * static_cast<double>(grid);
  double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) > tol * static_cast<double>(grid)) return std::nullopt;
  return mod1(Rational(static_cast<long long>(nearest), grid));
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace afr
