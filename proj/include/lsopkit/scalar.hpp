#pragma once

// Scalar backends: IEEE double and exact rationals (GMP).

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace lsopkit {

using Rational = mpq_class;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "double";
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline double magnitude(double x) { return std::fabs(x); }
inline Rational magnitude(const Rational& x) { return abs(x); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// num/den in lowest terms; mpq_class(num, den) alone is not canonical.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Exact conversion; every finite double is a dyadic rational.
inline Rational exact_rational(double x) { return Rational(x); }

template <class T>
T scalar_from(double x);
template <>
inline double scalar_from<double>(double x) { return x; }
template <>
inline Rational scalar_from<Rational>(double x) { return Rational(x); }

template <class T>
T scalar_from(const Rational& x);
template <>
inline double scalar_from<double>(const Rational& x) { return x.get_d(); }
template <>
inline Rational scalar_from<Rational>(const Rational& x) { return x; }

/// Parses "p/q", integers, and decimals with optional exponent exactly.
Rational parse_rational(std::string_view text);

std::string format_rational(const Rational& x);

/// Shortest round-trip decimal text for a double.
std::string format_double(double x);

inline std::string format_scalar(double x) { return format_double(x); }
inline std::string format_scalar(const Rational& x) { return format_rational(x); }

}  // namespace lsopkit
