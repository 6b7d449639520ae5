#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <type_traits>

namespace ratlin {

using Rational = mpq_class;
using Complex = std::complex<double>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
inline bool is_zero(double x) { return x == 0.0; }

inline Complex to_complex(const Rational& x) { return Complex(x.get_d(), 0.0); }
inline Complex to_complex(const Complex& x) { return x; }

inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(const Complex& x) { return std::abs(x); }

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" exactly.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p/q" in lowest terms, or "p" when q == 1.
std::string format_rational(const Rational& x);

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_from_double(double x);

template <class T>
T scalar_from_rational(const Rational& x) {
  if constexpr (is_exact_v<T>) {
    return x;
  } else {
    return T(x.get_d());
  }
}

}  // namespace ratlin
