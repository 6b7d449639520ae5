#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "ratlin/error.hpp"
#include "ratlin/scalar.hpp"

namespace ratlin {

/// Degree of a polynomial or rational function. The zero polynomial has no
/// degree: it is represented by std::nullopt, never by a negative integer.
using Degree = std::optional<int>;

/// Dense univariate polynomial, lowest degree first. The coefficient vector
/// never carries trailing zeros, so the zero polynomial is the empty vector.
template <class T>
class Poly {
 public:
  using scalar_type = T;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly one() { return constant(T(1)); }
  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
  /// c0 + c1*x
  static Poly linear(const T& c0, const T& c1) { return Poly(std::vector<T>{c0, c1}); }
  /// x - a
  static Poly root_factor(const T& a) { return linear(T(-a), T(1)); }
  static Poly monomial(const T& c, int k) {
    std::vector<T> v(static_cast<std::size_t>(k) + 1, T(0));
    v.back() = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Degree degree() const {
    if (c_.empty()) return std::nullopt;
    return static_cast<int>(c_.size()) - 1;
  }
  /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& lead() const { return c_.back(); }

  /// Horner evaluation; U may be a wider scalar (e.g. complex for a rational
  /// polynomial).
  template <class U = T>
  U eval(const U& x) const {
    U acc = U(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * x + convert<U>(*it);
    }
    return acc;
  }
  T operator()(const T& x) const { return eval<T>(x); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& s) {
    if (ratlin::is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ratlin::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly r = one();
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    const T inv = T(1) / lead();
    for (auto& v : r.c_) v *= inv;
    return r;
  }

  /// x^g p(1/x) for g >= deg(p); the general case lives in RatFun.
  Poly reversed_exact(int g) const {
    if (is_zero()) return Poly();
    const int d = static_cast<int>(c_.size()) - 1;
    if (g < d) throw Error(ErrorCode::InvalidArgument, "reversal grade below polynomial degree");
    std::vector<T> r(static_cast<std::size_t>(g) + 1, T(0));
    for (int k = 0; k <= d; ++k) r[static_cast<std::size_t>(g - k)] = c_[static_cast<std::size_t>(k)];
    return Poly(std::move(r));
  }

  /// Lowest index with a nonzero coefficient (0 for the zero polynomial).
  std::size_t low_order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!ratlin::is_zero(c_[i])) return i;
    return 0;
  }

  /// Drops the factor x^s (s must not exceed low_order()).
  Poly shift_down(std::size_t s) const {
    if (s >= c_.size()) return Poly();
    return Poly(std::vector<T>(c_.begin() + static_cast<std::ptrdiff_t>(s), c_.end()));
  }

  template <class U>
  Poly<U> cast() const {
    std::vector<U> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(convert<U>(x));
    return Poly<U>(std::move(v));
  }

 private:
  template <class U, class V>
  static U convert(const V& v) {
    if constexpr (std::is_same_v<U, V>) {
      return v;
    } else if constexpr (std::is_same_v<V, Rational>) {
      return U(v.get_d());
    } else {
      return U(v);
    }
  }

  void trim() {
    while (!c_.empty() && ratlin::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  if (a.size() < b.size()) return {Poly<T>(), a};
  std::vector<T> r = a.coeffs();
  const std::size_t nb = b.size();
  std::vector<T> q(r.size() - nb + 1, T(0));
  const T inv_lead = T(1) / b.lead();
  for (std::size_t k = q.size(); k-- > 0;) {
    const T f = r[k + nb - 1] * inv_lead;
    q[k] = f;
    if (is_zero(f)) continue;
    for (std::size_t j = 0; j < nb; ++j) r[k + j] -= f * b.coeffs()[j];
    r[k + nb - 1] = T(0);
  }
  r.resize(nb - 1);
  return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

/// Division that must be exact; throws InvalidArgument otherwise.
template <class T>
Poly<T> exact_div(const Poly<T>& a, const Poly<T>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division is not exact");
  return q;
}

template <class T>
bool divides(const Poly<T>& d, const Poly<T>& a) {
  return divmod(a, d).second.is_zero();
}

/// Monic greatest common divisor over Q, computed with the subresultant
/// polynomial remainder sequence on integer primitive parts. gcd(0, 0) = 0.
Poly<Rational> gcd(const Poly<Rational>& a, const Poly<Rational>& b);

Poly<Rational> lcm(const Poly<Rational>& a, const Poly<Rational>& b);

/// Multiplicity of the squarefree factor `f` in `p` (p != 0), found by
/// repeated exact division.
int multiplicity(const Poly<Rational>& p, const Poly<Rational>& f);

/// Squarefree part p / gcd(p, p'), monic.
Poly<Rational> squarefree_part(const Poly<Rational>& p);

/// Human-readable form like "3*x^2 - x + 1/2".
std::string to_string(const Poly<Rational>& p, const std::string& var = "x");

inline std::ostream& operator<<(std::ostream& os, const Poly<Rational>& p) { return os << to_string(p); }

}  // namespace ratlin
