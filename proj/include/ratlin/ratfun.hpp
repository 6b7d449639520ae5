#pragma once

#include <string>
#include <utility>

#include "ratlin/poly.hpp"

namespace ratlin {

/// Rational function num/den. In the exact kind the pair is always reduced:
/// gcd(num, den) = 1 and den is monic. The float kind only normalizes den to
/// be monic; no cancellation is attempted.
template <class T>
class RatFun {
 public:
  using scalar_type = T;

  RatFun() : den_(Poly<T>::one()) {}
  RatFun(Poly<T> p) : num_(std::move(p)), den_(Poly<T>::one()) {}  // NOLINT(google-explicit-constructor)
  RatFun(Poly<T> num, Poly<T> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFun constant(const T& v) { return RatFun(Poly<T>::constant(v)); }
  static RatFun one() { return RatFun(Poly<T>::one()); }

  const Poly<T>& num() const { return num_; }
  const Poly<T>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// deg(num) - deg(den); nullopt for the zero function.
  Degree degree() const {
    if (num_.is_zero()) return std::nullopt;
    return *num_.degree() - *den_.degree();
  }

  /// Value at x; NotDefinedAt if the (reduced) denominator vanishes there.
  template <class U = T>
  U eval(const U& x) const {
    const U d = den_.template eval<U>(x);
    if (ratlin::is_zero(d)) throw Error(ErrorCode::NotDefinedAt, "rational function has a pole at the evaluation point");
    return num_.template eval<U>(x) / d;
  }
  T operator()(const T& x) const { return eval<T>(x); }

  /// x^g r(1/x), reduced.
  RatFun reversed(int g) const {
    if (num_.is_zero()) return RatFun();
    const int dn = *num_.degree();
    const int dd = *den_.degree();
    Poly<T> rn = num_.reversed_exact(dn);
    Poly<T> rd = den_.reversed_exact(dd);
    const int shift = g - dn + dd;
    if (shift >= 0) {
      rn = rn * Poly<T>::monomial(T(1), shift);
    } else {
      rd = rd * Poly<T>::monomial(T(1), -shift);
    }
    return RatFun(std::move(rn), std::move(rd));
  }

  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.is_polynomial() && b.is_polynomial()) {
      return RatFun(a.num_ * b.num_ * (T(1) / (a.den_.lead() * b.den_.lead())));
    }
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by the zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    if constexpr (is_exact_v<T>) {
      return a.num_ == b.num_ && a.den_ == b.den_;
    } else {
      return a.num_ * b.den_ == b.num_ * a.den_;
    }
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  template <class U>
  RatFun<U> cast() const {
    return RatFun<U>(num_.template cast<U>(), den_.template cast<U>());
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<T>::one();
      return;
    }
    if constexpr (is_exact_v<T>) {
      if (!den_.is_constant()) {
        Poly<T> g = gcd(num_, den_);
        if (!g.is_constant()) {
          num_ = exact_div(num_, g);
          den_ = exact_div(den_, g);
        }
      }
    }
    const T inv = T(1) / den_.lead();
    num_ *= inv;
    den_ *= inv;
  }

  Poly<T> num_;
  Poly<T> den_;
};

/// (num, den) -> reduced rational function; ZeroDenominator when den == 0.
template <class T>
RatFun<T> ratfun_reduce(const Poly<T>& num, const Poly<T>& den) {
  return RatFun<T>(num, den);
}

template <class T>
Degree ratfun_degree(const RatFun<T>& r) {
  return r.degree();
}

/// x^g p(1/x) as a reduced rational function (polynomial when g >= deg p).
template <class T>
RatFun<T> reverse(const Poly<T>& p, int g) {
  return RatFun<T>(p).reversed(g);
}

template <class T>
T poly_eval(const Poly<T>& p, const T& x) {
  return p(x);
}

std::string to_string(const RatFun<Rational>& r, const std::string& var = "x");

inline std::ostream& operator<<(std::ostream& os, const RatFun<Rational>& r) { return os << to_string(r); }

}  // namespace ratlin
