#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "ratlin/io.hpp"

namespace oracle {

using ratlin::Complex;
using ratlin::Poly;
using ratlin::QMatrix;
using ratlin::QPolyMatrix;
using ratlin::QRatMatrix;
using ratlin::RatFun;
using ratlin::Rational;

inline Rational q(const std::string& s) { return ratlin::parse_rational(s); }
inline RatFun<Rational> rf(const std::string& s) { return ratlin::parse_ratfun(s); }
inline Poly<Rational> poly(const std::string& s) {
  const auto r = rf(s);
  return r.num() * (Rational(1) / r.den().lead());
}
inline QPolyMatrix pmat(const std::vector<std::vector<std::string>>& rows) { return ratlin::parse_poly_matrix(rows); }
inline QRatMatrix rmat(const std::vector<std::vector<std::string>>& rows) { return ratlin::parse_rat_matrix(rows); }

/// Product of (x - r) over the listed roots.
inline Poly<Rational> from_roots(const std::vector<Rational>& roots, const Rational& scale = 1) {
  Poly<Rational> p = Poly<Rational>::constant(scale);
  for (const auto& r : roots) p = p * Poly<Rational>::root_factor(r);
  return p;
}

/// Determinant by the Leibniz permutation expansion.
template <class E>
E leibniz_det(const ratlin::Matrix<E>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  E total = ratlin::RingTraits<E>::zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    E term = ratlin::RingTraits<E>::one();
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    if (inversions % 2)
      total = total - term;
    else
      total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Rank as the size of the largest nonsingular minor (Leibniz minors).
template <class E>
std::size_t minor_rank(const ratlin::Matrix<E>& m) {
  const std::size_t r = m.rows(), c = m.cols();
  for (std::size_t k = std::min(r, c); k > 0; --k) {
    std::vector<bool> rs(r, false), cs(c, false);
    std::fill(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        ratlin::Matrix<E> sub(k, k);
        std::size_t ii = 0;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rs[i]) continue;
          std::size_t jj = 0;
          for (std::size_t j = 0; j < c; ++j)
            if (cs[j]) sub(ii, jj++) = m(i, j);
          ++ii;
        }
        if (!ratlin::RingTraits<E>::is_zero(leibniz_det(sub))) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

/// Entrywise evaluation of a rational matrix at a rational point.
inline QMatrix at(const QRatMatrix& r, const Rational& x) {
  return r.map([&x](const RatFun<Rational>& f) { return f(x); });
}
inline QMatrix at(const QPolyMatrix& p, const Rational& x) {
  return p.map([&x](const Poly<Rational>& f) { return f(x); });
}

/// Order of f at x0: multiplicity in the numerator minus in the denominator.
inline int order_at(const RatFun<Rational>& f, const Rational& x0) {
  auto mult = [&x0](Poly<Rational> p) {
    int k = 0;
    while (!p.is_zero() && ratlin::is_zero(p(x0))) {
      p = ratlin::exact_div(p, Poly<Rational>::root_factor(x0));
      ++k;
    }
    return k;
  };
  return mult(f.num()) - mult(f.den());
}

/// Unimodular matrix as a product of random elementary row operations.
inline QPolyMatrix random_unimodular(std::size_t n, ratlin::ExactRng& rng, int steps = 6) {
  QPolyMatrix u = QPolyMatrix::identity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const Poly<Rational> f = rng.poly(static_cast<int>(rng.integer(0, 1)), 3);
    for (std::size_t c = 0; c < n; ++c) u(i, c) = u(i, c) + f * u(j, c);
  }
  return u;
}

inline double max_abs(const ratlin::CMatrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

/// Greedy nearest matching distance between two multisets of complex numbers.
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&x](const Complex& u, const Complex& v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace oracle
