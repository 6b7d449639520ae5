#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ratlin/matrix.hpp"

namespace ratlin {

// ---------------------------------------------------------------------------
// Conversions between constant, polynomial and rational matrices.

/// L0 + x*L1 as a polynomial matrix.
template <class T>
PolyMatrix<T> pencil(const Matrix<T>& l0, const Matrix<T>& l1) {
  if (l0.rows() != l1.rows() || l0.cols() != l1.cols()) throw Error(ErrorCode::DimensionMismatch, "pencil coefficient shapes");
  PolyMatrix<T> p(l0.rows(), l0.cols());
  for (std::size_t i = 0; i < l0.rows(); ++i)
    for (std::size_t j = 0; j < l0.cols(); ++j) p(i, j) = Poly<T>::linear(l0(i, j), l1(i, j));
  return p;
}

template <class T>
PolyMatrix<T> to_poly(const Matrix<T>& c) {
  return c.map([](const T& v) { return Poly<T>::constant(v); });
}

template <class T>
RatMatrix<T> to_rat(const PolyMatrix<T>& p) {
  return p.map([](const Poly<T>& v) { return RatFun<T>(v); });
}

/// Coefficient k of every entry.
template <class T>
Matrix<T> coefficient(const PolyMatrix<T>& p, std::size_t k) {
  return p.map([k](const Poly<T>& v) { return v.coeff(k); });
}

template <class T>
Degree poly_matrix_degree(const PolyMatrix<T>& p) {
  Degree d;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const Degree e = p(i, j).degree();
      if (e && (!d || *e > *d)) d = e;
    }
  return d;
}

template <class T, class U = T>
Matrix<U> eval(const PolyMatrix<T>& p, const U& x) {
  return p.map([&x](const Poly<T>& v) { return v.template eval<U>(x); });
}

/// Entrywise evaluation; NotDefinedAt when some reduced denominator vanishes.
template <class T, class U = T>
Matrix<U> ratmat_eval(const RatMatrix<T>& r, const U& x) {
  return r.map([&x](const RatFun<T>& v) { return v.template eval<U>(x); });
}

/// Whether every entry is defined at x.
template <class T>
bool defined_at(const RatMatrix<T>& r, const T& x) {
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (is_zero(r(i, j).den()(x))) return false;
  return true;
}

/// Maximum entry degree over nonzero entries; AllZeroMatrix if there is none.
template <class T>
int ratmat_degree(const RatMatrix<T>& r) {
  Degree d;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const Degree e = r(i, j).degree();
      if (e && (!d || *e > *d)) d = e;
    }
  if (!d) throw Error(ErrorCode::AllZeroMatrix, "degree of the zero rational matrix");
  return *d;
}

/// Degree of each row (nullopt for a zero row).
template <class T>
std::vector<Degree> row_degrees(const RatMatrix<T>& r) {
  std::vector<Degree> out(r.rows());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const Degree e = r(i, j).degree();
      if (e && (!out[i] || *e > *out[i])) out[i] = e;
    }
  return out;
}

template <class T>
RatMatrix<T> ratmat_reverse(const RatMatrix<T>& r, int g) {
  return r.map([g](const RatFun<T>& v) { return v.reversed(g); });
}

/// x^g P(1/x) as a rational matrix (polynomial when g >= deg P).
template <class T>
RatMatrix<T> poly_reverse(const PolyMatrix<T>& p, int g) {
  return ratmat_reverse(to_rat(p), g);
}

/// rev_1 of a pencil of degree <= 1: swaps the two coefficients.
template <class T>
PolyMatrix<T> pencil_reverse(const PolyMatrix<T>& p) {
  if (auto d = poly_matrix_degree(p); d && *d > 1) throw Error(ErrorCode::InvalidArgument, "pencil_reverse on a matrix of degree > 1");
  return pencil(coefficient(p, 1), coefficient(p, 0));
}

/// Least common multiple of all entry denominators (monic).
Poly<Rational> common_denominator(const QRatMatrix& r);

/// Splits R = N / d with d the monic lcm of the entry denominators.
std::pair<QPolyMatrix, Poly<Rational>> numerator_denominator(const QRatMatrix& r);

// ---------------------------------------------------------------------------
// Linear algebra over fields: Q, and Q(x) through RatFun<Rational>.

inline std::size_t cost(const RatFun<Rational>& f) { return f.num().size() + f.den().size(); }

template <class E>
struct RrefResult {
  Matrix<E> reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form by Gauss-Jordan elimination. For RatFun entries
/// the pivot of smallest total degree in the column is chosen.
template <class E>
RrefResult<E> rref(Matrix<E> a) {
  RrefResult<E> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < a.rows(); ++i) {
      if (RingTraits<E>::is_zero(a(i, c))) continue;
      if constexpr (std::is_same_v<E, RatFun<Rational>>) {
        if (!piv || cost(a(i, c)) < cost(a(*piv, c))) piv = i;
      } else {
        piv = i;
        break;
      }
    }
    if (!piv) continue;
    a.swap_rows(r, *piv);
    const E inv = RingTraits<E>::one() / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || RingTraits<E>::is_zero(a(i, c))) continue;
      const E f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (!RingTraits<E>::is_zero(a(r, j))) a(i, j) = a(i, j) - f * a(r, j);
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

template <class E>
std::size_t field_rank(const Matrix<E>& a) {
  return rref(a).pivot_cols.size();
}

/// Basis of the right nullspace {x : a x = 0}, one basis vector per row.
template <class E>
Matrix<E> right_nullspace(const Matrix<E>& a) {
  const auto rr = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<E> basis(free_cols.size(), a.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(k, free_cols[k]) = RingTraits<E>::one();
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) basis(k, rr.pivot_cols[r]) = -rr.reduced(r, free_cols[k]);
  }
  return basis;
}

/// a^{-1} b for square nonsingular a; SingularStateMatrix otherwise.
template <class E>
Matrix<E> solve(const Matrix<E>& a, const Matrix<E>& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve dimensions");
  const std::size_t n = a.rows();
  const auto rr = rref(hstack(a, b));
  if (rr.pivot_cols.size() < n || (n > 0 && rr.pivot_cols[n - 1] != n - 1))
    throw Error(ErrorCode::SingularStateMatrix, "matrix is singular");
  return rr.reduced.block(0, n, n, b.cols());
}

/// Some x with a x = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
template <class E>
std::optional<Matrix<E>> solve_particular(const Matrix<E>& a, const Matrix<E>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_particular dimensions");
  const auto rr = rref(hstack(a, b));
  Matrix<E> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) {
    const std::size_t c = rr.pivot_cols[r];
    if (c >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(c, j) = rr.reduced(r, a.cols() + j);
  }
  return x;
}

template <class E>
Matrix<E> inverse(const Matrix<E>& a) {
  return solve(a, Matrix<E>::identity(a.rows()));
}

// ---------------------------------------------------------------------------
// Polynomial matrices over Q.

/// Rank over Q(x) by fraction-free (Bareiss) elimination in Q[x].
std::size_t poly_normal_rank(const QPolyMatrix& p);

/// Determinant of a square polynomial matrix (Bareiss).
Poly<Rational> determinant(const QPolyMatrix& p);

/// Normal rank of a rational matrix: rows are cleared of denominators and the
/// Bareiss rank is taken. Authoritative; see normal_rank_by_evaluation for the
/// probabilistic cross-check.
std::size_t normal_rank(const QRatMatrix& r);

/// Rank of R(x0) at a seeded pseudo-random rational x0 avoiding every pole.
std::size_t normal_rank_by_evaluation(const QRatMatrix& r, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Roots.

/// All complex roots of p (companion-matrix eigenvalues), p != 0.
std::vector<Complex> numeric_roots(const Poly<Complex>& p);
std::vector<Complex> numeric_roots(const Poly<Rational>& p);

/// Distinct rational roots of p (p != 0), found by testing candidates exactly:
/// rationalized numeric roots and, when the integer coefficients are small,
/// every candidate allowed by the rational root theorem.
std::vector<Rational> rational_roots(const Poly<Rational>& p);

/// Pairwise coprime, squarefree, monic polynomials such that every input is a
/// constant times a product of powers of them.
std::vector<Poly<Rational>> coprime_basis(const std::vector<Poly<Rational>>& polys);

// ---------------------------------------------------------------------------
// Deterministic random generation for tests and property checks.

class ExactRng {
 public:
  explicit ExactRng(std::uint64_t seed) : gen_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(long num_bound, long den_bound) {
    Rational r(integer(-num_bound, num_bound), integer(1, den_bound));
    r.canonicalize();
    return r;
  }
  Rational nonzero_rational(long num_bound, long den_bound) {
    for (;;) {
      Rational r = rational(num_bound, den_bound);
      if (!is_zero(r)) return r;
    }
  }
  QMatrix matrix(std::size_t r, std::size_t c, long num_bound, long den_bound = 1) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(num_bound, den_bound);
    return m;
  }
  Poly<Rational> poly(int degree, long num_bound, long den_bound = 1) {
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = rational(num_bound, den_bound);
    if (is_zero(c.back())) c.back() = 1;
    return Poly<Rational>(std::move(c));
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

std::string to_string(const QMatrix& m);
std::string to_string(const QPolyMatrix& m);
std::string to_string(const QRatMatrix& m);

}  // namespace ratlin
