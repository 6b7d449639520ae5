#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "ratlin/error.hpp"
#include "ratlin/ratfun.hpp"

namespace ratlin {

template <class E>
struct RingTraits {
  static E zero() { return E(0); }
  static E one() { return E(1); }
  static bool is_zero(const E& e) { return ratlin::is_zero(e); }
};
template <class T>
struct RingTraits<Poly<T>> {
  static Poly<T> zero() { return Poly<T>(); }
  static Poly<T> one() { return Poly<T>::one(); }
  static bool is_zero(const Poly<T>& e) { return e.is_zero(); }
};
template <class T>
struct RingTraits<RatFun<T>> {
  static RatFun<T> zero() { return RatFun<T>(); }
  static RatFun<T> one() { return RatFun<T>::one(); }
  static bool is_zero(const RatFun<T>& e) { return e.is_zero(); }
};

/// Dense row-major matrix over a ring element type (scalars, polynomials or
/// rational functions). Empty dimensions are allowed everywhere.
template <class E>
class Matrix {
 public:
  using value_type = E;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, RingTraits<E>::zero()) {}
  Matrix(std::size_t rows, std::size_t cols, const E& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<E>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix initializer");
      for (const auto& e : row) data_.push_back(e);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RingTraits<E>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  E& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const E& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw Error(ErrorCode::DimensionMismatch, "set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }
  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!RingTraits<E>::is_zero(e)) return false;
    return true;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const E&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const E&>()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& e : r.data_) e = -e;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] + o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] - o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimensions");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const E& aik = a(i, k);
        if (RingTraits<E>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (RingTraits<E>::is_zero(b(k, j))) continue;
          c(i, j) = c(i, j) + aik * b(k, j);
        }
      }
    return c;
  }
  friend Matrix operator*(const E& s, const Matrix& a) {
    Matrix r = a;
    for (auto& e : r.data_) e = s * e;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum dimensions");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<E> data_;
};

template <class E>
Matrix<E> hstack(const Matrix<E>& a, const Matrix<E>& b) {
  if (a.rows() != b.rows()) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    throw Error(ErrorCode::DimensionMismatch, "hstack row counts differ");
  }
  Matrix<E> r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

template <class E>
Matrix<E> vstack(const Matrix<E>& a, const Matrix<E>& b) {
  if (a.cols() != b.cols()) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    throw Error(ErrorCode::DimensionMismatch, "vstack column counts differ");
  }
  Matrix<E> r(a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

template <class E>
Matrix<E> block_diag(const std::vector<Matrix<E>>& blocks) {
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    nr += b.rows();
    nc += b.cols();
  }
  Matrix<E> r(nr, nc);
  std::size_t i = 0, j = 0;
  for (const auto& b : blocks) {
    r.set_block(i, j, b);
    i += b.rows();
    j += b.cols();
  }
  return r;
}

/// Kronecker product a (x) b where a's entries scale b's entries.
template <class S, class E>
Matrix<E> kron(const Matrix<S>& a, const Matrix<E>& b) {
  Matrix<E> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (RingTraits<S>::is_zero(a(i, j))) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) r(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return r;
}

template <class T>
using ConstMatrix = Matrix<T>;
template <class T>
using PolyMatrix = Matrix<Poly<T>>;
template <class T>
using RatMatrix = Matrix<RatFun<T>>;

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<Complex>;
using QPolyMatrix = PolyMatrix<Rational>;
using QRatMatrix = RatMatrix<Rational>;

/// Conjugate transpose (plain transpose for exact scalars).
template <class T>
Matrix<T> adjoint(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Complex>) {
    return m.transpose().map([](const Complex& z) { return std::conj(z); });
  } else {
    return m.transpose();
  }
}

}  // namespace ratlin
