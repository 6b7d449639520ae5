#include "ratlin/eigsolve.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratlin {

namespace {

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

void normalize(std::vector<Complex>& v) {
  const double n = norm2(v);
  if (n > 0.0)
    for (auto& x : v) x /= n;
}

double frobenius(const CMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

}  // namespace

std::string to_string(EigenClass c) {
  switch (c) {
    case EigenClass::Zero: return "zero";
    case EigenClass::Pole: return "pole";
    case EigenClass::Infinite: return "infinite";
    case EigenClass::Unclassified: break;
  }
  return "unclassified";
}

std::vector<Eigenpair> qz_solve(const CMatrix& L0, const CMatrix& L1) {
  if (!L0.is_square() || L0.rows() != L1.rows() || L0.cols() != L1.cols())
    throw Error(ErrorCode::NonSquare, "qz_solve needs a square pencil");
  const lapack_int n = static_cast<lapack_int>(L0.rows());
  if (n == 0) return {};
  // Column-major copies of A = L0 and B = -L1.
  std::vector<Complex> a(static_cast<std::size_t>(n * n)), b(a.size()), vr(a.size()), vl(1);
  for (lapack_int j = 0; j < n; ++j)
    for (lapack_int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(j * n + i)] = L0(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      b[static_cast<std::size_t>(j * n + i)] = -L1(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  std::vector<Complex> alpha(static_cast<std::size_t>(n)), beta(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, b.data(), n, alpha.data(),
                                        beta.data(), vl.data(), 1, vr.data(), n);
  if (info != 0) throw Error(ErrorCode::InvalidArgument, "zggev failed with info " + std::to_string(info));

  std::vector<Eigenpair> out;
  for (lapack_int k = 0; k < n; ++k) {
    Eigenpair e;
    e.alpha = alpha[static_cast<std::size_t>(k)];
    e.beta = beta[static_cast<std::size_t>(k)];
    e.infinite = std::abs(e.beta) <= 1e-14 * std::abs(e.alpha) || e.beta == Complex(0.0, 0.0);
    if (e.infinite) {
      e.value = Complex(std::numeric_limits<double>::infinity(), 0.0);
      e.cls = EigenClass::Infinite;
    } else {
      e.value = e.alpha / e.beta;
    }
    e.right_vector.assign(vr.begin() + k * n, vr.begin() + (k + 1) * n);
    normalize(e.right_vector);
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair& x, const Eigenpair& y) {
    if (x.infinite != y.infinite) return !x.infinite;
    if (x.infinite) return false;
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return out;
}

std::vector<Eigenpair> qz_solve(const QPolyMatrix& pencil) {
  if (!pencil.is_square()) throw Error(ErrorCode::NonSquare, "qz_solve needs a square pencil");
  if (auto d = poly_matrix_degree(pencil); d && *d > 1) throw Error(ErrorCode::InvalidArgument, "not a pencil");
  auto conv = [](const QMatrix& m) { return m.map([](const Rational& v) { return to_complex(v); }); };
  return qz_solve(conv(coefficient(pencil, 0)), conv(coefficient(pencil, 1)));
}

double pencil_residual(const CMatrix& L0, const CMatrix& L1, const Eigenpair& e) {
  const CMatrix m = L0 + e.value * L1;
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * e.right_vector[j];
    s += std::norm(acc);
  }
  return std::sqrt(s);
}

bool EigenRegion::contains(const Complex& z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  switch (kind) {
    case Kind::All: return true;
    case Kind::Disc: return std::abs(z - center) <= radius;
    case Kind::Box: return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
  return false;
}

EigenRegion EigenRegion::disc(Complex c, double r) {
  EigenRegion e;
  e.kind = Kind::Disc;
  e.center = c;
  e.radius = r;
  return e;
}

EigenRegion EigenRegion::box(double re0, double re1, double im0, double im1) {
  EigenRegion e;
  e.kind = Kind::Box;
  e.re_min = re0;
  e.re_max = re1;
  e.im_min = im0;
  e.im_max = im1;
  return e;
}

EigenRegion EigenRegion::empty() { return disc(Complex(0.0, 0.0), -1.0); }

double relative_residual(const CMatrix& m, const std::vector<Complex>& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "residual vector length");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    s += std::norm(acc);
  }
  if (s == 0.0) return 0.0;
  const double den = frobenius(m) * norm2(v);
  return den > 0.0 ? std::sqrt(s) / den : std::numeric_limits<double>::infinity();
}

template <class T>
std::vector<Eigenpair> recover_and_filter(const std::vector<Eigenpair>& pairs, const CorkPencil<T>& pencil,
                                          const NlepModel<T>* model, const EigenRegion& region,
                                          const RecoveryOptions& opts) {
  const auto poles = pencil.state_eigenvalues();
  std::vector<Eigenpair> out;
  for (const auto& e0 : pairs) {
    if (e0.infinite || !region.contains(e0.value)) continue;
    Eigenpair e = e0;
    const bool at_pole = std::any_of(poles.begin(), poles.end(), [&](const Complex& p) {
      return std::abs(p - e.value) <= opts.pole_tol * std::max(1.0, std::abs(p));
    });
    e.recovered_vector.assign(e.right_vector.begin(), e.right_vector.begin() + static_cast<std::ptrdiff_t>(pencil.n));
    normalize(e.recovered_vector);
    if (at_pole) {
      e.cls = EigenClass::Pole;
      e.residual = std::numeric_limits<double>::quiet_NaN();
    } else {
      e.cls = EigenClass::Zero;
      e.residual = norm2(e.recovered_vector) == 0.0 ? std::numeric_limits<double>::infinity()
                                                    : relative_residual(pencil.eval_target(e.value), e.recovered_vector);
      if (model) {
        const bool has_functions = std::all_of(model->terms.begin(), model->terms.end(),
                                               [](const NlepTerm<T>& t) { return t.function.has_value(); });
        if (has_functions) {
          try {
            e.residual_nonlinear = residual_against_nonlinear(*model, e.value, e.recovered_vector);
          } catch (const Error& err) {
            if (err.code() != ErrorCode::FunctionNotEvaluable) throw;
          }
        }
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

template <class T>
double residual_against_nonlinear(const NlepModel<T>& model, const Complex& lambda0, const std::vector<Complex>& v) {
  return relative_residual(model.eval_F(lambda0), v);
}

template std::vector<Eigenpair> recover_and_filter(const std::vector<Eigenpair>&, const CorkPencil<Rational>&,
                                                   const NlepModel<Rational>*, const EigenRegion&, const RecoveryOptions&);
template std::vector<Eigenpair> recover_and_filter(const std::vector<Eigenpair>&, const CorkPencil<Complex>&,
                                                   const NlepModel<Complex>*, const EigenRegion&, const RecoveryOptions&);
template double residual_against_nonlinear(const NlepModel<Rational>&, const Complex&, const std::vector<Complex>&);
template double residual_against_nonlinear(const NlepModel<Complex>&, const Complex&, const std::vector<Complex>&);

std::vector<Complex> zero_values(const std::vector<Eigenpair>& pairs) {
  std::vector<Complex> out;
  for (const auto& e : pairs)
    if (e.cls == EigenClass::Zero) out.push_back(e.value);
  return out;
}

}  // namespace ratlin
