#include "ratlin/exactalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace ratlin {

Poly<Rational> common_denominator(const QRatMatrix& r) {
  Poly<Rational> d = Poly<Rational>::one();
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!r(i, j).den().is_constant()) d = lcm(d, r(i, j).den());
  return d;
}

std::pair<QPolyMatrix, Poly<Rational>> numerator_denominator(const QRatMatrix& r) {
  const Poly<Rational> d = common_denominator(r);
  QPolyMatrix n(r.rows(), r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (!r(i, j).is_zero()) n(i, j) = r(i, j).num() * exact_div(d, r(i, j).den());
  return {std::move(n), d};
}

namespace {

// Fraction-free elimination in place. Returns the rank; `sign` tracks row swaps
// and `last_pivot` the final Bareiss pivot (the determinant when square and
// nonsingular).
std::size_t bareiss(QPolyMatrix& a, int& sign, Poly<Rational>& last_pivot) {
  sign = 1;
  Poly<Rational> prev = Poly<Rational>::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < a.rows(); ++i) {
      if (a(i, c).is_zero()) continue;
      if (!piv || a(i, c).size() < a(*piv, c).size()) piv = i;
    }
    if (!piv) continue;
    if (*piv != r) {
      a.swap_rows(*piv, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        Poly<Rational> v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        a(i, j) = prev.is_constant() ? v * (Rational(1) / prev.coeff(0)) : exact_div(v, prev);
      }
      a(i, c) = Poly<Rational>();
    }
    prev = a(r, c);
    ++r;
  }
  last_pivot = prev;
  return r;
}

}  // namespace

std::size_t poly_normal_rank(const QPolyMatrix& p) {
  QPolyMatrix a = p;
  int sign = 1;
  Poly<Rational> last;
  return bareiss(a, sign, last);
}

Poly<Rational> determinant(const QPolyMatrix& p) {
  if (!p.is_square()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  if (p.rows() == 0) return Poly<Rational>::one();
  QPolyMatrix a = p;
  int sign = 1;
  Poly<Rational> last;
  if (bareiss(a, sign, last) < p.rows()) return Poly<Rational>();
  return sign > 0 ? last : -last;
}

std::size_t normal_rank(const QRatMatrix& r) {
  return poly_normal_rank(numerator_denominator(r).first);
}

std::size_t normal_rank_by_evaluation(const QRatMatrix& r, std::uint64_t seed) {
  const Poly<Rational> d = common_denominator(r);
  ExactRng rng(seed);
  for (;;) {
    const Rational x0 = rng.rational(1000, 997);
    if (is_zero(d(x0))) continue;
    return field_rank(ratmat_eval(r, x0));
  }
}

// ---------------------------------------------------------------------------
// Roots

std::vector<Complex> numeric_roots(const Poly<Complex>& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  const std::size_t zeros = p.low_order();
  const Poly<Complex> q = p.shift_down(zeros);
  std::vector<Complex> roots(zeros, Complex(0.0, 0.0));
  const int d = *q.degree();
  if (d == 0) return roots;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -q.coeff(static_cast<std::size_t>(i)) / q.lead();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < d; ++i) {
    // One Newton step on the original polynomial polishes companion roots.
    Complex z = es.eigenvalues()(i);
    const Poly<Complex> dq = q.derivative();
    for (int it = 0; it < 3; ++it) {
      const Complex f = q.eval(z), fp = dq.eval(z);
      if (std::abs(fp) == 0.0) break;
      const Complex step = f / fp;
      if (!(std::abs(step) < 1e-3 * (1.0 + std::abs(z)))) break;
      z -= step;
    }
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<Complex> numeric_roots(const Poly<Rational>& p) { return numeric_roots(p.cast<Complex>()); }

namespace {

// Continued-fraction convergents of x with denominators up to `max_den`.
std::vector<Rational> convergents(double x, const mpz_class& max_den) {
  std::vector<Rational> out;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  // h_{-1}=1, h_{-2}=0; k_{-1}=0, k_{-2}=1
  double y = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(y);
    if (!std::isfinite(a) || std::abs(a) > 1e18) break;
    const mpz_class ai(a);
    const mpz_class h = ai * h0 + h1;
    const mpz_class k = ai * k0 + k1;
    if (k > max_den) break;
    out.emplace_back(h, k);
    out.back().canonicalize();
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    const double frac = y - a;
    if (frac < 1e-15) break;
    y = 1.0 / frac;
  }
  return out;
}

void positive_divisors(const mpz_class& n_in, std::vector<mpz_class>& out, std::size_t limit) {
  mpz_class n = abs(n_in);
  out.clear();
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
      if (out.size() > limit) return;
    }
  }
}

}  // namespace

std::vector<Rational> rational_roots(const Poly<Rational>& p_in) {
  if (p_in.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  Poly<Rational> p = squarefree_part(p_in);
  std::vector<Rational> roots;
  auto accept = [&](const Rational& c) {
    if (p.is_constant()) return;
    if (!is_zero(p(c))) return;
    roots.push_back(c);
    p = exact_div(p, Poly<Rational>::root_factor(c));
  };
  if (!p.is_constant() && is_zero(p.coeff(0))) accept(Rational(0));
  if (p.is_constant()) return roots;

  // Integer form for denominator bounds.
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  mpz_class lead = abs(p.lead().get_num() * (l / p.lead().get_den()));
  mpz_class trail = abs(p.coeff(0).get_num() * (l / p.coeff(0).get_den()));

  for (const Complex& z : numeric_roots(p)) {
    if (p.is_constant()) break;
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
    for (const Rational& c : convergents(z.real(), lead)) accept(c);
  }

  const mpz_class small = 1000000;
  if (!p.is_constant() && lead <= small && trail <= small) {
    std::vector<mpz_class> dn, dd;
    positive_divisors(trail, dn, 4000);
    positive_divisors(lead, dd, 4000);
    for (const auto& a : dn)
      for (const auto& b : dd) {
        if (p.is_constant()) break;
        Rational c(a, b);
        c.canonicalize();
        accept(c);
        accept(-c);
      }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Poly<Rational>> coprime_basis(const std::vector<Poly<Rational>>& polys) {
  std::vector<Poly<Rational>> basis;
  for (const auto& p : polys)
    if (!p.is_constant()) basis.push_back(squarefree_part(p));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        if (basis[i] == basis[j]) {
          basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
        const Poly<Rational> g = gcd(basis[i], basis[j]);
        if (g.is_constant()) continue;
        const Poly<Rational> a = exact_div(basis[i], g).monic();
        const Poly<Rational> b = exact_div(basis[j], g).monic();
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        for (const auto& f : {a, b, g})
          if (!f.is_constant()) basis.push_back(f);
        changed = true;
      }
  }
  std::sort(basis.begin(), basis.end(), [](const Poly<Rational>& a, const Poly<Rational>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return to_string(a) < to_string(b);
  });
  return basis;
}

namespace {

template <class E, class F>
std::string matrix_string(const Matrix<E>& m, F&& fmt) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << fmt(m(i, j));
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string to_string(const QMatrix& m) {
  return matrix_string(m, [](const Rational& x) { return format_rational(x); });
}
std::string to_string(const QPolyMatrix& m) {
  return matrix_string(m, [](const Poly<Rational>& x) { return to_string(x); });
}
std::string to_string(const QRatMatrix& m) {
  return matrix_string(m, [](const RatFun<Rational>& x) { return to_string(x); });
}

}  // namespace ratlin
