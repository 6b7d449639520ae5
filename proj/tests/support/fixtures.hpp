#pragma once

#include "oracles.hpp"

#include "ratlin/cork.hpp"

namespace fixtures {

using namespace ratlin;

/// The 2x3 pencil with state matrix x + 2 and its rational target.
struct WorkedExample {
  QPolyMatrix pencil = oracle::pmat({{"x+2", "-x+3", "1"}, {"-x+2", "0", "0"}});
  QRatMatrix target = oracle::rmat({{"(x-2)*(-x+3)/((x+2)*(x^2-1))", "(x-2)/((x+2)*x*(x-1))"}});
  QRatMatrix n1 = oracle::rmat({{"1/(x^2-1)", "0"}, {"0", "1/((x-1)*x)"}});
  QRatMatrix n2 = oracle::rmat({{"1"}});
  RegionSpec omega = RegionSpec::cofinite({Rational(-1), Rational(0), Rational(1)});

  SystemMatrix system() const {
    return SystemMatrix::make(pencil.block(0, 0, 1, 1), pencil.block(0, 1, 1, 2), -pencil.block(1, 0, 1, 1),
                              pencil.block(1, 1, 1, 2));
  }
  BfrParts parts() const {
    BfrParts p;
    p.A = pencil.block(0, 0, 1, 1);
    p.B = pencil.block(0, 1, 1, 2);
    p.C = -pencil.block(1, 0, 1, 1);
    p.M = pencil.block(1, 1, 1, 2);
    p.K1 = QPolyMatrix(0, 2);
    p.K2 = QPolyMatrix(0, 1);
    p.N1 = n1;
    p.N2 = n2;
    return validate(std::move(p));
  }
};

/// sum_k A_k x^k / (x - eps)^2 + I/x with the 4-block pencil whose state
/// matrix is x I_n and whose dual bases are [x I, I] / (x - eps).
struct InfinityExample {
  std::size_t n;
  Rational eps;
  QMatrix a0, a1, a2;

  BfrParts parts() const {
    const QPolyMatrix I = to_poly(QMatrix::identity(n));
    const QPolyMatrix Z(n, n);
    const Poly<Rational> x = Poly<Rational>::x();
    const Poly<Rational> xe = Poly<Rational>::root_factor(eps);
    auto scaled = [&](const Poly<Rational>& f) { return f * I; };
    BfrParts p;
    p.A = scaled(x);
    p.B = hstack(Z, scaled(xe));
    p.C = vstack(Z, scaled(xe));
    p.M = vstack(hstack(to_poly(a2), Z), hstack(Z, pencil(a0, a1)));
    p.K1 = hstack(-I, scaled(x));
    p.K2 = hstack(-I, scaled(x));
    const QRatMatrix nn = to_rat(hstack(scaled(x), I)).map(
        [&](const RatFun<Rational>& f) { return f / RatFun<Rational>(xe); });
    p.N1 = nn;
    p.N2 = nn;
    return validate(std::move(p));
  }

  QRatMatrix target() const {
    const RatFun<Rational> x(Poly<Rational>::x());
    const RatFun<Rational> d = RatFun<Rational>(Poly<Rational>::root_factor(eps)) * RatFun<Rational>(Poly<Rational>::root_factor(eps));
    QRatMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        r(i, j) = (RatFun<Rational>::constant(a0(i, j)) + RatFun<Rational>::constant(a1(i, j)) * x +
                   RatFun<Rational>::constant(a2(i, j)) * x * x) /
                  d;
        if (i == j) r(i, j) += RatFun<Rational>::one() / x;
      }
    return r;
  }

  static InfinityExample random(std::size_t n, const Rational& eps, ExactRng& rng) {
    return {n, eps, rng.matrix(n, n, 5, 3), rng.matrix(n, n, 5, 3), rng.matrix(n, n, 5, 3)};
  }
};

/// D(x) + C (xI - A)^{-1} B with random D of the requested degree and a
/// random minimal realization.
struct StrongInstance {
  QPolyMatrix d;
  QMatrix a, b, c;
  std::size_t t1 = 0, t2 = 0;

  QRatMatrix target() const {
    const std::size_t n = a.rows();
    QRatMatrix r = to_rat(d);
    if (n == 0) return r;
    const QPolyMatrix si = pencil(QMatrix(-a), QMatrix::identity(n));
    const QRatMatrix inv = solve(to_rat(si), to_rat(to_poly(b)));
    return r + to_rat(to_poly(c)) * inv;
  }

  static StrongInstance random(ExactRng& rng, int degree) {
    StrongInstance s;
    const std::size_t p = static_cast<std::size_t>(rng.integer(1, 2));
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, 2));
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    s.d = QPolyMatrix(p, m);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < m; ++j) s.d(i, j) = rng.poly(degree, 3);
    s.t1 = static_cast<std::size_t>(rng.integer(0, degree - 1));
    s.t2 = static_cast<std::size_t>(degree - 1) - s.t1;
    do {
      s.a = rng.matrix(n, n, 3);
      s.b = rng.matrix(n, m, 3);
      s.c = rng.matrix(p, n, 3);
    } while (!is_minimal_realization(s.a, s.b, s.c));
    return s;
  }

  BfrParts build(const QMatrix& x, const QMatrix& y) const {
    return build_sbmb_linearization(sbmb_pencil_for(d, t1, t2), a, b, c, x, y);
  }
  BfrParts build() const { return build(QMatrix::identity(a.rows()), QMatrix::identity(a.rows())); }
};

/// Exact barycentric form of 1/(x - 3) on the supports 0 and 1.
inline QBarycentric inv_shift3() {
  return QBarycentric::make({Rational(0), Rational(1)}, {Rational(3), Rational(-2)},
                            {oracle::q("-1/3"), oracle::q("-1/2")});
}

/// Q(x) = Q0 + x Q1 + x^2 I with one rank-1 term C/(x - 3), n = 4.
inline NlepModel<Rational> toy_rep_model() {
  const QMatrix q0 = oracle::rmat({{"2", "1", "0", "-1"}, {"1", "-3", "2", "0"}, {"0", "1", "1", "2"}, {"1", "0", "-2", "1"}})
                         .map([](const RatFun<Rational>& f) { return f.num().coeff(0); });
  const QMatrix q1 = oracle::rmat({{"1", "0", "1", "0"}, {"0", "2", "0", "1"}, {"1", "0", "-1", "0"}, {"0", "0", "1", "3"}})
                         .map([](const RatFun<Rational>& f) { return f.num().coeff(0); });
  const QMatrix c = oracle::rmat({{"1", "-1", "2", "1"}, {"2", "-2", "4", "2"}, {"0", "0", "0", "0"}, {"-1", "1", "-2", "-1"}})
                        .map([](const RatFun<Rational>& f) { return f.num().coeff(0); });
  NlepTerm<Rational> term{c, QMatrix(4, 4), ScalarFunction::parse("inv_shift", Complex(3.0, 0.0))};
  return NlepModel<Rational>::from_polynomial({q0, q1, QMatrix::identity(4)}, "monomial", {term});
}

}  // namespace fixtures
