#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"

#include "ratlin/eigsolve.hpp"

using namespace ratlin;
using oracle::pmat;
using oracle::q;

namespace {

CMatrix numeric(const QMatrix& m) {
  return m.map([](const Rational& x) { return to_complex(x); });
}

std::vector<Complex> finite_values(const std::vector<Eigenpair>& pairs) {
  std::vector<Complex> out;
  for (const auto& e : pairs)
    if (!e.infinite) out.push_back(e.value);
  return out;
}

/// Zeros of a square rational matrix whose poles and zeros do not collide.
std::vector<Complex> oracle_zeros(const QRatMatrix& r) {
  return numeric_roots(oracle::leibniz_det(r).num());
}

}  // namespace

TEST_CASE("QZ on small pencils") {
  const auto d = qz_solve(pmat({{"x-1", "0"}, {"0", "x-2"}}));
  REQUIRE(d.size() == 2);
  CHECK(oracle::match_distance(finite_values(d), {1.0, 2.0}) < 1e-14);
  const auto inf = qz_solve(pmat({{"x", "0"}, {"0", "1"}}));
  REQUIRE(inf.size() == 2);
  CHECK(inf[0].value == Complex(0.0, 0.0));
  CHECK_FALSE(inf[0].infinite);
  CHECK(inf[1].infinite);
  const fixtures::WorkedExample ex;
  try {
    qz_solve(ex.pencil);
    FAIL("non-square pencil accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
  CHECK_THROWS_AS(qz_solve(pmat({{"x^2"}})), Error);
}

TEST_CASE("QZ eigenvectors and counts on random pencils") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    CMatrix l0(6, 6), l1(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        l0(i, j) = Complex(nd(gen), nd(gen));
        l1(i, j) = Complex(nd(gen), nd(gen));
      }
    const auto pairs = qz_solve(l0, l1);
    CHECK(pairs.size() == 6);
    for (const auto& e : pairs) {
      double nrm = 0.0;
      for (const auto& v : e.right_vector) nrm += std::norm(v);
      CHECK(std::sqrt(nrm) == doctest::Approx(1.0));
      CHECK(pencil_residual(l0, l1, e) < 1e-10 * (1.0 + std::abs(e.value)));
    }
  }
}

TEST_CASE("a planted zero of a polynomial REP is recovered") {
  // R = diag(x - 2, 1) through the CORK of a degree-one polynomial.
  const auto model = NlepModel<Rational>::from_polynomial(
      {QMatrix{{q("-2"), q("0")}, {q("0"), q("1")}}, QMatrix{{q("1"), q("0")}, {q("0"), q("0")}}}, "monomial");
  const auto p = build_cork(model.A, model.B, model.rel);
  const auto pairs = qz_solve(numeric(p.L0), numeric(p.L1));
  const auto rec = recover_and_filter(pairs, p, &model, EigenRegion::all());
  REQUIRE(rec.size() == 1);
  CHECK(std::abs(rec[0].value - 2.0) < 1e-14);
  CHECK(rec[0].cls == EigenClass::Zero);
  CHECK(rec[0].residual <= 1e-12);
  CHECK(std::abs(rec[0].recovered_vector[1]) < 1e-14);
  CHECK(recover_and_filter(pairs, p, &model, EigenRegion::empty()).empty());
  CHECK(recover_and_filter(pairs, p, &model, EigenRegion::disc(Complex(0, 0), 1.0)).empty());
  CHECK(recover_and_filter(pairs, p, &model, EigenRegion::box(1.5, 2.5, -1, 1)).size() == 1);
}

TEST_CASE("toy REP: zeros, poles, and full versus trimmed") {
  const auto model = fixtures::toy_rep_model();
  const auto r = fixtures::inv_shift3();
  const auto full = build_cork_aaa(model, {r});
  const auto trimmed = build_trimmed_cork(model, {r}, {low_rank_factorize(model.terms[0].C, model.terms[0].D)});
  const QRatMatrix target = cork_target(full);
  const std::vector<Complex> expected = oracle_zeros(target);
  std::vector<std::vector<Complex>> found;
  for (const auto* p : {&full, &trimmed}) {
    const auto pairs = qz_solve(numeric(p->L0), numeric(p->L1));
    CHECK(pairs.size() == p->dim());
    const auto rec = recover_and_filter(pairs, *p, &model, EigenRegion::all());
    const auto zeros = zero_values(rec);
    CHECK(oracle::match_distance(zeros, expected) < 1e-8);
    for (const auto& e : rec) {
      if (e.cls == EigenClass::Pole) {
        CHECK(std::abs(e.value - 3.0) < 1e-6);
        continue;
      }
      CHECK(e.residual < 1e-10);
      REQUIRE(e.residual_nonlinear.has_value());
      CHECK(*e.residual_nonlinear < 1e-10);
    }
    const auto st = p->state_eigenvalues();
    REQUIRE(st.size() == 1);
    CHECK(std::abs(st[0] - 3.0) < 1e-10);
    found.push_back(zeros);
  }
  CHECK(oracle::match_distance(found[0], found[1]) < 1e-8);
}

TEST_CASE("residuals against the nonlinear problem") {
  // F(x) = [[e^x - e, 0], [0, 1]] has the null vector e1 at 1.
  NlepTerm<Rational> term{QMatrix{{q("1"), q("0")}, {q("0"), q("0")}}, QMatrix(2, 2), ScalarFunction::parse("exp")};
  const auto model = NlepModel<Rational>::from_polynomial(
      {QMatrix{{Rational(0), q("0")}, {q("0"), q("1")}}}, "monomial", {term});
  NlepModel<Complex> shifted;
  shifted.n = 2;
  shifted.rel = model.rel;
  shifted.A = {CMatrix{{Complex(-std::exp(1.0), 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}}};
  shifted.B = {CMatrix(2, 2)};
  shifted.terms = {NlepTerm<Complex>{numeric(term.C), CMatrix(2, 2), term.function}};
  CHECK(residual_against_nonlinear(shifted, Complex(1.0, 0.0), {Complex(1, 0), Complex(0, 0)}) <= 1e-13);
  CHECK(residual_against_nonlinear(shifted, Complex(1.0, 0.0), {Complex(0.6, 0), Complex(0.8, 0)}) > 0.1);

  NlepTerm<Rational> root{QMatrix{{q("1")}}, QMatrix(1, 1), ScalarFunction::parse("sqrt")};
  const auto sq = NlepModel<Rational>::from_polynomial({QMatrix{{q("1")}}}, "monomial", {root});
  try {
    residual_against_nonlinear(sq, Complex(-1.0, 0.0), {Complex(1, 0)});
    FAIL("sqrt evaluated on its cut");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FunctionNotEvaluable);
  }
  CHECK(relative_residual(CMatrix(2, 2), {Complex(1, 0), Complex(0, 0)}) == 0.0);
}
