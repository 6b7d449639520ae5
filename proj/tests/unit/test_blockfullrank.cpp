#include "doctest.h"
#include "fixtures.hpp"

using namespace ratlin;
using oracle::pmat;
using oracle::q;
using oracle::rmat;

namespace {

/// Proportional as rational row vectors.
bool proportional(const QRatMatrix& a, const QRatMatrix& b) {
  if (a.rows() != 1 || b.rows() != 1 || a.cols() != b.cols()) return false;
  std::optional<RatFun<Rational>> ratio;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a(0, j).is_zero() != b(0, j).is_zero()) return false;
    if (a(0, j).is_zero()) continue;
    const auto r = a(0, j) / b(0, j);
    if (ratio && !(*ratio == r)) return false;
    ratio = r;
  }
  return true;
}

}  // namespace

TEST_CASE("assembling the worked example") {
  const fixtures::WorkedExample ex;
  const BfrParts parts = ex.parts();
  CHECK(assemble(parts).assembled() == ex.pencil);
  CHECK(pencil_in_layout(parts, BfrLayout::Standard) == ex.pencil);
  CHECK(recover_R(parts) == ex.target);
  CHECK(check_finite_condition(parts, ex.omega));
}

TEST_CASE("layouts round-trip through ingest") {
  ExactRng rng(5);
  const auto ex = fixtures::InfinityExample::random(2, q("1"), rng);
  const BfrParts parts = ex.parts();
  const BfrShape shape{2, parts.M.rows(), parts.M.cols(), parts.K1.rows(), parts.K2.rows()};
  for (BfrLayout layout : {BfrLayout::Standard, BfrLayout::StateLast}) {
    const QPolyMatrix l = pencil_in_layout(parts, layout);
    const BfrParts back = ingest(l, layout, shape, parts.N1, parts.N2);
    CHECK(back.A == parts.A);
    CHECK(back.B == parts.B);
    CHECK(back.C == parts.C);
    CHECK(back.M == parts.M);
    CHECK(back.K1 == parts.K1);
    CHECK(back.K2 == parts.K2);
    CHECK(recover_R(back) == ex.target());
  }
  const QPolyMatrix sl = pencil_in_layout(parts, BfrLayout::StateLast);
  CHECK(sl.block(sl.rows() - 2, sl.cols() - 2, 2, 2) == parts.A);
}

TEST_CASE("validation rejects broken duality and shapes") {
  const fixtures::WorkedExample ex;
  BfrParts p = ex.parts();
  p.K1 = pmat({{"1", "-x"}});
  p.N1 = rmat({{"1", "1"}});
  CHECK_THROWS_AS(validate(p), Error);
  BfrParts q2 = ex.parts();
  q2.M = pmat({{"1"}});
  CHECK_THROWS_AS(validate(q2), Error);
  BfrParts s = ex.parts();
  s.A = pmat({{"0"}});
  try {
    validate(s);
    FAIL("singular state accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateNotRegular);
  }
}

TEST_CASE("dual bases") {
  const auto n = dual_basis_for(pmat({{"1", "-x"}}));
  REQUIRE(n.rows() == 1);
  CHECK(proportional(n, rmat({{"x", "1"}})));

  ExactRng rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    const QPolyMatrix k = pencil(rng.matrix(2, 4, 3), rng.matrix(2, 4, 3));
    if (poly_normal_rank(k) < 2) continue;
    const QRatMatrix nb = dual_basis_for(k);
    CHECK(nb.rows() == 2);
    CHECK((to_rat(k) * nb.transpose()).is_zero());
    CHECK(normal_rank(vstack(to_rat(k), nb)) == 4);
  }
}

TEST_CASE("the dual of the barycentric relation pencil") {
  // rows w(0) w(1) w(2); (x - z0) e0 - (x - z1) e1; (x - z1) e1 - (x - z2) e2 without the first row.
  const auto k = pmat({{"x", "-(x-1)", "0"}, {"0", "x-1", "-(x-3)"}});
  const auto nb = dual_basis_for(k);
  REQUIRE(nb.rows() == 1);
  CHECK(proportional(nb, rmat({{"(x-1)(x-3)", "x(x-3)", "x(x-1)"}})));
  const auto prof = row_degree_profile(rmat({{"(x-1)(x-3)", "x(x-3)", "x(x-1)"}}));
  REQUIRE(prof.t.has_value());
  CHECK(*prof.t == 2);
  CHECK(prof.reversal_ok);
}

TEST_CASE("row degree profiles") {
  const auto n = rmat({{"x/(x-2)", "0", "1/(x-2)", "0"}, {"0", "x/(x-2)", "0", "1/(x-2)"}});
  const auto p = row_degree_profile(n);
  REQUIRE(p.t.has_value());
  CHECK(*p.t == 0);
  CHECK(p.reversal_ok);
  const auto bad = row_degree_profile(rmat({{"x", "1"}, {"x^2", "0"}}));
  CHECK_FALSE(bad.t.has_value());
  CHECK(bad.row_degrees == std::vector<Degree>{1, 2});
}

TEST_CASE("finite condition on random infinity examples and their region") {
  ExactRng rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const Rational eps = rng.rational(3, 2);
    const auto ex = fixtures::InfinityExample::random(2, eps, rng);
    const BfrParts parts = ex.parts();
    CHECK(recover_R(parts) == ex.target());
    const RegionSpec omega = RegionSpec::cofinite({eps});
    CHECK(check_finite_condition(parts, omega));
    CHECK(check_linearization_in(assemble(parts), ex.target(), omega).is_linearization);
    const InfinityCheck ic = check_infinity_condition(parts);
    CHECK(ic.passed);
    CHECK(ic.grade == 1);
    CHECK(check_linearization_at_infinity(assemble(parts), ex.target(), ic.grade).is_linearization);
  }
}

TEST_CASE("dual bases that lose rank inside the region are reported") {
  ExactRng rng(78);
  const auto ex = fixtures::InfinityExample::random(1, q("2"), rng);
  try {
    check_finite_condition(ex.parts(), RegionSpec::cofinite());
    FAIL("N_i are undefined at eps, which lies in the region");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DualBasisNotFullRankInRegion);
  }
}

TEST_CASE("non-uniform dual bases cannot be used at infinity") {
  BfrParts p;
  p.A = QPolyMatrix(0, 0);
  p.B = QPolyMatrix(0, 2);
  p.C = QPolyMatrix(1, 0);
  p.M = pmat({{"1", "x"}});
  p.K1 = QPolyMatrix(0, 2);
  p.K2 = QPolyMatrix(0, 1);
  p.N1 = rmat({{"1", "0"}, {"0", "x"}});
  p.N2 = rmat({{"1"}});
  p = validate(p);
  try {
    check_infinity_condition(p);
    FAIL("expected NonUniformRowDegrees");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonUniformRowDegrees);
  }
}

TEST_CASE("strong block minimal bases pencils") {
  const auto k = monomial_minimal_basis(2);
  CHECK(k == pmat({{"x", "-1", "0"}, {"0", "x", "-1"}}));
  const auto d = pmat({{"x^2", "0"}, {"0", "x^2"}});
  const BfrParts s = sbmb_pencil_for(d, 1, 0);
  CHECK(to_rat(s.M).rows() == 2);
  CHECK(s.N2 * to_rat(s.M) * s.N1.transpose() == to_rat(d));
  CHECK_THROWS_AS(sbmb_pencil_for(d, 1, 1), Error);
}

TEST_CASE("unimodular completion") {
  const auto k = monomial_minimal_basis(2);
  const auto n = rmat({{"1", "x", "x^2"}});
  const QMatrix khat = unimodular_completion(k, n);
  CHECK(to_rat(to_poly(khat)) * n.transpose() == rmat({{"1"}}));
  const auto full = vstack(k, to_poly(khat));
  CHECK(determinant(full).is_constant());
  CHECK_FALSE(determinant(full).is_zero());
}

TEST_CASE("strong linearization from a minimal realization") {
  // D = x^3 and the realization 1/(x - 1): grade 3 at infinity.
  fixtures::StrongInstance s;
  s.d = pmat({{"x^3"}});
  s.a = QMatrix{{q("1")}};
  s.b = QMatrix{{q("1")}};
  s.c = QMatrix{{q("1")}};
  s.t1 = 1;
  s.t2 = 1;
  const BfrParts parts = s.build();
  CHECK(recover_R(parts) == rmat({{"x^3 + 1/(x-1)"}}));
  CHECK(check_finite_condition(parts, RegionSpec::cofinite()));
  CHECK(check_linearization_in(assemble(parts), s.target(), RegionSpec::cofinite()).is_linearization);
  const InfinityCheck ic = check_infinity_condition(parts);
  CHECK(ic.passed);
  CHECK(ic.grade == 3);
  CHECK(check_linearization_at_infinity(assemble(parts), s.target(), 3).is_linearization);
}

TEST_CASE("changing X and Y keeps the recovered matrix") {
  ExactRng rng(19);
  const auto s = fixtures::StrongInstance::random(rng, 2);
  const std::size_t n = s.a.rows();
  QMatrix x = rng.matrix(n, n, 3), y = rng.matrix(n, n, 3);
  while (field_rank(x) < n || field_rank(y) < n) {
    x = rng.matrix(n, n, 3);
    y = rng.matrix(n, n, 3);
  }
  CHECK(recover_R(s.build(x, y)) == s.target());
  CHECK(recover_R(s.build()) == s.target());
}

TEST_CASE("construction preconditions") {
  fixtures::StrongInstance s;
  s.d = pmat({{"x^2"}});
  s.a = QMatrix{{q("1"), q("0")}, {q("0"), q("2")}};
  s.b = QMatrix{{q("1")}, {q("0")}};
  s.c = QMatrix{{q("1"), q("1")}};
  s.t1 = 1;
  s.t2 = 0;
  try {
    s.build();
    FAIL("uncontrollable realization accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RealizationNotMinimal);
  }
  CHECK_THROWS_AS(sbmb_pencil_for(pmat({{"x^2"}}), 0, 0), Error);
}

TEST_CASE("breaking controllability breaks the finite condition at an eigenvalue of A") {
  fixtures::StrongInstance s;
  s.d = pmat({{"x^2"}});
  s.a = QMatrix{{q("1"), q("0")}, {q("0"), q("2")}};
  s.b = QMatrix{{q("1")}, {q("1")}};
  s.c = QMatrix{{q("1"), q("1")}};
  s.t1 = 1;
  s.t2 = 0;
  BfrParts parts = s.build();
  CHECK(check_finite_condition(parts, RegionSpec::cofinite()));
  // Zero the B entry that couples the second state.
  parts.B(1, 0) = Poly<Rational>();
  parts.B(1, 1) = Poly<Rational>();
  CHECK_FALSE(check_finite_condition(parts, RegionSpec::cofinite()));
  CHECK_FALSE(check_finite_condition(parts, RegionSpec::finite_set({q("2")})));
  CHECK(check_finite_condition(parts, RegionSpec::finite_set({q("1"), q("3")})));
}
