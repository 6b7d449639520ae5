#include "doctest.h"
#include "oracles.hpp"

using namespace ratlin;
using oracle::from_roots;
using oracle::poly;
using oracle::q;
using oracle::rf;
using oracle::rmat;

TEST_CASE("Smith form of planted equivalences") {
  ExactRng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Poly<Rational> s1 = from_roots({rng.rational(3, 1)});
    const Poly<Rational> s2 = s1 * from_roots({rng.rational(3, 1)});
    const std::vector<Poly<Rational>> planted{Poly<Rational>::one(), s1, s2};
    QPolyMatrix d(3, 3);
    for (std::size_t i = 0; i < 3; ++i) d(i, i) = planted[i];
    const QPolyMatrix p = oracle::random_unimodular(3, rng) * d * oracle::random_unimodular(3, rng);
    const auto s = smith_invariant_factors(p);
    REQUIRE(s.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(s[i] == planted[i].monic());
  }
}

TEST_CASE("invariant factors divide each other and multiply to the determinant") {
  ExactRng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    QPolyMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = rng.poly(static_cast<int>(rng.integer(0, 2)), 3);
    const auto det = oracle::leibniz_det(p);
    const auto s = smith_invariant_factors(p);
    if (det.is_zero()) {
      CHECK(s.size() < n);
      continue;
    }
    REQUIRE(s.size() == n);
    Poly<Rational> prod = Poly<Rational>::one();
    for (std::size_t i = 0; i < s.size(); ++i) {
      prod = prod * s[i];
      if (i + 1 < s.size()) CHECK(divides(s[i], s[i + 1]));
    }
    CHECK(prod == det.monic());
  }
}

TEST_CASE("scalar local orders equal multiplicity differences") {
  ExactRng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational a = rng.rational(3, 1), b = rng.rational(3, 1);
    const Poly<Rational> num = from_roots({a, a, rng.rational(3, 1)}, rng.nonzero_rational(5, 1));
    const Poly<Rational> den = from_roots({b, rng.rational(3, 1)});
    const RatFun<Rational> f(num, den);
    QRatMatrix r(1, 1);
    r(0, 0) = f;
    for (const Rational& x0 : {a, b, Rational(7)}) {
      const LocalStructure ls = local_orders(r, x0);
      REQUIRE(ls.orders.size() == 1);
      CHECK(ls.orders[0] == oracle::order_at(f, x0));
    }
  }
}

TEST_CASE("Smith-McMillan orders of a diagonal rational matrix") {
  const auto r = rmat({{"(x-1)/(x+2)^2", "0"}, {"0", "(x+2)/(x-1)"}});
  const SmithMcMillan sm(r);
  CHECK(sm.normal_rank() == 2);
  const auto at_m2 = sm.orders_at(q("-2"));
  CHECK(at_m2.orders == std::vector<int>{-2, 1});
  CHECK(at_m2.pole_multiplicities() == std::vector<int>{2});
  CHECK(at_m2.zero_multiplicities() == std::vector<int>{1});
  const auto at_1 = local_orders(r, q("1"));
  CHECK(at_1.orders == std::vector<int>{-1, 1});
  CHECK(local_orders(r, q("5")).orders == std::vector<int>{0, 0});
}

TEST_CASE("cancellation between entries is seen by the Smith-McMillan form") {
  // Each entry has a pole at 1 but the matrix has rank one, so only one pole survives.
  const auto r = rmat({{"1/(x-1)", "1/(x-1)"}, {"1/(x-1)", "1/(x-1)"}});
  const auto ls = local_orders(r, q("1"));
  CHECK(ls.normal_rank == 1);
  CHECK(ls.orders == std::vector<int>{-1});
}

TEST_CASE("orders at infinity use the g-reversal") {
  const auto r = rmat({{"x^2", "0"}, {"0", "1/(x-3)"}});
  const auto inf = orders_at_infinity(r, 1);
  CHECK(inf.at_infinity);
  CHECK(inf.grade == 1);
  // rev_1 R = diag(1/x, x^2/(1-3x)).
  CHECK(inf.orders == std::vector<int>{-1, 2});
}

TEST_CASE("pole/zero report and candidate points") {
  const auto r = rmat({{"(x-2)*(-x+3)/((x+2)*(x^2-1))", "(x-2)/((x+2)*x*(x-1))"}});
  const auto rep = pole_zero_in(r, {q("-2"), q("2"), q("3"), q("5")});
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[0].structure.locus.point() == q("-2"));
  CHECK(rep.entries[0].poles == std::vector<int>{1});
  CHECK(rep.entries[1].structure.locus.point() == q("2"));
  CHECK(rep.entries[1].zeros == std::vector<int>{1});
  const auto cand = candidate_points(r);
  for (const char* p : {"-2", "-1", "0", "1", "2"})
    CHECK(std::find(cand.points.begin(), cand.points.end(), q(p)) != cand.points.end());
}

TEST_CASE("loci keep irreducible factors together") {
  const auto r = rmat({{"1/(x^2-2)", "0"}, {"0", "(x-1)"}});
  const SmithMcMillan sm(r);
  const auto loci = loci_of({&sm});
  bool found = false;
  for (const auto& l : loci)
    if (l.factor == poly("x^2 - 2")) {
      found = true;
      CHECK_FALSE(l.is_rational());
      CHECK(sm.orders_at(l).orders == std::vector<int>{-1, 0});
    }
  CHECK(found);
  CHECK(sm.orders_at(q("1")).orders == std::vector<int>{0, 1});
}
