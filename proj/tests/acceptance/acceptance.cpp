#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"

#include "ratlin/eigsolve.hpp"

using namespace ratlin;
using oracle::q;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << what;
      ok = false;
    }
  }
};

CMatrix numeric(const QMatrix& m) {
  return m.map([](const Rational& x) { return to_complex(x); });
}

// 1
void worked_example(Outcome& o) {
  const fixtures::WorkedExample ex;
  const auto rep = check_linearization_in(ex.system(), ex.target, ex.omega);
  o.require(rep.is_linearization, "not certified");
  bool pole = false, zero = false;
  std::size_t listed = 0;
  for (const auto& e : rep.target_structure) {
    if (e.poles.empty() && e.zeros.empty()) continue;
    ++listed;
    if (!e.structure.locus.is_rational()) continue;
    const Rational at = e.structure.locus.point();
    if (at == q("-2") && e.poles == std::vector<int>{1} && e.zeros.empty()) pole = true;
    if (at == q("2") && e.zeros == std::vector<int>{1} && e.poles.empty()) zero = true;
  }
  o.require(pole, "pole -2 (mult 1) missing");
  o.require(zero, "zero 2 (mult 1) missing");
  o.require(listed == 2, "unexpected extra structure in the region");
}

// 2
void infinity_example(Outcome& o) {
  ExactRng rng(2024);
  const auto ex = fixtures::InfinityExample::random(2, q("1"), rng);
  const BfrParts parts = ex.parts();
  const InfinityCheck ic = check_infinity_condition(parts);
  o.require(ic.passed && ic.grade == 1, "check_infinity_condition is not (true, 1)");
  const SystemMatrix sys = assemble(parts);
  o.require(check_linearization_at_infinity(sys, ex.target(), 1).is_linearization, "no linearization at infinity with g = 1");
  const RegionSpec omega = RegionSpec::cofinite({q("1")});
  o.require(check_finite_condition(parts, omega), "finite condition fails off 1");
  o.require(check_linearization_in(sys, ex.target(), omega).is_linearization, "not a linearization off 1");
  o.require(recover_R(parts) == ex.target(), "recovered matrix differs");
}

std::vector<fixtures::StrongInstance> strong_instances() {
  ExactRng rng(77);
  std::vector<fixtures::StrongInstance> out;
  for (int i = 0; i < 20; ++i) out.push_back(fixtures::StrongInstance::random(rng, i % 2 ? 3 : 2));
  return out;
}

// 3
std::vector<bool> strong_suite(Outcome& o) {
  std::vector<bool> passing;
  for (const auto& s : strong_instances()) {
    const int deg = *poly_matrix_degree(s.d);
    const BfrParts parts = s.build();
    const SystemMatrix sys = assemble(parts);
    bool ok = recover_R(parts) == s.target();
    ok = ok && check_finite_condition(parts, RegionSpec::cofinite());
    ok = ok && check_linearization_in(sys, s.target(), RegionSpec::cofinite()).is_linearization;
    const InfinityCheck ic = check_infinity_condition(parts);
    ok = ok && ic.passed && ic.grade == deg;
    ok = ok && check_linearization_at_infinity(sys, s.target(), deg).is_linearization;
    passing.push_back(ok);
    o.require(ok, "an instance is not a strong linearization");
  }
  return passing;
}

// 4
void mutation_suite(Outcome& o, const std::vector<bool>& passing) {
  ExactRng rng(4242);
  const auto instances = strong_instances();
  std::size_t tried = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!passing[i]) continue;
    ++tried;
    const auto& s = instances[i];
    BfrParts parts = s.build();
    QRatMatrix target = s.target();
    if (i % 2 == 0) {
      const Rational c = rng.rational(19, 3);
      const RatFun<Rational> f(Poly<Rational>::root_factor(c));
      target = target.map([&](const RatFun<Rational>& e) { return e * f; });
    } else {
      parts.C = QPolyMatrix(parts.C.rows(), parts.C.cols());
    }
    bool flipped = false;
    std::string witness;
    try {
      const auto rep = check_linearization_in(assemble(parts), target, RegionSpec::cofinite());
      flipped = !rep.is_linearization;
      witness = rep.witness;
    } catch (const Error& e) {
      flipped = e.code() == ErrorCode::PreconditionNotMinimal;
      witness = e.witness();
    }
    o.require(flipped, "a mutation did not flip the verdict");
    o.require(!witness.empty(), "a flipped verdict has no witness");
  }
  o.require(tried > 0, "no passing instances to mutate");
}

QBarycentric planted_instance(ExactRng& rng, std::size_t m, const Rational& plant) {
  for (;;) {
    std::vector<Rational> z, g, w(m, Rational(0));
    while (z.size() < m) {
      const Rational c = rng.rational(9, 2);
      if (c != plant && std::find(z.begin(), z.end(), c) == z.end()) z.push_back(c);
    }
    for (std::size_t j = 0; j < m; ++j) g.push_back(rng.rational(5, 3));
    QMatrix cons(2, m);
    for (std::size_t j = 0; j < m; ++j) {
      cons(0, j) = Rational(1) / (plant - z[j]);
      cons(1, j) = g[j] / (plant - z[j]);
    }
    const QMatrix nul = right_nullspace(cons);
    for (std::size_t r = 0; r < nul.rows(); ++r) {
      const Rational c = rng.nonzero_rational(4, 1);
      for (std::size_t j = 0; j < m; ++j) w[j] += c * nul(r, j);
    }
    if (nul.rows() == 0 || std::any_of(w.begin(), w.end(), [](const Rational& v) { return is_zero(v); })) continue;
    return QBarycentric::make(z, w, g);
  }
}

QBarycentric rationalized_instance(std::mt19937_64& gen, std::size_t m) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> z, w, g;
  for (std::size_t j = 0; j < m; ++j) {
    z.emplace_back(u(gen), 0.0);
    w.emplace_back(u(gen), 0.0);
    g.emplace_back(u(gen), 0.0);
  }
  return rationalize(BarycentricApprox::make(z, w, g));
}

// 5
void barycentric_suite(Outcome& o) {
  ExactRng rng(55);
  std::mt19937_64 gen(55);
  int planted = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::optional<Rational> plant;
    QBarycentric r;
    if (trial % 3 == 0 || trial == 1) {
      plant = rng.rational(7, 3);
      r = planted_instance(rng, static_cast<std::size_t>(rng.integer(3, 6)), *plant);
      ++planted;
    } else {
      r = rationalized_instance(gen, static_cast<std::size_t>(rng.integer(1, 6)));
    }
    const auto [p, qq] = barycentric_to_quotient(r);
    const auto [rp, sys] = barycentric_to_pencil(r);
    const Poly<Rational> det = determinant(pencil(rp.E, QMatrix(-rp.F)));
    o.require(!det.is_zero() && det.monic() == qq.monic() && det.degree() == qq.degree(), "det(E - xF) is not a multiple of q");
    const Poly<Rational> common = gcd(p, qq);
    std::vector<Rational> points = rational_roots(qq);
    points.insert(points.end(), r.z.begin(), r.z.end());
    for (int k = 0; k < 3; ++k) points.push_back(rng.rational(13, 5));
    if (plant) points.push_back(*plant);
    for (const Rational& x : points) {
      const bool shared = is_zero(p(x)) && is_zero(qq(x));
      o.require(is_minimal_at(sys, x) == !shared, "minimality disagrees with the common roots");
    }
    const auto mr = minimality_in(sys, RegionSpec::cofinite());
    o.require(mr.minimal == (common.degree() == Degree(0)), "minimality in the plane disagrees with gcd(p, q)");
    if (plant) o.require(is_zero(common(*plant)) && !is_minimal_at(sys, *plant), "planted common root not detected");
  }
  o.require(planted >= 5, "fewer than five planted cases");
}

// 6
void aaa_suite(Outcome& o) {
  SamplingRegion grid;
  grid.count = 100;
  std::vector<ScalarFunction> fs{ScalarFunction::parse("inv_shift", Complex(3.0, 0.0)), ScalarFunction::parse("exp"),
                                 ScalarFunction::parse("sin")};
  for (const auto& f : fs) {
    const SampleSet s = sample({f}, grid);
    const auto r = aaa_approximate(s, 1e-10, 20);
    o.require(r.m() <= 20, f.describe() + " needs more than 20 supports");
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      err = std::max(err, std::abs(barycentric_eval(r, s.points[k]) - s.values[0][k]));
      scale = std::max(scale, std::abs(s.values[0][k]));
    }
    o.require(err <= 1e-10 * scale, f.describe() + " misses 1e-10");
    for (std::size_t j = 0; j < r.m(); ++j) {
      const Complex exact = f(r.z[j]);
      o.require(std::abs(barycentric_eval(r, r.z[j]) - exact) <= 1e-15 * std::max(1.0, std::abs(exact)),
                f.describe() + " does not interpolate");
      const Complex near = r.z[j] + Complex(1e-12, 0.0);
      o.require(std::abs(barycentric_eval(r, near) - f(near)) <= 1e-9 * scale, f.describe() + " is unstable near a support");
    }
  }
  const SampleSet all = sample(fs, grid);
  const auto rs = set_valued_aaa(all, 1e-10, 20);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    o.require(rs[i].z == rs[0].z && rs[i].w == rs[0].w, "set-valued approximants do not share supports and weights");
    o.require(relative_sample_error(rs[i], all, i) <= 1e-10, "set-valued approximant misses 1e-10");
  }
}

// 7
void cork_end_to_end(Outcome& o) {
  const auto model = fixtures::toy_rep_model();
  SamplingRegion grid;
  grid.count = 100;
  const SampleSet s = sample({*model.terms[0].function}, grid);
  const auto approx = aaa_approximate(s, 1e-12, 20);
  const QBarycentric r = rationalize(approx);
  const auto fac = low_rank_factorize(model.terms[0].C, model.terms[0].D);
  const auto full = build_cork_aaa(model, {r});
  const auto trimmed = build_trimmed_cork(model, {r}, {fac});

  // A rank-1 coefficient pencil is singular, so the conditions are decided on
  // the trimmed factors.
  const auto rep = check_sufficient_minimality(trimmed);
  o.require(rep.certified_minimal, "sufficient conditions fail: " + rep.summary());

  const std::size_t k = model.rel.k(), n = model.n, l = r.m();
  o.require(full.dim() == k * n + l * n, "full size is not kn + ln");
  o.require(trimmed.dim() == k * n + l * fac.rank, "trimmed size is not kn + l k_1");
  o.require(fac.rank == 1, "rank-1 term not detected");

  const QRatMatrix target = cork_target(full);
  o.require(recover_R(cork_as_bfr(full)) == target && recover_R(cork_as_bfr(trimmed)) == target,
            "pencils do not carry the rationalized R");
  const std::vector<Complex> oracle_zeros = numeric_roots(oracle::leibniz_det(target).num());
  const auto [p, qq] = barycentric_to_quotient(r);
  const std::vector<Complex> q_roots = numeric_roots(qq);

  std::vector<std::vector<Complex>> zeros;
  for (const auto* pen : {&full, &trimmed}) {
    const auto pairs = qz_solve(numeric(pen->L0), numeric(pen->L1));
    const auto rec = recover_and_filter(pairs, *pen, &model, EigenRegion::all());
    zeros.push_back(zero_values(rec));
    o.require(oracle::match_distance(zeros.back(), oracle_zeros) < 1e-8, "pencil zeros differ from the oracle zeros");
    o.require(oracle::match_distance(pen->state_eigenvalues(), q_roots) < 1e-10, "state-block eigenvalues differ from the roots of q");
    // The state block of the pencil itself.
    const std::size_t off = pen->state_offset(), ss = pen->state_size();
    const auto block = qz_solve(numeric(pen->L0.block(off, off, ss, ss)), numeric(pen->L1.block(off, off, ss, ss)));
    std::vector<Complex> finite;
    for (const auto& e : block)
      if (!e.infinite) finite.push_back(e.value);
    std::vector<Complex> expected;
    const std::size_t copies = pen == &full ? n : fac.rank;
    for (const auto& z : q_roots)
      for (std::size_t c = 0; c < copies; ++c) expected.push_back(z);
    o.require(oracle::match_distance(finite, expected) < 1e-10, "assembled state block eigenvalues differ from the roots of q");
  }
  o.require(oracle::match_distance(zeros[0], zeros[1]) < 1e-8, "full and trimmed eigenvalues differ");
}

// 8
void infinity_negative(Outcome& o) {
  const auto model = fixtures::toy_rep_model();
  const auto r = fixtures::inv_shift3();
  std::vector<CorkPencil<Rational>> pencils{build_cork_aaa(model, {r}),
                                            build_trimmed_cork(model, {r}, {low_rank_factorize(model.terms[0].C, model.terms[0].D)})};
  NlepTerm<Rational> t{QMatrix{{q("1")}}, QMatrix{{q("0")}}, std::nullopt};
  pencils.push_back(build_cork_aaa(NlepModel<Rational>::from_polynomial({QMatrix{{q("1")}}}, "monomial", {t}), {r}));
  for (const auto& p : pencils) {
    const InfinityCheck ic = check_infinity_condition(cork_as_bfr(p));
    o.require(!ic.passed, "a CORK-for-AAA pencil passed at infinity");
    o.require(ic.reason == "reversed state block rank-deficient at 0", "unexpected reason: " + ic.reason);
  }
}

// 9
void oracle_consistency(Outcome& o) {
  ExactRng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> zs, ps;
    for (long k = rng.integer(0, 3); k > 0; --k) zs.push_back(rng.rational(4, 2));
    for (long k = rng.integer(0, 3); k > 0; --k) ps.push_back(rng.rational(4, 2));
    const Poly<Rational> num = oracle::from_roots(zs, rng.nonzero_rational(5, 1));
    const Poly<Rational> den = oracle::from_roots(ps);
    const RatFun<Rational> f(num, den);
    QRatMatrix m(1, 1);
    m(0, 0) = f;
    std::vector<Rational> points = zs;
    points.insert(points.end(), ps.begin(), ps.end());
    points.push_back(rng.rational(9, 4));
    for (const Rational& x : points) {
      const int expected = static_cast<int>(std::count(zs.begin(), zs.end(), x)) - static_cast<int>(std::count(ps.begin(), ps.end(), x));
      const auto ls = local_orders(m, x);
      o.require(ls.orders.size() == 1 && ls.orders[0] == expected, "local order differs from the multiplicity count");
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    QPolyMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = rng.poly(static_cast<int>(rng.integer(0, 2)), 3);
    const Poly<Rational> det = oracle::leibniz_det(p);
    const auto s = smith_invariant_factors(p);
    if (det.is_zero()) {
      o.require(s.size() < n, "singular matrix with full Smith rank");
      continue;
    }
    Poly<Rational> prod = Poly<Rational>::one();
    for (const auto& f : s) prod = prod * f;
    o.require(s.size() == n && prod == det.monic(), "Smith product differs from the determinant");
  }
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  std::vector<bool> passing;
  const std::vector<Criterion> criteria{
      {1, "worked example certified in C minus {-1,0,1}", 1.0, worked_example},
      {2, "infinity example: grade 1 at infinity and linearization off eps", 5.0, infinity_example},
      {3, "20 strong block minimal bases constructions are strong linearizations", 60.0,
       [&](Outcome& o) { passing = strong_suite(o); }},
      {4, "planted mutations flip the verdict with a witness", 60.0, [&](Outcome& o) { mutation_suite(o, passing); }},
      {5, "barycentric pencils: determinant and minimality at common roots", 30.0, barycentric_suite},
      {6, "AAA accuracy, interpolation and shared supports", 10.0, aaa_suite},
      {7, "CORK end to end: zeros, state block, full versus trimmed", 30.0, cork_end_to_end},
      {8, "CORK for AAA fails at infinity", 1.0, infinity_negative},
      {9, "oracle self-consistency", 30.0, oracle_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_s, "over the time limit");
    if (!o.ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", secs, c.limit_s);
    std::cout << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << " - " << c.name << " (" << timing << ")";
    if (!o.ok) std::cout << " - " << o.note.str();
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
