#include "ratlin/smith.hpp"

#include <algorithm>
#include <sstream>

namespace ratlin {

Rational Locus::point() const {
  if (!is_rational()) throw Error(ErrorCode::InvalidArgument, "locus is not a single rational point");
  return -factor.coeff(0) / factor.coeff(1);
}

std::string Locus::label() const {
  if (is_rational()) return format_rational(point());
  return "roots of " + to_string(factor, "λ");
}

std::vector<int> LocalStructure::pole_multiplicities() const {
  std::vector<int> out;
  for (int v : orders)
    if (v < 0) out.push_back(-v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> LocalStructure::zero_multiplicities() const {
  std::vector<int> out;
  for (int v : orders)
    if (v > 0) out.push_back(v);
  return out;
}

std::string LocalStructure::where() const {
  if (at_infinity) return "infinity (grade " + std::to_string(grade) + ")";
  return locus.label();
}

// ---------------------------------------------------------------------------

namespace {

void row_axpy(QPolyMatrix& a, std::size_t dst, std::size_t src, const Poly<Rational>& q, std::size_t from) {
  for (std::size_t j = from; j < a.cols(); ++j)
    if (!a(src, j).is_zero()) a(dst, j) -= q * a(src, j);
}

void col_axpy(QPolyMatrix& a, std::size_t dst, std::size_t src, const Poly<Rational>& q, std::size_t from) {
  for (std::size_t i = from; i < a.rows(); ++i)
    if (!a(i, src).is_zero()) a(i, dst) -= q * a(i, src);
}

}  // namespace

std::vector<Poly<Rational>> smith_invariant_factors(const QPolyMatrix& p) {
  QPolyMatrix a = p;
  std::vector<Poly<Rational>> factors;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 0; k < kmax; ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = k; i < a.rows(); ++i)
      for (std::size_t j = k; j < a.cols(); ++j)
        if (!a(i, j).is_zero() && (!best || a(i, j).size() < a(best->first, best->second).size())) best = {i, j};
    if (!best) break;
    a.swap_rows(k, best->first);
    a.swap_cols(k, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = k + 1; i < a.rows(); ++i) {
        if (a(i, k).is_zero()) continue;
        auto [q, r] = divmod(a(i, k), a(k, k));
        row_axpy(a, i, k, q, k);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < a.cols(); ++j) {
        if (a(k, j).is_zero()) continue;
        auto [q, r] = divmod(a(k, j), a(k, k));
        col_axpy(a, j, k, q, k);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) {
        // A remainder of lower degree is now in row k or column k.
        std::size_t bi = k, bj = k;
        for (std::size_t i = k + 1; i < a.rows(); ++i)
          if (!a(i, k).is_zero() && a(i, k).size() < a(bi, bj).size()) bi = i, bj = k;
        for (std::size_t j = k + 1; j < a.cols(); ++j)
          if (!a(k, j).is_zero() && a(k, j).size() < a(bi, bj).size()) bi = k, bj = j;
        a.swap_rows(k, bi);
        a.swap_cols(k, bj);
        continue;
      }
      bool divides_all = true;
      for (std::size_t i = k + 1; i < a.rows() && divides_all; ++i)
        for (std::size_t j = k + 1; j < a.cols(); ++j)
          if (!a(i, j).is_zero() && !divides(a(k, k), a(i, j))) {
            row_axpy(a, k, i, -Poly<Rational>::one(), k);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    factors.push_back(a(k, k).monic());
  }
  return factors;
}

// ---------------------------------------------------------------------------

SmithMcMillan::SmithMcMillan(const QRatMatrix& r) {
  auto nd = numerator_denominator(r);
  n_ = std::move(nd.first);
  d_ = std::move(nd.second);
  s_ = smith_invariant_factors(n_);
}

std::vector<Poly<Rational>> SmithMcMillan::polynomials() const {
  std::vector<Poly<Rational>> out = s_;
  out.push_back(d_);
  return out;
}

LocalStructure SmithMcMillan::orders_at(const Locus& where) const {
  LocalStructure ls;
  ls.locus = where;
  ls.normal_rank = s_.size();
  const int vd = d_.is_constant() ? 0 : multiplicity(d_, where.factor);
  for (const auto& s : s_) ls.orders.push_back((s.is_constant() ? 0 : multiplicity(s, where.factor)) - vd);
  std::sort(ls.orders.begin(), ls.orders.end());
  return ls;
}

LocalStructure local_orders(const QRatMatrix& r, const Rational& lambda0) {
  return SmithMcMillan(r).orders_at(lambda0);
}

LocalStructure orders_at_infinity(const QRatMatrix& r, int g) {
  LocalStructure ls = local_orders(ratmat_reverse(r, g), Rational(0));
  ls.at_infinity = true;
  ls.grade = g;
  ls.locus = Locus{};
  return ls;
}

PoleZeroReport pole_zero_in(const QRatMatrix& r, const std::vector<Rational>& points) {
  const SmithMcMillan sm(r);
  PoleZeroReport rep;
  std::vector<Rational> seen;
  for (const auto& c : points) {
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    LocalStructure ls = sm.orders_at(c);
    if (!ls.is_pole() && !ls.is_zero()) continue;
    PoleZeroEntry e;
    e.poles = ls.pole_multiplicities();
    e.zeros = ls.zero_multiplicities();
    e.structure = std::move(ls);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::vector<Locus> loci_of(const std::vector<const SmithMcMillan*>& data) {
  std::vector<Poly<Rational>> polys;
  for (const auto* sm : data)
    for (auto& p : sm->polynomials()) polys.push_back(p);
  std::vector<Locus> rational, irrational;
  for (const auto& b : coprime_basis(polys)) {
    Poly<Rational> rest = b;
    for (const auto& c : rational_roots(b)) {
      rational.push_back(Locus::at(c));
      rest = exact_div(rest, Poly<Rational>::root_factor(c));
    }
    if (!rest.is_constant()) irrational.push_back(Locus{rest.monic()});
  }
  std::sort(rational.begin(), rational.end(), [](const Locus& a, const Locus& b) { return a.point() < b.point(); });
  rational.insert(rational.end(), irrational.begin(), irrational.end());
  return rational;
}

CandidateSet candidate_points(const QRatMatrix& r) {
  const SmithMcMillan sm(r);
  CandidateSet out;
  for (const auto& l : loci_of({&sm})) {
    if (l.is_rational()) {
      out.points.push_back(l.point());
    } else {
      out.irrational.push_back(l.factor);
    }
  }
  return out;
}

}  // namespace ratlin
