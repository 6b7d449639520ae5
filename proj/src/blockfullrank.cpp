#include "ratlin/blockfullrank.hpp"

#include <algorithm>

namespace ratlin {

namespace {

std::string root_witness(const Poly<Rational>& h) {
  const auto roots = rational_roots(h);
  if (!roots.empty()) return format_rational(roots.front());
  return Locus{squarefree_part(h)}.label();
}

Poly<Rational> strip_points(Poly<Rational> h, const std::vector<Rational>& pts) {
  for (const auto& e : pts) {
    const Poly<Rational> f = Poly<Rational>::root_factor(e);
    while (!h.is_constant() && divides(f, h)) h = exact_div(h, f);
  }
  return h;
}

// Witness of a point in the region where x is undefined or has rank < r.
std::optional<std::string> rank_failure_in(const QRatMatrix& x, std::size_t r, const RegionSpec& omega) {
  if (r == 0) return std::nullopt;
  if (omega.kind == RegionKind::FiniteSet) {
    for (const auto& p : omega.points) {
      if (!defined_at(x, p)) return format_rational(p) + " (pole)";
      if (field_rank(ratmat_eval(x, p)) < r) return format_rational(p);
    }
    return std::nullopt;
  }
  if (omega.kind == RegionKind::Infinity) throw Error(ErrorCode::InvalidArgument, "rank check needs a finite region");
  auto [num, den] = numerator_denominator(x);
  if (Poly<Rational> d = strip_points(den, omega.points); !d.is_constant()) return root_witness(d) + " (pole)";
  const auto s = smith_invariant_factors(num);
  if (s.size() < r) return std::string("everywhere (normal rank below ") + std::to_string(r) + ")";
  Poly<Rational> h = Poly<Rational>::one();
  for (std::size_t i = 0; i < r; ++i) h = h * s[i];
  h = strip_points(h, omega.points);
  if (!h.is_constant()) return root_witness(h);
  return std::nullopt;
}

QPolyMatrix require_polynomial(const QRatMatrix& n) {
  QPolyMatrix p(n.rows(), n.cols());
  for (std::size_t i = 0; i < n.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j) {
      if (!n(i, j).is_polynomial()) throw Error(ErrorCode::UnimodularCompletionFailed, "dual basis is not polynomial");
      p(i, j) = n(i, j).num() * (Rational(1) / n(i, j).den().coeff(0));
    }
  return p;
}

QPolyMatrix kron_identity(const QPolyMatrix& a, std::size_t k) { return kron(a, QPolyMatrix::identity(k)); }

// (1, λ, ..., λ^t) as a row.
QPolyMatrix monomial_row(std::size_t t) {
  QPolyMatrix f(1, t + 1);
  for (std::size_t j = 0; j <= t; ++j) f(0, j) = Poly<Rational>::monomial(Rational(1), static_cast<int>(j));
  return f;
}

}  // namespace

BfrParts validate(BfrParts p) {
  const std::size_t n = p.A.rows(), q = p.M.rows(), r = p.M.cols();
  if (p.A.cols() != n) throw Error(ErrorCode::DimensionMismatch, "state matrix is not square");
  if (p.K1.rows() == 0) p.K1 = QPolyMatrix(0, r);
  if (p.K2.rows() == 0) p.K2 = QPolyMatrix(0, q);
  if (n == 0) {
    p.B = QPolyMatrix(0, r);
    p.C = QPolyMatrix(q, 0);
  }
  if (p.B.rows() != n || p.B.cols() != r || p.C.rows() != q || p.C.cols() != n || p.K1.cols() != r ||
      p.K2.cols() != q || p.K1.rows() > r || p.K2.rows() > q)
    throw Error(ErrorCode::DimensionMismatch, "block full rank parts are not conformal");
  for (const QPolyMatrix* m : {&p.A, &p.B, &p.C, &p.M, &p.K1, &p.K2})
    if (auto d = poly_matrix_degree(*m); d && *d > 1) throw Error(ErrorCode::InvalidArgument, "block of degree > 1");
  if (n > 0 && poly_normal_rank(p.A) < n) throw Error(ErrorCode::StateNotRegular, "state matrix is singular");

  auto fill_dual = [](const QPolyMatrix& k, QRatMatrix& dual, std::size_t cols) {
    if (dual.rows() == 0 && dual.cols() == 0) dual = k.rows() == 0 ? to_rat(QPolyMatrix::identity(cols)) : dual_basis_for(k);
    if (dual.cols() != cols || dual.rows() + k.rows() != cols)
      throw Error(ErrorCode::DimensionMismatch, "dual basis has the wrong size");
    if (k.rows() > 0) {
      if (poly_normal_rank(k) < k.rows()) throw Error(ErrorCode::InvalidArgument, "K block lacks full row normal rank");
      if (!(to_rat(k) * dual.transpose()).is_zero()) throw Error(ErrorCode::InvalidArgument, "K N^T is not zero");
    }
    if (normal_rank(vstack(to_rat(k), dual)) < cols) throw Error(ErrorCode::InvalidArgument, "[K; N] is not of full normal rank");
  };
  fill_dual(p.K1, p.N1, r);
  fill_dual(p.K2, p.N2, q);
  return p;
}

SystemMatrix assemble(const BfrParts& parts) {
  const BfrParts p = validate(parts);
  const std::size_t n = p.n(), k1 = p.K1.rows(), k2 = p.K2.rows();
  QPolyMatrix d = vstack(hstack(p.M, p.K2.transpose()), hstack(p.K1, QPolyMatrix(k1, k2)));
  if (k2 == 0) d = vstack(p.M, p.K1);
  return SystemMatrix::make(p.A, hstack(p.B, QPolyMatrix(n, k2)), vstack(p.C, QPolyMatrix(k1, n)), d);
}

QPolyMatrix pencil_in_layout(const BfrParts& parts, BfrLayout layout) {
  const BfrParts p = validate(parts);
  if (layout == BfrLayout::Standard) return assemble(p).assembled();
  const std::size_t n = p.n(), q = p.M.rows(), r = p.M.cols(), k1 = p.K1.rows(), k2 = p.K2.rows();
  QPolyMatrix l(q + k1 + n, r + k2 + n);
  l.set_block(0, 0, p.M);
  l.set_block(0, r, p.K2.transpose());
  l.set_block(0, r + k2, -p.C);
  l.set_block(q, 0, p.K1);
  l.set_block(q + k1, 0, p.B);
  l.set_block(q + k1, r + k2, p.A);
  return l;
}

BfrParts ingest(const QPolyMatrix& l, BfrLayout layout, const BfrShape& s, QRatMatrix n1, QRatMatrix n2) {
  const std::size_t rows = s.n + s.m_rows + s.k1, cols = s.n + s.m_cols + s.k2;
  if (l.rows() != rows || l.cols() != cols) throw Error(ErrorCode::DimensionMismatch, "pencil does not match the block shape");
  BfrParts p;
  // Offsets of the state rows/columns and of the M block.
  const std::size_t sr = layout == BfrLayout::Standard ? 0 : s.m_rows + s.k1;
  const std::size_t sc = layout == BfrLayout::Standard ? 0 : s.m_cols + s.k2;
  const std::size_t mr = layout == BfrLayout::Standard ? s.n : 0;
  const std::size_t mc = layout == BfrLayout::Standard ? s.n : 0;
  p.A = l.block(sr, sc, s.n, s.n);
  p.B = l.block(sr, mc, s.n, s.m_cols);
  p.C = -l.block(mr, sc, s.m_rows, s.n);
  p.M = l.block(mr, mc, s.m_rows, s.m_cols);
  p.K2 = l.block(mr, mc + s.m_cols, s.m_rows, s.k2).transpose();
  p.K1 = l.block(mr + s.m_rows, mc, s.k1, s.m_cols);
  const bool zero_blocks = l.block(sr, mc + s.m_cols, s.n, s.k2).is_zero() &&
                           l.block(mr + s.m_rows, sc, s.k1, s.n).is_zero() &&
                           l.block(mr + s.m_rows, mc + s.m_cols, s.k1, s.k2).is_zero();
  if (!zero_blocks) throw Error(ErrorCode::DimensionMismatch, "pencil has nonzero entries in structurally zero blocks");
  p.N1 = std::move(n1);
  p.N2 = std::move(n2);
  return validate(std::move(p));
}

QRatMatrix dual_basis_for(const QPolyMatrix& k) {
  QRatMatrix basis = right_nullspace(to_rat(k));
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    Poly<Rational> den = Poly<Rational>::one();
    for (std::size_t j = 0; j < basis.cols(); ++j) den = lcm(den, basis(i, j).den());
    Poly<Rational> content;
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      if (basis(i, j).is_zero()) continue;
      const Poly<Rational> e = basis(i, j).num() * exact_div(den, basis(i, j).den());
      content = gcd(content, e);
    }
    for (std::size_t j = 0; j < basis.cols(); ++j)
      if (!basis(i, j).is_zero()) basis(i, j) = RatFun<Rational>(exact_div(basis(i, j).num() * exact_div(den, basis(i, j).den()), content));
  }
  return basis;
}

RowDegreeProfile row_degree_profile(const QRatMatrix& n) {
  RowDegreeProfile prof;
  prof.row_degrees = row_degrees(n);
  bool uniform = !prof.row_degrees.empty() && prof.row_degrees.front().has_value();
  for (const auto& d : prof.row_degrees)
    if (uniform && (!d || *d != *prof.row_degrees.front())) uniform = false;
  if (!uniform) return prof;
  prof.t = *prof.row_degrees.front();
  const QRatMatrix rev = ratmat_reverse(n, *prof.t);
  prof.reversal_ok = defined_at(rev, Rational(0));
  if (prof.reversal_ok) {
    const QMatrix at0 = ratmat_eval(rev, Rational(0));
    for (std::size_t i = 0; i < at0.rows(); ++i)
      if (at0.row(i).is_zero()) prof.reversal_ok = false;
  }
  return prof;
}

bool check_finite_condition(const BfrParts& parts, const RegionSpec& omega) {
  const BfrParts p = validate(parts);
  const struct {
    const char* name;
    QRatMatrix m;
  } bases[] = {{"K1", to_rat(p.K1)}, {"K2", to_rat(p.K2)}, {"N1", p.N1}, {"N2", p.N2}};
  for (const auto& b : bases)
    if (auto w = rank_failure_in(b.m, b.m.rows(), omega))
      throw Error(ErrorCode::DualBasisNotFullRankInRegion, std::string(b.name) + " is not of full row rank in " + omega.describe(), *w);
  const std::size_t n = p.n();
  if (n == 0) return true;
  const QRatMatrix a = to_rat(p.A);
  const QRatMatrix left = vstack(a, QRatMatrix(-(p.N2 * to_rat(p.C))));
  const QRatMatrix right = hstack(a, QRatMatrix(to_rat(p.B) * p.N1.transpose()));
  return !rank_failure_in(left, n, omega) && !rank_failure_in(right, n, omega);
}

InfinityCheck check_infinity_condition(const BfrParts& parts) {
  const BfrParts p = validate(parts);
  const RowDegreeProfile p1 = row_degree_profile(p.N1), p2 = row_degree_profile(p.N2);
  if (!p1.t || !p2.t) throw Error(ErrorCode::NonUniformRowDegrees, "dual bases need uniform row degrees");
  for (const QPolyMatrix* k : {&p.K1, &p.K2})
    if (field_rank(coefficient(*k, 1)) < k->rows())
      throw Error(ErrorCode::ReversedBasisRankDeficient, "rev_1 K is rank-deficient at 0");
  auto rev_at0 = [](const QRatMatrix& nb, const RowDegreeProfile& prof) {
    const QRatMatrix rev = ratmat_reverse(nb, *prof.t);
    if (!defined_at(rev, Rational(0))) throw Error(ErrorCode::ReversedBasisRankDeficient, "rev_t N is not defined at 0");
    QMatrix at0 = ratmat_eval(rev, Rational(0));
    if (field_rank(at0) < at0.rows()) throw Error(ErrorCode::ReversedBasisRankDeficient, "rev_t N is rank-deficient at 0");
    return at0;
  };
  const QMatrix r1 = rev_at0(p.N1, p1), r2 = rev_at0(p.N2, p2);

  InfinityCheck out;
  out.grade = 1 + *p1.t + *p2.t;
  const std::size_t n = p.n();
  if (n == 0) {
    out.passed = true;
    return out;
  }
  const QMatrix ra = coefficient(p.A, 1), rb = coefficient(p.B, 1), rc = coefficient(p.C, 1);
  const bool left = field_rank(vstack(ra, QMatrix(-(r2 * rc)))) == n;
  const bool right = field_rank(hstack(ra, QMatrix(rb * r1.transpose()))) == n;
  out.passed = left && right;
  if (!out.passed)
    out.reason = field_rank(ra) < n ? "reversed state block rank-deficient at 0" : "reversed rank condition fails at 0";
  return out;
}

QRatMatrix recover_R(const BfrParts& parts) {
  const BfrParts p = validate(parts);
  QRatMatrix inner = to_rat(p.M);
  if (p.n() > 0) inner = inner + to_rat(p.C) * solve(to_rat(p.A), to_rat(p.B));
  return p.N2 * inner * p.N1.transpose();
}

// ---------------------------------------------------------------------------

QPolyMatrix monomial_minimal_basis(std::size_t t) {
  QPolyMatrix l(t, t + 1);
  for (std::size_t j = 0; j < t; ++j) {
    l(j, j) = Poly<Rational>::x();
    l(j, j + 1) = Poly<Rational>::constant(Rational(-1));
  }
  return l;
}

BfrParts sbmb_pencil_for(const QPolyMatrix& d, std::size_t t1, std::size_t t2) {
  const auto deg = poly_matrix_degree(d);
  if (!deg || static_cast<std::size_t>(*deg) != t1 + t2 + 1)
    throw Error(ErrorCode::NotSharpDegree, "deg D must equal t1 + t2 + 1");
  const std::size_t p = d.rows(), m = d.cols();
  BfrParts parts;
  parts.K1 = kron_identity(monomial_minimal_basis(t1), m);
  parts.K2 = kron_identity(monomial_minimal_basis(t2), p);
  parts.N1 = to_rat(kron_identity(monomial_row(t1), m));
  parts.N2 = to_rat(kron_identity(monomial_row(t2), p));
  parts.M = QPolyMatrix((t2 + 1) * p, (t1 + 1) * m);
  const std::size_t top = t1 + t2 + 1;
  for (std::size_t k = 0; k <= top; ++k) {
    const QMatrix dk = coefficient(d, k);
    const bool lead = k == top;
    const std::size_t kk = lead ? t1 + t2 : k;
    const std::size_t a = std::min(kk, t2), b = kk - a;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const Poly<Rational> term = lead ? Poly<Rational>::monomial(dk(i, j), 1) : Poly<Rational>::constant(dk(i, j));
        parts.M(a * p + i, b * m + j) += term;
      }
  }
  return validate(std::move(parts));
}

QMatrix unimodular_completion(const QPolyMatrix& k, const QRatMatrix& n) {
  const QPolyMatrix np = require_polynomial(n);
  const std::size_t c = np.cols(), rows = np.rows();
  const int deg = poly_matrix_degree(np).value_or(0);
  // K̂ [N_0^T N_1^T ...] = [I 0 ...]  <=>  [N_0; N_1; ...] K̂^T = [I; 0; ...]
  QMatrix w(0, c), rhs(0, rows);
  for (int e = 0; e <= deg; ++e) {
    w = vstack(w, coefficient(np, static_cast<std::size_t>(e)));
    rhs = vstack(rhs, e == 0 ? QMatrix::identity(rows) : QMatrix(rows, rows));
  }
  const auto sol = solve_particular(w, rhs);
  if (!sol) throw Error(ErrorCode::UnimodularCompletionFailed, "no constant K̂ with K̂ N^T = I");
  const QMatrix khat = sol->transpose();
  const Poly<Rational> det = determinant(vstack(k, to_poly(khat)));
  if (det.is_zero() || !det.is_constant())
    throw Error(ErrorCode::UnimodularCompletionFailed, "[K; K̂] is not unimodular");
  return khat;
}

bool is_minimal_realization(const QMatrix& a, const QMatrix& b, const QMatrix& c) {
  const std::size_t n = a.rows();
  if (n == 0) return true;
  QMatrix ctrb = b, obsv = c, ab = b, ca = c;
  for (std::size_t k = 1; k < n; ++k) {
    ab = a * ab;
    ca = ca * a;
    ctrb = hstack(ctrb, ab);
    obsv = vstack(obsv, ca);
  }
  return field_rank(ctrb) == n && field_rank(obsv) == n;
}

BfrParts build_sbmb_linearization(const BfrParts& sbmb, const QMatrix& a, const QMatrix& b, const QMatrix& c,
                                  const QMatrix& x, const QMatrix& y) {
  BfrParts base = sbmb;
  base.A = QPolyMatrix();
  base.B = QPolyMatrix();
  base.C = QPolyMatrix();
  base = validate(std::move(base));

  const QRatMatrix d = base.N2 * to_rat(base.M) * base.N1.transpose();
  const int deg_d = ratmat_degree(d);
  if (deg_d != ratmat_degree(base.N2) + ratmat_degree(base.N1) + 1)
    throw Error(ErrorCode::NotSharpDegree, "deg D != deg N2 + deg N1 + 1");

  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n || c.cols() != n || b.cols() != base.N1.rows() || c.rows() != base.N2.rows() ||
      x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "realization does not match the pencil");
  if (!is_minimal_realization(a, b, c)) throw Error(ErrorCode::RealizationNotMinimal, "(A, B, C) is not minimal");
  if (field_rank(x) < n || field_rank(y) < n) throw Error(ErrorCode::InvalidArgument, "X and Y must be invertible");

  const QMatrix k1hat = unimodular_completion(base.K1, base.N1);
  const QMatrix k2hat = unimodular_completion(base.K2, base.N2);
  BfrParts out = base;
  out.A = pencil(QMatrix(-(x * a * y)), QMatrix(x * y));
  out.B = to_poly(QMatrix(x * b * k1hat));
  out.C = to_poly(QMatrix(k2hat.transpose() * c * y));
  return validate(std::move(out));
}

}  // namespace ratlin
