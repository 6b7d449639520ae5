#include "ratlin/cork.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ratlin {

namespace {

template <class T>
CMatrix to_cmatrix(const Matrix<T>& m) {
  return m.map([](const T& v) { return to_complex(v); });
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

Poly<Rational> determinantal_divisor(const QPolyMatrix& m, std::size_t k) {
  if (k == 0) return Poly<Rational>::one();
  const auto s = smith_invariant_factors(m);
  if (s.size() < k) return Poly<Rational>();
  Poly<Rational> d = Poly<Rational>::one();
  for (std::size_t i = 0; i < k; ++i) d = d * s[i];
  return d;
}

std::string describe_common(const Poly<Rational>& g) {
  const auto roots = rational_roots(g);
  if (!roots.empty()) return format_rational(roots.front());
  return Locus{squarefree_part(g)}.label();
}

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

/// Basis polynomials φ_0..φ_d of the named family (deg φ_i = i).
std::vector<Poly<Rational>> basis_polys(const std::string& basis, std::size_t d) {
  std::vector<Poly<Rational>> phi;
  const Poly<Rational> x = Poly<Rational>::x();
  for (std::size_t i = 0; i <= d; ++i) {
    if (i == 0) {
      phi.push_back(Poly<Rational>::one());
    } else if (basis == "monomial" || i == 1) {
      phi.push_back(x * phi[i - 1]);
    } else {
      phi.push_back(x * phi[i - 1] * Rational(2) - phi[i - 2]);
    }
  }
  return phi;
}

template <class T>
void add_term_blocks(CorkPencil<T>& p, const std::vector<CorkTermData<T>>& terms) {
  const std::size_t kn = p.state_offset();
  std::size_t extra = 0;
  for (const auto& t : terms) extra += t.r.m() * t.rank;
  Matrix<T> l0(kn + extra, kn + extra), l1(kn + extra, kn + extra);
  l0.set_block(0, 0, p.L0);
  l1.set_block(0, 0, p.L1);
  std::size_t off = kn;
  for (const auto& t : terms) {
    const std::size_t ell = t.r.m(), k = t.rank;
    const auto rp = realization_pencil(t.r);
    Matrix<T> arow(1, ell);
    for (std::size_t j = 0; j < ell; ++j) arow(0, j) = rp.a[j];
    const Matrix<T> ik = Matrix<T>::identity(k);
    l0.set_block(0, off, kron(arow, t.Ct));
    l1.set_block(0, off, T(-1) * kron(arow, t.Dt));
    l0.set_block(off, 0, T(-1) * adjoint(t.Z));
    l0.set_block(off, off, kron(rp.E, ik));
    l1.set_block(off, off, T(-1) * kron(rp.F, ik));
    off += ell * k;
  }
  p.L0 = std::move(l0);
  p.L1 = std::move(l1);
  p.terms = terms;
}

template <class T>
std::vector<Complex> roots_of_q(const Barycentric<T>& r) {
  const auto q = barycentric_to_quotient(r).second;
  if (q.is_constant()) return {};
  return numeric_roots(q);
}

double sigma_min_ratio(const CMatrix& m) {
  if (m.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  if (s.size() < static_cast<Eigen::Index>(m.cols())) return 0.0;
  const double mx = s(0);
  if (mx == 0.0) return 0.0;
  return s(s.size() - 1) / std::max(1.0, mx);
}

}  // namespace

// ---------------------------------------------------------------------------
// Relations.

BasisRelation monomial_relation(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "basis size must be at least 1");
  BasisRelation rel{"monomial", {}, QMatrix(k - 1, k), QMatrix(k - 1, k)};
  for (std::size_t i = 0; i < k; ++i) rel.f.emplace_back(Poly<Rational>::monomial(Rational(1), static_cast<int>(i)));
  for (std::size_t i = 0; i + 1 < k; ++i) {
    rel.Y(i, i) = -1;
    rel.X(i, i + 1) = -1;
  }
  return rel;
}

BasisRelation chebyshev_relation(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "basis size must be at least 1");
  BasisRelation rel{"chebyshev", {}, QMatrix(k - 1, k), QMatrix(k - 1, k)};
  for (const auto& p : basis_polys("chebyshev", k - 1)) rel.f.emplace_back(p);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (i == 0) {
      rel.Y(0, 0) = -1;
      rel.X(0, 1) = -1;
    } else {
      rel.Y(i, i) = -2;
      rel.X(i, i - 1) = -1;
      rel.X(i, i + 1) = -1;
    }
  }
  return rel;
}

RelationCertificate certify_relation(const BasisRelation& rel) {
  RelationCertificate c;
  const std::size_t k = rel.k();
  if (k == 0) return c;
  c.f0_is_one = rel.f[0] == RatFun<Rational>::one();
  if (rel.X.rows() != k - 1 || rel.X.cols() != k || rel.Y.rows() != k - 1 || rel.Y.cols() != k) return c;
  const QRatMatrix lf = to_rat(rel.relation_pencil());
  QRatMatrix fcol(k, 1);
  for (std::size_t i = 0; i < k; ++i) fcol(i, 0) = rel.f[i];
  c.annihilates = (lf * fcol).is_zero();
  c.rank_everywhere = determinantal_divisor(rel.relation_pencil(), k - 1).is_constant() &&
                      !determinantal_divisor(rel.relation_pencil(), k - 1).is_zero();
  return c;
}

BasisRelation custom_relation(std::vector<RatFun<Rational>> f, QMatrix X, QMatrix Y) {
  BasisRelation rel{"custom", std::move(f), std::move(X), std::move(Y)};
  const auto c = certify_relation(rel);
  if (!c.ok())
    throw Error(ErrorCode::InvalidArgument, std::string("relation rejected:") + (c.f0_is_one ? "" : " f_0 != 1") +
                                                (c.annihilates ? "" : " (X - λY) f != 0") +
                                                (c.rank_everywhere ? "" : " rank drops somewhere"));
  return rel;
}

// ---------------------------------------------------------------------------
// Model.

template <class T>
void NlepModel<T>::validate() const {
  const std::size_t k = rel.k();
  if (k == 0 || A.size() != k || B.size() != k) throw Error(ErrorCode::DimensionMismatch, "need k pairs (A_i, B_i)");
  auto check = [this](const Matrix<T>& m) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "model blocks must be n x n");
  };
  for (const auto& m : A) check(m);
  for (const auto& m : B) check(m);
  for (const auto& t : terms) {
    check(t.C);
    check(t.D);
  }
}

template <class T>
NlepModel<T> NlepModel<T>::from_polynomial(const std::vector<Matrix<T>>& q, const std::string& basis,
                                           std::vector<NlepTerm<T>> terms) {
  if (q.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial part needs at least one coefficient");
  if (basis != "monomial" && basis != "chebyshev")
    throw Error(ErrorCode::InvalidArgument, "unknown basis '" + basis + "'");
  const std::size_t n = q.front().rows();
  const std::size_t d = q.size() - 1;
  const auto phi = basis_polys(basis, d);
  std::vector<Matrix<T>> rem = q, c(d + 1, Matrix<T>(n, n));
  for (std::size_t i = d + 1; i-- > 0;) {
    const T inv = scalar_from_rational<T>(Rational(1) / phi[i].lead());
    c[i] = inv * rem[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const T cf = scalar_from_rational<T>(phi[i].coeff(j));
      if (!is_zero(cf)) rem[j] -= cf * c[i];
    }
  }
  const std::size_t k = std::max<std::size_t>(1, d);
  NlepModel m;
  m.n = n;
  m.rel = basis == "monomial" ? monomial_relation(k) : chebyshev_relation(k);
  m.A.assign(k, Matrix<T>(n, n));
  m.B.assign(k, Matrix<T>(n, n));
  for (std::size_t i = 0; i < std::min(k, d + 1); ++i) m.A[i] = c[i];
  if (d >= 1) {
    if (basis == "monomial" || d == 1) {
      m.B[d - 1] = T(-1) * c[d];
    } else {
      m.B[d - 1] = T(-2) * c[d];
      m.A[d - 2] -= c[d];
    }
  }
  m.terms = std::move(terms);
  m.validate();
  return m;
}

template <class T>
Matrix<Complex> NlepModel<T>::eval_polynomial_part(const Complex& lambda) const {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < rel.k(); ++i) {
    const Complex fi = rel.f[i].template eval<Complex>(lambda);
    out += fi * (to_cmatrix(A[i]) - lambda * to_cmatrix(B[i]));
  }
  return out;
}

template <class T>
Matrix<Complex> NlepModel<T>::eval_F(const Complex& lambda) const {
  CMatrix out = eval_polynomial_part(lambda);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].function)
      throw Error(ErrorCode::FunctionNotEvaluable, "term " + std::to_string(i) + " has no registry function");
    const Complex g = (*terms[i].function)(lambda);
    out += g * (to_cmatrix(terms[i].C) - lambda * to_cmatrix(terms[i].D));
  }
  return out;
}

template struct NlepModel<Rational>;
template struct NlepModel<Complex>;

// ---------------------------------------------------------------------------
// Low rank.

LowRankFactors<Complex> low_rank_factorize(const CMatrix& C, const CMatrix& D, double tol) {
  if (C.rows() != D.rows() || C.cols() != D.cols()) throw Error(ErrorCode::DimensionMismatch, "C and D differ in shape");
  const std::size_t n = C.cols();
  LowRankFactors<Complex> f;
  if (n == 0) return f;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(vstack(C, D)), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (smax > 0.0 && s(i) > tol * smax) ++r;
  f.rank = r;
  f.Z = CMatrix(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) f.Z(i, j) = svd.matrixV()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  f.Ct = C * f.Z;
  f.Dt = D * f.Z;
  return f;
}

LowRankFactors<Rational> low_rank_factorize(const QMatrix& C, const QMatrix& D, double) {
  if (C.rows() != D.rows() || C.cols() != D.cols()) throw Error(ErrorCode::DimensionMismatch, "C and D differ in shape");
  const std::size_t n = C.cols();
  const auto rr = rref(vstack(C, D));
  const std::size_t r = rr.pivot_cols.size();
  LowRankFactors<Rational> f;
  f.rank = r;
  f.Z = rr.reduced.block(0, 0, r, n).transpose();
  f.Ct = QMatrix(C.rows(), r);
  f.Dt = QMatrix(D.rows(), r);
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) {
      f.Ct(i, j) = C(i, rr.pivot_cols[j]);
      f.Dt(i, j) = D(i, rr.pivot_cols[j]);
    }
  return f;
}

// ---------------------------------------------------------------------------
// Pencils.

template <class T>
Matrix<Complex> CorkPencil<T>::eval(const Complex& lambda) const {
  return to_cmatrix(L0) + lambda * to_cmatrix(L1);
}

template <class T>
Matrix<Complex> CorkPencil<T>::eval_target(const Complex& lambda) const {
  CMatrix out(n, n);
  for (std::size_t i = 0; i < k(); ++i)
    out += rel.f[i].template eval<Complex>(lambda) * (to_cmatrix(A[i]) - lambda * to_cmatrix(B[i]));
  for (const auto& t : terms) {
    BarycentricApprox r;
    if constexpr (std::is_same_v<T, Rational>) {
      r = to_numeric(t.r);
    } else {
      r = t.r;
    }
    const Complex v = barycentric_eval(r, lambda);
    out += v * ((to_cmatrix(t.Ct) - lambda * to_cmatrix(t.Dt)) * adjoint(to_cmatrix(t.Z)));
  }
  return out;
}

template <class T>
std::vector<Complex> CorkPencil<T>::state_eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& t : terms)
    for (const auto& z : roots_of_q(t.r)) out.push_back(z);
  return out;
}

template struct CorkPencil<Rational>;
template struct CorkPencil<Complex>;

template <class T>
CorkPencil<T> build_cork(const std::vector<Matrix<T>>& A, const std::vector<Matrix<T>>& B, const BasisRelation& rel) {
  const std::size_t k = rel.k();
  if (k == 0 || A.size() != k || B.size() != k) throw Error(ErrorCode::DimensionMismatch, "need k pairs (A_i, B_i)");
  const std::size_t n = A.front().rows();
  for (std::size_t i = 0; i < k; ++i)
    if (A[i].rows() != n || A[i].cols() != n || B[i].rows() != n || B[i].cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "CORK blocks must be n x n");
  CorkPencil<T> p;
  p.mode = CorkMode::Polynomial;
  p.n = n;
  p.rel = rel;
  p.A = A;
  p.B = B;
  p.L0 = Matrix<T>(k * n, k * n);
  p.L1 = Matrix<T>(k * n, k * n);
  for (std::size_t i = 0; i < k; ++i) {
    p.L0.set_block(0, i * n, A[i]);
    p.L1.set_block(0, i * n, T(-1) * B[i]);
  }
  const Matrix<T> in = Matrix<T>::identity(n);
  const Matrix<T> x = rel.X.map([](const Rational& v) { return scalar_from_rational<T>(v); });
  const Matrix<T> y = rel.Y.map([](const Rational& v) { return scalar_from_rational<T>(v); });
  if (k > 1) {
    p.L0.set_block(n, 0, kron(x, in));
    p.L1.set_block(n, 0, T(-1) * kron(y, in));
  }
  return p;
}

template <class T>
CorkPencil<T> build_trimmed_cork(const NlepModel<T>& model, const std::vector<Barycentric<T>>& approxs,
                                 const std::vector<LowRankFactors<T>>& factors) {
  model.validate();
  if (approxs.size() != model.terms.size() || factors.size() != model.terms.size())
    throw Error(ErrorCode::DimensionMismatch, "one approximant and one factorization per nonlinear term");
  CorkPencil<T> p = build_cork(model.A, model.B, model.rel);
  p.mode = CorkMode::Trimmed;
  std::vector<CorkTermData<T>> terms;
  for (std::size_t i = 0; i < approxs.size(); ++i) {
    const auto& f = factors[i];
    if (f.Z.rows() != model.n || f.Z.cols() != f.rank || f.Ct.rows() != model.n || f.Ct.cols() != f.rank ||
        f.Dt.rows() != model.n || f.Dt.cols() != f.rank)
      throw Error(ErrorCode::DimensionMismatch, "low-rank factors have inconsistent shapes");
    terms.push_back(CorkTermData<T>{f.Ct, f.Dt, f.Z, f.rank, approxs[i], model.terms[i].function});
  }
  add_term_blocks(p, terms);
  return p;
}

template <class T>
CorkPencil<T> build_cork_aaa(const NlepModel<T>& model, const std::vector<Barycentric<T>>& approxs) {
  std::vector<LowRankFactors<T>> full;
  for (const auto& t : model.terms) full.push_back(LowRankFactors<T>{t.C, t.D, Matrix<T>::identity(model.n), model.n});
  CorkPencil<T> p = build_trimmed_cork(model, approxs, full);
  p.mode = model.terms.empty() ? CorkMode::Polynomial : CorkMode::Full;
  return p;
}

template CorkPencil<Rational> build_cork(const std::vector<QMatrix>&, const std::vector<QMatrix>&, const BasisRelation&);
template CorkPencil<Complex> build_cork(const std::vector<CMatrix>&, const std::vector<CMatrix>&, const BasisRelation&);
template CorkPencil<Rational> build_trimmed_cork(const NlepModel<Rational>&, const std::vector<QBarycentric>&,
                                                 const std::vector<LowRankFactors<Rational>>&);
template CorkPencil<Complex> build_trimmed_cork(const NlepModel<Complex>&, const std::vector<BarycentricApprox>&,
                                                const std::vector<LowRankFactors<Complex>>&);
template CorkPencil<Rational> build_cork_aaa(const NlepModel<Rational>&, const std::vector<QBarycentric>&);
template CorkPencil<Complex> build_cork_aaa(const NlepModel<Complex>&, const std::vector<BarycentricApprox>&);

QRatMatrix cork_target(const CorkPencil<Rational>& p) {
  QRatMatrix r(p.n, p.n);
  for (std::size_t i = 0; i < p.k(); ++i) r += p.rel.f[i] * to_rat(pencil(p.A[i], QMatrix(-p.B[i])));
  for (const auto& t : p.terms) {
    const auto [num, den] = barycentric_to_quotient(t.r);
    const QPolyMatrix c = pencil(t.Ct, QMatrix(-t.Dt)) * to_poly(QMatrix(t.Z.transpose()));
    r += RatFun<Rational>(num, den) * to_rat(c);
  }
  return r;
}

CorkPencil<Complex> to_complex(const CorkPencil<Rational>& p) {
  CorkPencil<Complex> c;
  c.mode = p.mode;
  c.n = p.n;
  c.rel = p.rel;
  for (const auto& m : p.A) c.A.push_back(to_cmatrix(m));
  for (const auto& m : p.B) c.B.push_back(to_cmatrix(m));
  for (const auto& t : p.terms)
    c.terms.push_back(CorkTermData<Complex>{to_cmatrix(t.Ct), to_cmatrix(t.Dt), to_cmatrix(t.Z), t.rank,
                                            to_numeric(t.r), t.function});
  c.L0 = to_cmatrix(p.L0);
  c.L1 = to_cmatrix(p.L1);
  return c;
}

BfrParts cork_as_bfr(const CorkPencil<Rational>& p, CorkView view) {
  const std::size_t n = p.n, k = p.k(), kn = p.state_offset(), s = p.state_size(), dim = p.dim();
  const QPolyMatrix l = pencil(p.L0, p.L1);
  BfrParts parts;
  QRatMatrix n1(n, view == CorkView::State ? kn : dim);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) n1(i, j * n + i) = p.rel.f[j];
  parts.N2 = QRatMatrix::identity(n);
  parts.K2 = QPolyMatrix(0, n);
  if (view == CorkView::State) {
    parts.A = l.block(kn, kn, s, s);
    parts.B = l.block(kn, 0, s, kn);
    parts.C = -l.block(0, kn, n, s);
    parts.M = l.block(0, 0, n, kn);
    parts.K1 = l.block(n, 0, kn - n, kn);
    parts.N1 = std::move(n1);
    return validate(std::move(parts));
  }
  parts.A = QPolyMatrix(0, 0);
  parts.B = QPolyMatrix(0, dim);
  parts.C = QPolyMatrix(n, 0);
  parts.M = l.block(0, 0, n, dim);
  parts.K1 = l.block(n, 0, dim - n, dim);
  std::size_t off = kn;
  for (const auto& t : p.terms) {
    const auto rp = realization_pencil(t.r);
    const std::size_t ell = t.r.m();
    QRatMatrix bcol(ell, 1);
    bcol(0, 0) = RatFun<Rational>::one();
    const QRatMatrix res = solve(to_rat(pencil(rp.E, QMatrix(-rp.F))), bcol);
    for (std::size_t l2 = 0; l2 < ell; ++l2)
      for (std::size_t c = 0; c < t.rank; ++c)
        for (std::size_t row = 0; row < n; ++row)
          if (!is_zero(t.Z(row, c))) n1(row, off + l2 * t.rank + c) = res(l2, 0) * RatFun<Rational>::constant(t.Z(row, c));
    off += ell * t.rank;
  }
  parts.N1 = std::move(n1);
  return validate(std::move(parts));
}

// ---------------------------------------------------------------------------
// Sufficient minimality conditions.

std::string SufficientMinimalityReport::summary() const {
  std::ostringstream os;
  auto one = [&os](const char* name, const ConditionOutcome& c) {
    os << name << ": " << (!c.applicable ? "not applicable" : c.passed ? "pass" : "fail");
    if (!c.witness.empty()) os << " (" << c.witness << ")";
    os << "; ";
  };
  one("regular terms", regular);
  one("irreducible approximants", irreducible);
  one("condition (a)", condition_a);
  one("condition (b)", condition_b);
  os << (certified_minimal ? "certified minimal in C" : "minimality undetermined");
  if (direct_minimality) os << "; direct check: " << (*direct_minimality ? "minimal" : "not minimal");
  return os.str();
}

SufficientMinimalityReport check_sufficient_minimality(const CorkPencil<Rational>& p, const MinimalityOptions& opts) {
  SufficientMinimalityReport rep;
  rep.exact = true;
  rep.regular.passed = rep.irreducible.passed = rep.condition_a.passed = rep.condition_b.passed = true;
  std::vector<Poly<Rational>> qs;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& t = p.terms[i];
    const auto [num, den] = barycentric_to_quotient(t.r);
    qs.push_back(den);
    const Poly<Rational> h = determinantal_divisor(pencil(t.Ct, QMatrix(-t.Dt)), t.rank);
    const std::string tag = "term " + std::to_string(i);
    if (h.is_zero()) {
      if (rep.regular.passed) rep.regular.witness = "SingularTermPencil: " + tag;
      rep.regular.passed = false;
      rep.condition_a.applicable = false;
    } else if (rep.condition_a.applicable) {
      const Poly<Rational> ga = gcd(h, den);
      if (!ga.is_constant() && rep.condition_a.passed) {
        rep.condition_a.passed = false;
        rep.condition_a.witness = tag + " at " + describe_common(ga);
      }
    }
    const Poly<Rational> gi = gcd(num, den);
    if (!gi.is_constant() && rep.irreducible.passed) {
      rep.irreducible.passed = false;
      rep.irreducible.witness = tag + " common root " + describe_common(gi);
    }
  }
  for (std::size_t i = 0; i < qs.size() && rep.condition_b.passed; ++i)
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      const Poly<Rational> g = gcd(qs[i], qs[j]);
      if (!g.is_constant()) {
        rep.condition_b.passed = false;
        rep.condition_b.witness = "terms " + std::to_string(i) + ", " + std::to_string(j) + " at " + describe_common(g);
        break;
      }
    }
  if (!rep.condition_a.applicable) rep.condition_a.passed = false;
  rep.certified_minimal = rep.regular.passed && rep.irreducible.passed && rep.condition_a.passed && rep.condition_b.passed;
  if (opts.direct_check && !p.terms.empty())
    rep.direct_minimality = is_minimal_in(assemble(cork_as_bfr(p, CorkView::State)), RegionSpec::cofinite());
  return rep;
}

SufficientMinimalityReport check_sufficient_minimality(const CorkPencil<Complex>& p, const MinimalityOptions& opts) {
  SufficientMinimalityReport rep;
  rep.regular.passed = rep.irreducible.passed = rep.condition_a.passed = rep.condition_b.passed = true;
  const Complex probe(0.5377, 0.3192);
  std::vector<std::vector<Complex>> roots;
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const auto& t = p.terms[i];
    const std::string tag = "term " + std::to_string(i);
    roots.push_back(roots_of_q(t.r));
    if (sigma_min_ratio(t.Ct - probe * t.Dt) <= 1e-12) {
      if (rep.regular.passed) rep.regular.witness = "SingularTermPencil: " + tag;
      rep.regular.passed = false;
      rep.condition_a.applicable = false;
    } else if (rep.condition_a.applicable) {
      for (const auto& mu : roots.back())
        if (rep.condition_a.passed && sigma_min_ratio(t.Ct - mu * t.Dt) <= opts.tol) {
          rep.condition_a.passed = false;
          rep.condition_a.witness = tag + " at " + format_complex(mu);
        }
    }
    const auto ir = irreducibility_report(t.r);
    if (!ir.irreducible && rep.irreducible.passed) {
      rep.irreducible.passed = false;
      rep.irreducible.witness = tag + " common root " + format_complex(ir.common_roots.front());
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      for (const auto& a : roots[i])
        for (const auto& b : roots[j])
          if (rep.condition_b.passed && std::abs(a - b) <= opts.tol * std::max(1.0, std::abs(a))) {
            rep.condition_b.passed = false;
            rep.condition_b.witness = "terms " + std::to_string(i) + ", " + std::to_string(j) + " at " + format_complex(a);
          }
  if (!rep.condition_a.applicable) rep.condition_a.passed = false;
  rep.certified_minimal = rep.regular.passed && rep.irreducible.passed && rep.condition_a.passed && rep.condition_b.passed;
  return rep;
}

}  // namespace ratlin
