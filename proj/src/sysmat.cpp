#include "ratlin/sysmat.hpp"

#include <algorithm>
#include <sstream>

namespace ratlin {

namespace {

void require_pencil(const QPolyMatrix& m, const char* name) {
  if (auto d = poly_matrix_degree(m); d && *d > 1)
    throw Error(ErrorCode::InvalidArgument, std::string("block ") + name + " has degree > 1");
}

std::vector<int> nonzero_orders(const LocalStructure& ls) {
  std::vector<int> out;
  for (int v : ls.orders)
    if (v != 0) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

// Product of the invariant factors: the gcd of all maximal minors when the
// matrix has full normal rank k.
Poly<Rational> determinantal_divisor(const QPolyMatrix& m, std::size_t k) {
  const auto s = smith_invariant_factors(m);
  if (s.size() < k) return Poly<Rational>();
  Poly<Rational> d = Poly<Rational>::one();
  for (std::size_t i = 0; i < k; ++i) d = d * s[i];
  return d;
}

}  // namespace

SystemMatrix SystemMatrix::make(QPolyMatrix A, QPolyMatrix B, QPolyMatrix C, QPolyMatrix D) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw Error(ErrorCode::DimensionMismatch, "state matrix is not square");
  if (n == 0) {
    B = QPolyMatrix(0, D.cols());
    C = QPolyMatrix(D.rows(), 0);
  }
  if (B.rows() != n || C.cols() != n || B.cols() != D.cols() || C.rows() != D.rows())
    throw Error(ErrorCode::DimensionMismatch, "system matrix blocks are not conformal");
  require_pencil(A, "A");
  require_pencil(B, "B");
  require_pencil(C, "C");
  require_pencil(D, "D");
  if (n > 0 && poly_normal_rank(A) < n) throw Error(ErrorCode::StateNotRegular, "state matrix is singular");
  return SystemMatrix{std::move(A), std::move(B), std::move(C), std::move(D)};
}

SystemMatrix SystemMatrix::stateless(QPolyMatrix D) {
  return make(QPolyMatrix(0, 0), QPolyMatrix(), QPolyMatrix(), std::move(D));
}

QPolyMatrix SystemMatrix::assembled() const {
  QPolyMatrix top = hstack(A, B);
  if (n() == 0) top = QPolyMatrix(0, D.cols());
  QPolyMatrix bottom = n() == 0 ? D : hstack(QPolyMatrix(-C), D);
  return vstack(top, bottom);
}

SystemMatrix SystemMatrix::reversed() const {
  return SystemMatrix{pencil_reverse(A), pencil_reverse(B), pencil_reverse(C), pencil_reverse(D)};
}

// ---------------------------------------------------------------------------

RegionSpec RegionSpec::finite_set(std::vector<Rational> pts) {
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "finite region must be nonempty");
  return RegionSpec{RegionKind::FiniteSet, std::move(pts), 0};
}

RegionSpec RegionSpec::cofinite(std::vector<Rational> excluded) {
  return RegionSpec{RegionKind::Cofinite, std::move(excluded), 0};
}

RegionSpec RegionSpec::infinity(int g) { return RegionSpec{RegionKind::Infinity, {}, g}; }

bool RegionSpec::contains(const Rational& x) const {
  const bool listed = std::find(points.begin(), points.end(), x) != points.end();
  switch (kind) {
    case RegionKind::FiniteSet: return listed;
    case RegionKind::Cofinite: return !listed;
    case RegionKind::Infinity: return false;
  }
  return false;
}

bool RegionSpec::contains(const Locus& l) const {
  if (l.is_rational()) return contains(l.point());
  return kind == RegionKind::Cofinite;
}

std::string RegionSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case RegionKind::FiniteSet: os << "{"; break;
    case RegionKind::Cofinite: os << "C \\ {"; break;
    case RegionKind::Infinity: return "infinity (grade " + std::to_string(grade) + ")";
  }
  for (std::size_t i = 0; i < points.size(); ++i) os << (i ? ", " : "") << format_rational(points[i]);
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------

QRatMatrix transfer_function(const SystemMatrix& p) {
  QRatMatrix d = to_rat(p.D);
  if (p.n() == 0) return d;
  const QRatMatrix x = solve(to_rat(p.A), to_rat(p.B));
  return d + to_rat(p.C) * x;
}

bool is_minimal_at(const SystemMatrix& p, const Rational& lambda0) {
  const std::size_t n = p.n();
  if (n == 0) return true;
  const QMatrix a = eval(p.A, lambda0);
  return field_rank(vstack(a, eval(p.C, lambda0))) == n && field_rank(hstack(a, eval(p.B, lambda0))) == n;
}

MinimalityResult minimality_in(const SystemMatrix& p, const RegionSpec& omega) {
  MinimalityResult res;
  const std::size_t n = p.n();
  if (n == 0) return res;
  if (omega.kind == RegionKind::FiniteSet) {
    for (const auto& x : omega.points)
      if (!is_minimal_at(p, x)) {
        res.minimal = false;
        res.witness = format_rational(x);
        res.witness_locus = Locus::at(x);
        return res;
      }
    return res;
  }
  if (omega.kind == RegionKind::Infinity) throw Error(ErrorCode::InvalidArgument, "minimality at infinity needs the reversed system");

  for (const QPolyMatrix& m : {vstack(p.A, p.C), hstack(p.A, p.B)}) {
    Poly<Rational> h = determinantal_divisor(m, n);
    if (h.is_zero()) {
      res.minimal = false;
      res.witness = "everywhere (normal rank below n)";
      res.witness_locus = Locus::at(Rational(0));
      return res;
    }
    for (const auto& e : omega.points) {
      const Poly<Rational> f = Poly<Rational>::root_factor(e);
      while (!h.is_constant() && divides(f, h)) h = exact_div(h, f);
    }
    if (h.is_constant()) continue;
    res.minimal = false;
    const auto roots = rational_roots(h);
    if (!roots.empty()) {
      res.witness = format_rational(roots.front());
      res.witness_locus = Locus::at(roots.front());
    } else {
      res.witness_locus = Locus{squarefree_part(h)};
      res.witness = res.witness_locus->label();
    }
    return res;
  }
  return res;
}

bool is_minimal_in(const SystemMatrix& p, const RegionSpec& omega) { return minimality_in(p, omega).minimal; }

LinearizationReport check_linearization_in(const SystemMatrix& p, const QRatMatrix& g, const RegionSpec& omega) {
  if (omega.kind == RegionKind::Infinity) return check_linearization_at_infinity(p, g, omega.grade);
  const MinimalityResult mr = minimality_in(p, omega);
  if (!mr.minimal)
    throw Error(ErrorCode::PreconditionNotMinimal, "system matrix is not minimal in " + omega.describe(), mr.witness);

  const QPolyMatrix l = p.assembled();
  const std::size_t n = p.n();
  if (l.rows() < n + g.rows() || l.cols() < n + g.cols() || l.rows() - n - g.rows() != l.cols() - n - g.cols())
    throw Error(ErrorCode::DimensionMismatch, "pencil and target sizes are incompatible");

  LinearizationReport rep;
  rep.n = n;
  rep.s = l.rows() - n - g.rows();
  rep.nrank_pencil = poly_normal_rank(l);
  rep.nrank_target = normal_rank(g);
  rep.rank_condition = rep.nrank_pencil == rep.nrank_target + n + rep.s;
  if (!rep.rank_condition)
    rep.witness = "normal rank " + std::to_string(rep.nrank_pencil) + " != " + std::to_string(rep.nrank_target) + " + " +
                  std::to_string(n) + " + " + std::to_string(rep.s);

  const SmithMcMillan sm_g(g);
  const SmithMcMillan sm_a(to_rat(p.A));
  const SmithMcMillan sm_l(to_rat(l));
  rep.pole_match = true;
  rep.zero_match = true;
  for (const Locus& locus : loci_of({&sm_g, &sm_a, &sm_l})) {
    if (!omega.contains(locus)) continue;
    const LocalStructure og = sm_g.orders_at(locus);
    const std::vector<int> poles = og.pole_multiplicities();
    const std::vector<int> zeros = og.zero_multiplicities();
    const std::vector<int> state = nonzero_orders(sm_a.orders_at(locus));
    const std::vector<int> pencil = nonzero_orders(sm_l.orders_at(locus));
    if (!poles.empty() || !zeros.empty()) rep.target_structure.push_back(PoleZeroEntry{og, poles, zeros});
    auto note = [&](const std::string& what) {
      if (!rep.witness.empty()) return;
      rep.witness = what;
      rep.witness_locus = locus;
    };
    if (poles != state) {
      rep.pole_match = false;
      note(locus.label() + ": target poles " + join(poles) + " vs state elementary divisors " + join(state));
    }
    if (zeros != pencil) {
      rep.zero_match = false;
      note(locus.label() + ": target zeros " + join(zeros) + " vs pencil elementary divisors " + join(pencil));
    }
  }
  rep.is_linearization = rep.rank_condition && rep.pole_match && rep.zero_match;
  return rep;
}

LinearizationReport check_linearization_at_infinity(const SystemMatrix& p, const QRatMatrix& g, int grade) {
  const SystemMatrix rp = p.reversed();
  const RegionSpec zero = RegionSpec::finite_set({Rational(0)});
  if (rp.n() > 0 && poly_normal_rank(rp.A) < rp.n())
    throw Error(ErrorCode::StateNotRegular, "reversed state matrix is singular");
  if (!is_minimal_at(rp, Rational(0)))
    throw Error(ErrorCode::PreconditionNotMinimal, "rev_1 of the system matrix is not minimal at 0", "0");
  return check_linearization_in(rp, ratmat_reverse(g, grade), zero);
}

}  // namespace ratlin
