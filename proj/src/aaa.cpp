#include "ratlin/aaa.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratlin {

namespace {

bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Eigen::VectorXcd smallest_right_singular_vector(const Eigen::MatrixXcd& loewner, bool real) {
  const Eigen::Index m = loewner.cols();
  Eigen::VectorXcd w;
  if (real) {
    const Eigen::MatrixXd re = loewner.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(re, Eigen::ComputeFullV);
    w = svd.matrixV().col(m - 1).cast<Complex>();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(loewner, Eigen::ComputeFullV);
    w = svd.matrixV().col(m - 1);
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(w(j)) == 0.0) continue;
    w *= std::conj(w(j)) / std::abs(w(j));
    break;
  }
  return w;
}

struct AaaState {
  std::vector<std::size_t> support_index;
  std::vector<Complex> weights;
};

AaaState run_aaa(const SampleSet& samples, double tol, std::size_t max_m) {
  samples.validate();
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "AAA tolerance must be positive");
  if (max_m < 1) throw Error(ErrorCode::InvalidArgument, "max_m must be at least 1");
  const std::size_t npts = samples.points.size();
  const std::size_t s = samples.functions();
  if (npts < 2) throw Error(ErrorCode::DegenerateSamples, "AAA needs at least two sample points");
  if (s == 0) throw Error(ErrorCode::DegenerateSamples, "no function values");
  const bool real = samples.is_real();
  const auto& x = samples.points;
  const auto& f = samples.values;

  std::vector<double> scale(s, 1.0);
  for (std::size_t i = 0; i < s; ++i) {
    double mx = 0.0;
    for (const auto& v : f[i]) mx = std::max(mx, std::abs(v));
    if (mx > 0.0) scale[i] = mx;
  }

  std::vector<std::vector<Complex>> r(s, std::vector<Complex>(npts));
  for (std::size_t i = 0; i < s; ++i) {
    Complex mean(0.0, 0.0);
    for (const auto& v : f[i]) mean += v;
    mean /= static_cast<double>(npts);
    std::fill(r[i].begin(), r[i].end(), mean);
  }

  std::vector<bool> active(npts, true);
  AaaState st;
  double err = std::numeric_limits<double>::infinity();
  while (st.support_index.size() < max_m) {
    std::size_t pick = npts;
    double worst = -1.0;
    for (std::size_t k = 0; k < npts; ++k) {
      if (!active[k]) continue;
      double e = 0.0;
      for (std::size_t i = 0; i < s; ++i) e = std::max(e, std::abs(f[i][k] - r[i][k]) / scale[i]);
      if (e > worst) {
        worst = e;
        pick = k;
      }
    }
    if (pick == npts) break;
    st.support_index.push_back(pick);
    active[pick] = false;
    const std::size_t m = st.support_index.size();

    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < npts; ++k)
      if (active[k]) rows.push_back(k);
    Eigen::MatrixXcd loewner(static_cast<Eigen::Index>(rows.size() * s), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t l = 0; l < m; ++l) {
          const std::size_t k = rows[a], j = st.support_index[l];
          loewner(static_cast<Eigen::Index>(i * rows.size() + a), static_cast<Eigen::Index>(l)) =
              (f[i][k] - f[i][j]) / (x[k] - x[j]) / scale[i];
        }
    Eigen::VectorXcd w;
    if (rows.empty()) {
      w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
      w(static_cast<Eigen::Index>(m - 1)) = 1.0;
    } else {
      w = smallest_right_singular_vector(loewner, real);
    }
    st.weights.assign(w.data(), w.data() + w.size());

    err = 0.0;
    for (std::size_t k = 0; k < npts; ++k) {
      if (!active[k]) {
        for (std::size_t i = 0; i < s; ++i) r[i][k] = f[i][k];
        continue;
      }
      Complex den(0.0, 0.0);
      std::vector<Complex> num(s, Complex(0.0, 0.0));
      for (std::size_t l = 0; l < m; ++l) {
        const std::size_t j = st.support_index[l];
        const Complex c = st.weights[l] / (x[k] - x[j]);
        den += c;
        for (std::size_t i = 0; i < s; ++i) num[i] += c * f[i][j];
      }
      for (std::size_t i = 0; i < s; ++i) {
        r[i][k] = num[i] / den;
        const double e = is_finite(r[i][k]) ? std::abs(f[i][k] - r[i][k]) / scale[i]
                                            : std::numeric_limits<double>::infinity();
        err = std::max(err, e);
      }
    }
    if (err <= tol) break;
  }
  if (!(err <= tol))
    throw Error(ErrorCode::ToleranceNotReached,
                "AAA stopped at m = " + std::to_string(st.support_index.size()) + " with relative error " +
                    std::to_string(err));
  for (const auto& w : st.weights)
    if (std::abs(w) < 1e-300) throw Error(ErrorCode::DegenerateSamples, "AAA produced a zero weight");
  return st;
}

template <class T>
Poly<T> product_except(const std::vector<T>& z, std::size_t skip) {
  Poly<T> p = Poly<T>::one();
  for (std::size_t l = 0; l < z.size(); ++l)
    if (l != skip) p = p * Poly<T>::root_factor(z[l]);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------

void SampleSet::validate() const {
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (!is_finite(points[a])) throw Error(ErrorCode::DegenerateSamples, "sample point is not finite");
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (points[a] == points[b]) throw Error(ErrorCode::DegenerateSamples, "repeated sample point");
  }
  for (const auto& v : values) {
    if (v.size() != points.size()) throw Error(ErrorCode::DimensionMismatch, "values and points differ in length");
    for (const auto& y : v)
      if (!is_finite(y)) throw Error(ErrorCode::DegenerateSamples, "sample value is not finite");
  }
}

bool SampleSet::is_real() const {
  auto real = [](const Complex& z) { return z.imag() == 0.0; };
  if (!std::all_of(points.begin(), points.end(), real)) return false;
  for (const auto& v : values)
    if (!std::all_of(v.begin(), v.end(), real)) return false;
  return true;
}

template <class T>
Barycentric<T> Barycentric<T>::make(std::vector<T> z, std::vector<T> w, std::vector<T> g) {
  if (z.empty()) throw Error(ErrorCode::InvalidArgument, "barycentric form needs at least one support");
  if (w.size() != z.size() || g.size() != z.size())
    throw Error(ErrorCode::DimensionMismatch, "supports, weights and values differ in length");
  for (std::size_t a = 0; a < z.size(); ++a) {
    if (is_zero(w[a])) throw Error(ErrorCode::InvalidArgument, "zero barycentric weight");
    for (std::size_t b = a + 1; b < z.size(); ++b)
      if (z[a] == z[b]) throw Error(ErrorCode::InvalidArgument, "repeated support point");
  }
  return Barycentric{std::move(z), std::move(w), std::move(g)};
}

template struct Barycentric<Rational>;
template struct Barycentric<Complex>;

QBarycentric rationalize(const BarycentricApprox& r) {
  auto snap = [](const std::vector<Complex>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& c : v) {
      if (c.imag() != 0.0) throw Error(ErrorCode::NotRationalizable, "complex barycentric data");
      out.push_back(exact_from_double(c.real()));
    }
    return out;
  };
  return QBarycentric::make(snap(r.z), snap(r.w), snap(r.g));
}

BarycentricApprox to_numeric(const QBarycentric& r) {
  auto conv = [](const std::vector<Rational>& v) {
    std::vector<Complex> out;
    for (const auto& q : v) out.push_back(to_complex(q));
    return out;
  };
  return BarycentricApprox{conv(r.z), conv(r.w), conv(r.g)};
}

std::vector<BarycentricApprox> set_valued_aaa(const SampleSet& samples, double tol, std::size_t max_m) {
  const AaaState st = run_aaa(samples, tol, max_m);
  std::vector<Complex> z;
  for (auto k : st.support_index) z.push_back(samples.points[k]);
  std::vector<BarycentricApprox> out;
  for (const auto& vals : samples.values) {
    std::vector<Complex> g;
    for (auto k : st.support_index) g.push_back(vals[k]);
    out.push_back(BarycentricApprox::make(z, st.weights, std::move(g)));
  }
  return out;
}

BarycentricApprox aaa_approximate(const SampleSet& samples, double tol, std::size_t max_m) {
  if (samples.functions() != 1) throw Error(ErrorCode::InvalidArgument, "aaa_approximate takes exactly one function");
  return set_valued_aaa(samples, tol, max_m).front();
}

double relative_sample_error(const BarycentricApprox& r, const SampleSet& samples, std::size_t which) {
  const auto& v = samples.values.at(which);
  double mx = 0.0, err = 0.0;
  for (const auto& y : v) mx = std::max(mx, std::abs(y));
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Complex y = barycentric_eval(r, samples.points[k]);
    err = std::max(err, is_finite(y) ? std::abs(y - v[k]) : std::numeric_limits<double>::infinity());
  }
  return mx > 0.0 ? err / mx : err;
}

Complex barycentric_eval(const BarycentricApprox& r, const Complex& lambda) {
  Complex num(0.0, 0.0), den(0.0, 0.0);
  for (std::size_t j = 0; j < r.m(); ++j) {
    if (lambda == r.z[j]) return r.g[j];
    const Complex c = r.w[j] / (lambda - r.z[j]);
    num += c * r.g[j];
    den += c;
  }
  if (den == Complex(0.0, 0.0)) return Complex(std::numeric_limits<double>::infinity(), 0.0);
  return num / den;
}

Rational barycentric_eval(const QBarycentric& r, const Rational& lambda) {
  Rational num = 0, den = 0;
  for (std::size_t j = 0; j < r.m(); ++j) {
    if (lambda == r.z[j]) return r.g[j];
    const Rational c = r.w[j] / (lambda - r.z[j]);
    num += c * r.g[j];
    den += c;
  }
  if (is_zero(den)) throw Error(ErrorCode::NotDefinedAt, "barycentric approximant has a pole", format_rational(lambda));
  return num / den;
}

template <class T>
RealizationPencil<T> realization_pencil(const Barycentric<T>& r) {
  const std::size_t m = r.m();
  RealizationPencil<T> p{Matrix<T>(m, m), Matrix<T>(m, m), std::vector<T>(m), std::vector<T>(m, T(0))};
  for (std::size_t j = 0; j < m; ++j) {
    p.E(0, j) = r.w[j];
    p.a[j] = r.g[j] * r.w[j];
  }
  for (std::size_t i = 1; i < m; ++i) {
    p.E(i, i - 1) = -r.z[i - 1];
    p.E(i, i) = r.z[i];
    p.F(i, i - 1) = T(-1);
    p.F(i, i) = T(1);
  }
  p.b[0] = T(1);
  return p;
}

template RealizationPencil<Rational> realization_pencil(const Barycentric<Rational>&);
template RealizationPencil<Complex> realization_pencil(const Barycentric<Complex>&);

std::pair<RealizationPencil<Rational>, SystemMatrix> barycentric_to_pencil(const QBarycentric& r) {
  auto rp = realization_pencil(r);
  const std::size_t m = r.m();
  QPolyMatrix b(m, 1), c(1, m);
  for (std::size_t j = 0; j < m; ++j) {
    b(j, 0) = Poly<Rational>::constant(-rp.b[j]);
    c(0, j) = Poly<Rational>::constant(-rp.a[j]);
  }
  SystemMatrix sys = SystemMatrix::make(pencil(rp.E, QMatrix(-rp.F)), std::move(b), std::move(c), QPolyMatrix(1, 1));
  return {std::move(rp), std::move(sys)};
}

template <class T>
std::pair<Poly<T>, Poly<T>> barycentric_to_quotient(const Barycentric<T>& r) {
  Poly<T> p, q;
  for (std::size_t j = 0; j < r.m(); ++j) {
    const Poly<T> l = product_except(r.z, j);
    p += l * (r.g[j] * r.w[j]);
    q += l * r.w[j];
  }
  return {p, q};
}

template std::pair<Poly<Rational>, Poly<Rational>> barycentric_to_quotient(const Barycentric<Rational>&);
template std::pair<Poly<Complex>, Poly<Complex>> barycentric_to_quotient(const Barycentric<Complex>&);

IrreducibilityReport irreducibility_report(const QBarycentric& r) {
  const auto [p, q] = barycentric_to_quotient(r);
  IrreducibilityReport rep;
  rep.common_factor = gcd(p, q);
  rep.irreducible = rep.common_factor.is_constant();
  if (!rep.irreducible) rep.common_roots = numeric_roots(rep.common_factor);
  return rep;
}

IrreducibilityReport irreducibility_report(const BarycentricApprox& r) {
  const bool real = std::all_of(r.z.begin(), r.z.end(), [](const Complex& c) { return c.imag() == 0.0; }) &&
                    std::all_of(r.w.begin(), r.w.end(), [](const Complex& c) { return c.imag() == 0.0; }) &&
                    std::all_of(r.g.begin(), r.g.end(), [](const Complex& c) { return c.imag() == 0.0; });
  if (real) return irreducibility_report(rationalize(r));
  const auto [p, q] = barycentric_to_quotient(r);
  IrreducibilityReport rep;
  rep.exact = false;
  if (q.is_constant()) return rep;
  for (const Complex& root : numeric_roots(q)) {
    double scale = 0.0, pw = 1.0;
    for (const auto& c : p.coeffs()) {
      scale += std::abs(c) * pw;
      pw *= std::abs(root);
    }
    if (std::abs(p.eval(root)) <= 1e-10 * std::max(scale, 1e-300) || p.is_zero()) rep.common_roots.push_back(root);
  }
  rep.irreducible = rep.common_roots.empty();
  return rep;
}

std::vector<Poly<Rational>> state_dual_row(const QBarycentric& r) {
  std::vector<Poly<Rational>> n;
  for (std::size_t j = 0; j < r.m(); ++j) n.push_back(product_except(r.z, j));
  return n;
}

StatePencilStructure state_pencil_structure(const QBarycentric& r) {
  const auto rp = realization_pencil(r);
  const std::size_t m = r.m();
  const QPolyMatrix l = pencil(rp.E, QMatrix(-rp.F));
  const QPolyMatrix k = l.block(1, 0, m - 1, m);
  const auto n = state_dual_row(r);

  StatePencilStructure st;
  const auto inv = smith_invariant_factors(k);
  st.k_full_rank = inv.size() == m - 1 && std::all_of(inv.begin(), inv.end(), [](const Poly<Rational>& s) { return s.is_constant(); });
  st.k_highest_full_rank = field_rank(coefficient(k, 1)) == m - 1;
  st.dual = true;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    Poly<Rational> acc;
    for (std::size_t j = 0; j < m; ++j) acc += k(i, j) * n[j];
    if (!acc.is_zero()) st.dual = false;
  }
  Poly<Rational> mn;
  for (std::size_t j = 0; j < m; ++j) mn += l(0, j) * n[j];
  st.m_times_dual_is_q = mn == barycentric_to_quotient(r).second;
  return st;
}

bool verify_state_pencil_structure(const QBarycentric& r) { return state_pencil_structure(r).ok(); }

}  // namespace ratlin
