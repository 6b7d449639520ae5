#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratlin/sysmat.hpp"

namespace ratlin {

/// Sample points and the values of one or more functions on them.
struct SampleSet {
  std::vector<Complex> points;
  std::vector<std::vector<Complex>> values;  // values[i][k] = g_i(points[k])

  /// Distinct points, finite values, one value per point for every function.
  void validate() const;
  bool is_real() const;
  std::size_t functions() const { return values.size(); }
};

/// r(λ) = Σ g_j w_j / (λ - z_j)  /  Σ w_j / (λ - z_j).
template <class T>
struct Barycentric {
  std::vector<T> z, w, g;

  std::size_t m() const { return z.size(); }

  /// Checks equal lengths, m >= 1, distinct supports and nonzero weights.
  static Barycentric make(std::vector<T> z, std::vector<T> w, std::vector<T> g);
};

using BarycentricApprox = Barycentric<Complex>;
using QBarycentric = Barycentric<Rational>;

/// Snaps every component to the exact value of its double; NotRationalizable
/// when any imaginary part is nonzero.
QBarycentric rationalize(const BarycentricApprox& r);
BarycentricApprox to_numeric(const QBarycentric& r);

/// Greedy AAA on a single function. Throws ToleranceNotReached when max_m
/// supports do not reach tol * max|g| on the sample set.
BarycentricApprox aaa_approximate(const SampleSet& samples, double tol, std::size_t max_m);

/// AAA with supports and weights shared by all functions of the sample set.
std::vector<BarycentricApprox> set_valued_aaa(const SampleSet& samples, double tol, std::size_t max_m);

/// Max |r - g| / max|g| over the samples of function `which`.
double relative_sample_error(const BarycentricApprox& r, const SampleSet& samples, std::size_t which = 0);

/// Value at λ; the interpolated value at a support, infinity at a pole.
Complex barycentric_eval(const BarycentricApprox& r, const Complex& lambda);
/// Exact value; NotDefinedAt at a pole.
Rational barycentric_eval(const QBarycentric& r, const Rational& lambda);

/// [E - λF, -b; a^T, 0] with first row of E the weights.
template <class T>
struct RealizationPencil {
  Matrix<T> E, F;
  std::vector<T> a, b;
};

template <class T>
RealizationPencil<T> realization_pencil(const Barycentric<T>& r);

/// The realization pencil together with the system matrix with state E - λF,
/// B = -b, C = -a^T, D = 0, whose transfer function is r.
std::pair<RealizationPencil<Rational>, SystemMatrix> barycentric_to_pencil(const QBarycentric& r);

/// p = Σ g_j w_j Π_{l≠j}(λ - z_l) and q = Σ w_j Π_{l≠j}(λ - z_l), unreduced.
template <class T>
std::pair<Poly<T>, Poly<T>> barycentric_to_quotient(const Barycentric<T>& r);

struct IrreducibilityReport {
  bool irreducible = true;
  bool exact = true;                    // decided by an exact gcd
  Poly<Rational> common_factor;         // monic gcd(p, q) on the exact path
  std::vector<Complex> common_roots;    // numeric roots of the common factor
};

IrreducibilityReport irreducibility_report(const QBarycentric& r);
/// Exact when the data is real; otherwise roots of q at which |p| is below
/// 1e-10 times the coefficient scale of p are reported.
IrreducibilityReport irreducibility_report(const BarycentricApprox& r);

struct StatePencilStructure {
  bool k_full_rank = false;      // K(λ0) of full row rank at every λ0
  bool k_highest_full_rank = false;
  bool dual = false;             // K N^T = 0
  bool m_times_dual_is_q = false;
  bool ok() const { return k_full_rank && k_highest_full_rank && dual && m_times_dual_is_q; }
};

/// Splits E - λF into its first row M and the rest K and checks that [M; K]
/// is a strong block minimal bases pencil for q with dual N = Π(λ - z_l)
/// [1/(λ - z_1), ..., 1/(λ - z_m)].
StatePencilStructure state_pencil_structure(const QBarycentric& r);
bool verify_state_pencil_structure(const QBarycentric& r);

/// The dual row N(λ) above as polynomials.
std::vector<Poly<Rational>> state_dual_row(const QBarycentric& r);

}  // namespace ratlin
