#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlin/aaa.hpp"
#include "ratlin/blockfullrank.hpp"
#include "ratlin/functions.hpp"

namespace ratlin {

/// Scalar basis f = (f_0, ..., f_{k-1}), f_0 = 1, with (X - λY) f(λ) = 0.
struct BasisRelation {
  std::string name;
  std::vector<RatFun<Rational>> f;
  QMatrix X, Y;  // (k-1) x k

  std::size_t k() const { return f.size(); }
  /// X - λY
  QPolyMatrix relation_pencil() const { return pencil(X, QMatrix(-Y)); }
};

/// f_i = λ^i; row i of X - λY is λ e_i - e_{i+1}.
BasisRelation monomial_relation(std::size_t k);
/// Chebyshev polynomials of the first kind via the three-term recurrence.
BasisRelation chebyshev_relation(std::size_t k);
/// A user-supplied relation, checked with certify_relation.
BasisRelation custom_relation(std::vector<RatFun<Rational>> f, QMatrix X, QMatrix Y);

struct RelationCertificate {
  bool f0_is_one = false;
  bool annihilates = false;       // (X - λY) f = 0 identically
  bool rank_everywhere = false;   // (k-1)-st determinantal divisor of X - λY is constant
  bool ok() const { return f0_is_one && annihilates && rank_everywhere; }
};

RelationCertificate certify_relation(const BasisRelation& rel);

template <class T>
struct NlepTerm {
  Matrix<T> C, D;                          // the term is (C - λD) g(λ)
  std::optional<ScalarFunction> function;  // for residuals against the original problem
};

/// F(λ) = Σ (A_i - λB_i) f_i(λ) + Σ (C_i - λD_i) g_i(λ), all blocks n x n.
template <class T>
struct NlepModel {
  std::size_t n = 0;
  std::vector<Matrix<T>> A, B;
  BasisRelation rel;
  std::vector<NlepTerm<T>> terms;

  void validate() const;
  /// Q(λ) = Σ_j Q_j λ^j rewritten in the basis of `rel` (monomial or Chebyshev
  /// style: deg f_i = i) with k = max(1, deg Q).
  static NlepModel from_polynomial(const std::vector<Matrix<T>>& q, const std::string& basis,
                                   std::vector<NlepTerm<T>> terms = {});

  Matrix<Complex> eval_polynomial_part(const Complex& lambda) const;
  /// FunctionNotEvaluable when a term has no registry function or is off its domain.
  Matrix<Complex> eval_F(const Complex& lambda) const;
};

template <class T>
struct LowRankFactors {
  Matrix<T> Ct, Dt, Z;  // C = Ct Z^*, D = Dt Z^*; Z is n x rank
  std::size_t rank = 0;
};

/// Numeric: Z from the SVD of [C; D] (orthonormal columns, rank by singular
/// values above tol * σ_max). Exact: Z^* is the reduced row echelon basis of
/// the row space of [C; D] and Ct, Dt are the pivot columns of C, D.
LowRankFactors<Complex> low_rank_factorize(const CMatrix& C, const CMatrix& D, double tol = 1e-12);
LowRankFactors<Rational> low_rank_factorize(const QMatrix& C, const QMatrix& D, double tol = 0.0);

enum class CorkMode { Polynomial, Full, Trimmed };

template <class T>
struct CorkTermData {
  Matrix<T> Ct, Dt, Z;  // full mode: Ct = C, Dt = D, Z = I_n
  std::size_t rank = 0;
  Barycentric<T> r;
  std::optional<ScalarFunction> function;
};

/// L(λ) = L0 + λL1 with rows [top n | relation (k-1)n | state] and columns
/// [k n | state].
template <class T>
struct CorkPencil {
  CorkMode mode = CorkMode::Polynomial;
  std::size_t n = 0;
  BasisRelation rel;
  std::vector<Matrix<T>> A, B;
  std::vector<CorkTermData<T>> terms;
  Matrix<T> L0, L1;

  std::size_t k() const { return rel.k(); }
  std::size_t dim() const { return L0.rows(); }
  std::size_t state_offset() const { return k() * n; }
  std::size_t state_size() const { return dim() - state_offset(); }

  Matrix<Complex> eval(const Complex& lambda) const;
  /// R(λ) = Σ (A_i - λB_i) f_i + Σ (Ct_i - λDt_i) Z_i^* r_i(λ), numerically.
  Matrix<Complex> eval_target(const Complex& lambda) const;
  /// Roots of q_i for every term: the finite eigenvalues of the state block.
  std::vector<Complex> state_eigenvalues() const;
};

template <class T>
CorkPencil<T> build_cork(const std::vector<Matrix<T>>& A, const std::vector<Matrix<T>>& B, const BasisRelation& rel);

template <class T>
CorkPencil<T> build_cork_aaa(const NlepModel<T>& model, const std::vector<Barycentric<T>>& approxs);

template <class T>
CorkPencil<T> build_trimmed_cork(const NlepModel<T>& model, const std::vector<Barycentric<T>>& approxs,
                                 const std::vector<LowRankFactors<T>>& factors);

/// Exact R(λ) carried by an exact CORK pencil.
QRatMatrix cork_target(const CorkPencil<Rational>& p);

CorkPencil<Complex> to_complex(const CorkPencil<Rational>& p);

enum class CorkView {
  State,       // state matrix = the E - λF block, K2 empty, N1 = (f ⊗ I)^T
  EmptyState,  // no state; N1 carries the resolvents (E_i - λF_i)^{-1} b_i
};

BfrParts cork_as_bfr(const CorkPencil<Rational>& p, CorkView view = CorkView::State);

struct ConditionOutcome {
  bool applicable = true;
  bool passed = false;
  std::string witness;
};

struct SufficientMinimalityReport {
  bool exact = false;
  ConditionOutcome regular;      // C_i - λD_i regular (full rank in the trimmed factor)
  ConditionOutcome irreducible;  // gcd(p_i, q_i) = 1
  ConditionOutcome condition_a;  // Ct_i - λDt_i keeps full column rank at the roots of q_i
  ConditionOutcome condition_b;  // q_i and q_j share no root
  bool certified_minimal = false;
  std::optional<bool> direct_minimality;  // exact determinantal check of the state view
  std::string summary() const;
};

struct MinimalityOptions {
  double tol = 1e-8;
  bool direct_check = false;
};

SufficientMinimalityReport check_sufficient_minimality(const CorkPencil<Rational>& p, const MinimalityOptions& opts = {});
SufficientMinimalityReport check_sufficient_minimality(const CorkPencil<Complex>& p, const MinimalityOptions& opts = {});

}  // namespace ratlin
