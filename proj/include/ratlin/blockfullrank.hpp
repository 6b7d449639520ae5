#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratlin/sysmat.hpp"

namespace ratlin {

/// Blocks of a block full rank linearization
///
///   [ A   B   0    ]
///   [ -C  M   K2^T ]
///   [ 0   K1  0    ]
///
/// with dual rational bases N1, N2 (K_i N_i^T = 0). Either K_i may be empty,
/// in which case N_i is a square matrix invertible in the region of interest.
struct BfrParts {
  QPolyMatrix A, B, C, M, K1, K2;
  QRatMatrix N1, N2;

  std::size_t n() const { return A.rows(); }
};

enum class BfrLayout {
  Standard,   // [A B 0; -C M K2^T; 0 K1 0]
  StateLast,  // [M K2^T -C; K1 0 0; B 0 A]
};

/// Shapes, degrees, regularity of A and duality K_i N_i^T = 0 with [K_i; N_i]
/// of full normal rank. Empty K blocks are normalized to 0 x cols.
BfrParts validate(BfrParts parts);

/// The system matrix with state A, B' = [B 0], C' = [C; 0] and
/// D' = [M K2^T; K1 0].
SystemMatrix assemble(const BfrParts& parts);

/// The assembled pencil in either layout.
QPolyMatrix pencil_in_layout(const BfrParts& parts, BfrLayout layout);

struct BfrShape {
  std::size_t n = 0, m_rows = 0, m_cols = 0, k1 = 0, k2 = 0;
};

/// Splits a pencil given in `layout` back into blocks. N1, N2 are taken from
/// the arguments (empty means: compute with dual_basis_for, or identity when
/// the K block is empty).
BfrParts ingest(const QPolyMatrix& pencil, BfrLayout layout, const BfrShape& shape, QRatMatrix n1 = {},
                QRatMatrix n2 = {});

/// Rational basis N with K N^T = 0 and [K; N] of full normal rank, from the
/// exact nullspace over Q(λ); each row is scaled to a primitive polynomial row.
QRatMatrix dual_basis_for(const QPolyMatrix& k);

struct RowDegreeProfile {
  std::vector<Degree> row_degrees;
  std::optional<int> t;           // present iff all rows share a degree
  bool reversal_ok = false;       // rev_t N defined at 0 with every row nonzero there
};

RowDegreeProfile row_degree_profile(const QRatMatrix& n);

/// Rank condition rank[A; -N2 C] = rank[A  B N1^T] = n at every point of the
/// region. Throws DualBasisNotFullRankInRegion when a K_i or N_i is not
/// defined with full row rank somewhere in the region.
bool check_finite_condition(const BfrParts& parts, const RegionSpec& omega);

struct InfinityCheck {
  bool passed = false;
  int grade = 0;  // 1 + t1 + t2
  std::string reason;
};

/// Rank condition for rev_1 L at 0 with rev_{t_i} N_i. Throws
/// NonUniformRowDegrees or ReversedBasisRankDeficient when the dual bases do
/// not qualify; a failing rank condition is reported, not thrown.
InfinityCheck check_infinity_condition(const BfrParts& parts);

/// N2 [M + C A^{-1} B] N1^T.
QRatMatrix recover_R(const BfrParts& parts);

// ---------------------------------------------------------------------------
// Strong block minimal bases construction.

/// t x (t+1) pencil with rows λ e_j - e_{j+1}; its dual is (1, λ, ..., λ^t).
QPolyMatrix monomial_minimal_basis(std::size_t t);

/// M, K1, K2, N1, N2 for D(λ) of degree t1 + t2 + 1 with
/// K_i = L_{t_i} (x) I and N_i = (1, λ, ..., λ^{t_i}) (x) I.
BfrParts sbmb_pencil_for(const QPolyMatrix& d, std::size_t t1, std::size_t t2);

/// Constant K̂ with K̂ N^T = I, such that [K; K̂] is unimodular.
QMatrix unimodular_completion(const QPolyMatrix& k, const QRatMatrix& n);

/// Controllability and observability ranks of (A, B, C).
bool is_minimal_realization(const QMatrix& a, const QMatrix& b, const QMatrix& c);

/// [X(λI - A)Y, X B K̂1, 0; -K̂2^T C Y, M, K2^T; 0, K1, 0] for a strong block
/// minimal bases pencil (M, K1, K2, N1, N2 in `pencil`) of sharp degree.
BfrParts build_sbmb_linearization(const BfrParts& pencil, const QMatrix& a, const QMatrix& b, const QMatrix& c,
                                  const QMatrix& x, const QMatrix& y);

}  // namespace ratlin
