#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlin/smith.hpp"

namespace ratlin {

/// Linear polynomial system matrix [A B; -C D] with state dimension n = rows(A).
struct SystemMatrix {
  QPolyMatrix A, B, C, D;

  /// Validates conformal shapes and degree <= 1. A must be regular when n > 0.
  static SystemMatrix make(QPolyMatrix A, QPolyMatrix B, QPolyMatrix C, QPolyMatrix D);
  /// n = 0: the pencil D on its own.
  static SystemMatrix stateless(QPolyMatrix D);

  std::size_t n() const { return A.rows(); }
  std::size_t out_rows() const { return D.rows(); }
  std::size_t in_cols() const { return D.cols(); }
  QPolyMatrix assembled() const;
  /// rev_1 applied blockwise.
  SystemMatrix reversed() const;
};

enum class RegionKind { FiniteSet, Cofinite, Infinity };

struct RegionSpec {
  RegionKind kind = RegionKind::Cofinite;
  std::vector<Rational> points;  // members (finite set) or exclusions (cofinite)
  int grade = 0;

  static RegionSpec finite_set(std::vector<Rational> pts);
  static RegionSpec cofinite(std::vector<Rational> excluded = {});
  static RegionSpec infinity(int g);

  bool contains(const Rational& x) const;
  /// Exclusions are always rational, so a locus without rational roots lies in
  /// every cofinite region and in no finite set.
  bool contains(const Locus& l) const;
  std::string describe() const;
};

struct LinearizationReport {
  bool is_linearization = false;
  bool rank_condition = false;
  bool pole_match = false;
  bool zero_match = false;
  std::string witness;  // first mismatching point and orders, empty when all pass
  std::optional<Locus> witness_locus;
  std::size_t nrank_pencil = 0, nrank_target = 0, n = 0, s = 0;
  std::vector<PoleZeroEntry> target_structure;  // poles/zeros of the target in the region
};

/// D + C A^{-1} B, exact; SingularStateMatrix if A is singular.
QRatMatrix transfer_function(const SystemMatrix& p);

/// rank [A(λ0); C(λ0)] = rank [A(λ0) B(λ0)] = n.
bool is_minimal_at(const SystemMatrix& p, const Rational& lambda0);

struct MinimalityResult {
  bool minimal = true;
  std::string witness;
  std::optional<Locus> witness_locus;
};

/// Finite set: pointwise. Cofinite: the n-th determinantal divisors of [A; C]
/// and [A B], with excluded roots divided out, must be constant.
MinimalityResult minimality_in(const SystemMatrix& p, const RegionSpec& omega);
bool is_minimal_in(const SystemMatrix& p, const RegionSpec& omega);

/// Spectral characterization of "linearization in Ω". Throws
/// PreconditionNotMinimal (with witness) when P is not minimal in Ω.
LinearizationReport check_linearization_in(const SystemMatrix& p, const QRatMatrix& g, const RegionSpec& omega);

/// rev_1 P against rev_g G at the single point 0.
LinearizationReport check_linearization_at_infinity(const SystemMatrix& p, const QRatMatrix& g, int grade);

}  // namespace ratlin
