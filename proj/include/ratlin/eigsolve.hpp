#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlin/cork.hpp"

namespace ratlin {

enum class EigenClass { Unclassified, Zero, Pole, Infinite };

std::string to_string(EigenClass c);

struct Eigenpair {
  Complex value{0.0, 0.0};
  bool infinite = false;
  Complex alpha{0.0, 0.0}, beta{0.0, 0.0};  // value = alpha / beta
  std::vector<Complex> right_vector;         // unit 2-norm
  std::vector<Complex> recovered_vector;     // leading n block, unit 2-norm
  double residual = 0.0;                     // against R, when computed
  std::optional<double> residual_nonlinear;  // against F, when computed
  EigenClass cls = EigenClass::Unclassified;
};

/// Eigenvalues of L0 + λL1, i.e. of the generalized problem L0 x = λ(-L1) x,
/// through LAPACK's QZ (zggev). Infinite when |β| <= 1e-14 |α|. Finite values
/// come first, ordered by real then imaginary part.
std::vector<Eigenpair> qz_solve(const CMatrix& L0, const CMatrix& L1);
/// Square pencil of degree <= 1; NonSquare otherwise.
std::vector<Eigenpair> qz_solve(const QPolyMatrix& pencil);

/// ‖(L0 + λL1) v‖ for a finite pair.
double pencil_residual(const CMatrix& L0, const CMatrix& L1, const Eigenpair& e);

struct EigenRegion {
  enum class Kind { All, Disc, Box } kind = Kind::All;
  Complex center{0.0, 0.0};
  double radius = 1.0;
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;

  bool contains(const Complex& z) const;
  static EigenRegion all() { return {}; }
  static EigenRegion disc(Complex c, double r);
  static EigenRegion box(double re0, double re1, double im0, double im1);
  /// A region that contains nothing.
  static EigenRegion empty();
};

struct RecoveryOptions {
  double pole_tol = 1e-8;  // relative gap to a state-block eigenvalue
};

/// Drops infinite values and values outside the region. The rest get the
/// leading n block as eigenvector of R and a residual against R; values that
/// coincide with state-block eigenvalues are classified Pole, the rest Zero.
/// With a model whose terms carry registry functions, residual_nonlinear is
/// filled as well.
template <class T>
std::vector<Eigenpair> recover_and_filter(const std::vector<Eigenpair>& pairs, const CorkPencil<T>& pencil,
                                          const NlepModel<T>* model, const EigenRegion& region,
                                          const RecoveryOptions& opts = {});

/// ‖F(λ0) v‖ / (‖F(λ0)‖_F ‖v‖).
template <class T>
double residual_against_nonlinear(const NlepModel<T>& model, const Complex& lambda0, const std::vector<Complex>& v);

/// ‖M v‖ / (‖M‖_F ‖v‖); 0 when M v = 0 exactly.
double relative_residual(const CMatrix& m, const std::vector<Complex>& v);

/// Zero-classified values only.
std::vector<Complex> zero_values(const std::vector<Eigenpair>& pairs);

}  // namespace ratlin
