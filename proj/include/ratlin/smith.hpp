#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlin/exactalg.hpp"

namespace ratlin {

/// A set of finite points given as the roots of a monic squarefree polynomial.
/// Degree one means a single rational point; higher degree factors carry
/// points that the exact oracle never approximates.
struct Locus {
  Poly<Rational> factor;

  static Locus at(const Rational& c) { return Locus{Poly<Rational>::root_factor(c)}; }
  bool is_rational() const { return factor.degree() == 1; }
  Rational point() const;
  std::string label() const;

  friend bool operator==(const Locus& a, const Locus& b) { return a.factor == b.factor; }
};

/// Invariant orders of a rational matrix at a locus or at infinity.
struct LocalStructure {
  bool at_infinity = false;
  Locus locus;  // unused at infinity
  int grade = 0;
  std::vector<int> orders;  // nondecreasing
  std::size_t normal_rank = 0;

  std::vector<int> pole_multiplicities() const;
  std::vector<int> zero_multiplicities() const;
  bool is_pole() const { return !orders.empty() && orders.front() < 0; }
  bool is_zero() const { return !orders.empty() && orders.back() > 0; }
  std::string where() const;
};

struct PoleZeroEntry {
  LocalStructure structure;
  std::vector<int> poles;  // partial multiplicities, ascending
  std::vector<int> zeros;
};

struct PoleZeroReport {
  std::vector<PoleZeroEntry> entries;  // only points that are poles or zeros
  bool empty() const { return entries.empty(); }
};

/// Smith form D = U P V with monic invariant factors s_1 | s_2 | ... | s_r.
/// Pivoting uses the nonzero entry of least degree, ties broken row-major.
std::vector<Poly<Rational>> smith_invariant_factors(const QPolyMatrix& p);

/// Global Smith-McMillan data of R = N/d.
class SmithMcMillan {
 public:
  explicit SmithMcMillan(const QRatMatrix& r);

  const QPolyMatrix& numerator() const { return n_; }
  const Poly<Rational>& denominator() const { return d_; }
  const std::vector<Poly<Rational>>& invariant_factors() const { return s_; }
  std::size_t normal_rank() const { return s_.size(); }

  /// Orders at a locus. For a non-rational locus the result is meaningful
  /// when the locus divides an element of a coprime basis that contains
  /// polynomials() (see loci_of).
  LocalStructure orders_at(const Locus& where) const;
  LocalStructure orders_at(const Rational& c) const { return orders_at(Locus::at(c)); }

  /// d together with every invariant factor.
  std::vector<Poly<Rational>> polynomials() const;

 private:
  QPolyMatrix n_;
  Poly<Rational> d_;
  std::vector<Poly<Rational>> s_;
};

/// ν_i = mult(s_i(N)) - mult(d) at λ0, sorted.
LocalStructure local_orders(const QRatMatrix& r, const Rational& lambda0);

/// local_orders(rev_g R, 0) tagged with grade g.
LocalStructure orders_at_infinity(const QRatMatrix& r, int g);

PoleZeroReport pole_zero_in(const QRatMatrix& r, const std::vector<Rational>& points);

/// Loci where some matrix in `data` may have nonzero orders: the rational
/// roots of a joint coprime basis of all denominators and invariant factors,
/// plus the remaining factors without rational roots.
std::vector<Locus> loci_of(const std::vector<const SmithMcMillan*>& data);

struct CandidateSet {
  std::vector<Rational> points;            // ascending
  std::vector<Poly<Rational>> irrational;  // squarefree factors without rational roots
};

/// Every finite point where R can have a nonzero invariant order.
CandidateSet candidate_points(const QRatMatrix& r);

}  // namespace ratlin
