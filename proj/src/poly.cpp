#include <cctype>
#include <cmath>
#include <sstream>

#include "ratlin/error.hpp"
#include "ratlin/poly.hpp"
#include "ratlin/ratfun.hpp"
#include "ratlin/scalar.hpp"

namespace ratlin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NotDefinedAt: return "NotDefinedAt";
    case ErrorCode::AllZeroMatrix: return "AllZeroMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularStateMatrix: return "SingularStateMatrix";
    case ErrorCode::StateNotRegular: return "StateNotRegular";
    case ErrorCode::PreconditionNotMinimal: return "PreconditionNotMinimal";
    case ErrorCode::DualBasisNotFullRankInRegion: return "DualBasisNotFullRankInRegion";
    case ErrorCode::NonUniformRowDegrees: return "NonUniformRowDegrees";
    case ErrorCode::ReversedBasisRankDeficient: return "ReversedBasisRankDeficient";
    case ErrorCode::NotSharpDegree: return "NotSharpDegree";
    case ErrorCode::RealizationNotMinimal: return "RealizationNotMinimal";
    case ErrorCode::UnimodularCompletionFailed: return "UnimodularCompletionFailed";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::DegenerateSamples: return "DegenerateSamples";
    case ErrorCode::NotRationalizable: return "NotRationalizable";
    case ErrorCode::SingularTermPencil: return "SingularTermPencil";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::FunctionNotEvaluable: return "FunctionNotEvaluable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ProblemParseError: return "ProblemParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Scalars

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty rational literal");
  auto bad = [&]() { return Error(ErrorCode::InvalidArgument, "malformed rational literal '" + raw + "'"); };

  if (auto slash = text.find('/'); slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0) throw bad();
    if (den == 0) throw Error(ErrorCode::ZeroDenominator, "rational literal '" + raw + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size() && text[pos] != 'e' && text[pos] != 'E'; ++pos) {
    const char ch = text[pos];
    if (ch == '.') {
      if (seen_point) throw bad();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) ++frac_digits;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  long exponent = 0;
  if (pos < text.size()) {
    try {
      std::size_t used = 0;
      exponent = std::stol(text.substr(pos + 1), &used);
      if (used != text.size() - pos - 1) throw bad();
    } catch (const std::logic_error&) {
      throw bad();
    }
  }
  mpz_class mant(digits, 10);
  if (negative) mant = -mant;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NotRationalizable, "non-finite value");
  // mpq_set_d is exact for every finite double.
  return Rational(x);
}

// ---------------------------------------------------------------------------
// Polynomial gcd over Z[x]

namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class zcontent(const ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly zprimitive(ZPoly p) {
  const mpz_class g = zcontent(p);
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

ZPoly to_integer(const Poly<Rational>& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out;
  out.reserve(p.size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (l / c.get_den()));
  return zprimitive(std::move(out));
}

// lc(b)^(deg a - deg b + 1) * a  mod  b
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const std::size_t nb = b.size();
  const mpz_class& lb = b.back();
  long steps = static_cast<long>(a.size()) - static_cast<long>(nb) + 1;
  while (a.size() >= nb) {
    const mpz_class la = a.back();
    const std::size_t off = a.size() - nb;
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < nb; ++j) a[off + j] -= la * b[j];
    a.pop_back();
    ztrim(a);
    --steps;
  }
  if (steps > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps));
    for (auto& c : a) c *= f;
  }
  return a;
}

Poly<Rational> from_integer_monic(const ZPoly& p) {
  std::vector<Rational> c(p.begin(), p.end());
  return Poly<Rational>(std::move(c)).monic();
}

}  // namespace

Poly<Rational> gcd(const Poly<Rational>& a_in, const Poly<Rational>& b_in) {
  if (a_in.is_zero()) return b_in.monic();
  if (b_in.is_zero()) return a_in.monic();
  ZPoly a = to_integer(a_in);
  ZPoly b = to_integer(b_in);
  if (a.size() < b.size()) std::swap(a, b);
  if (b.size() == 1) return Poly<Rational>::one();

  mpz_class g = 1, h = 1;
  for (;;) {
    const unsigned long delta = a.size() - b.size();
    ZPoly r = pseudo_remainder(a, b);
    if (r.empty()) return from_integer_monic(zprimitive(b));
    if (r.size() == 1) return Poly<Rational>::one();
    a = std::move(b);
    mpz_class hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), delta);
    const mpz_class div = g * hd;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    b = std::move(r);
    g = a.back();
    // h <- g^delta / h^(delta-1)
    if (delta > 0) {
      mpz_class gd;
      mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), delta);
      mpz_class hd1;
      mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), delta - 1);
      mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd1.get_mpz_t());
    }
  }
}

Poly<Rational> lcm(const Poly<Rational>& a, const Poly<Rational>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<Rational>();
  return (exact_div(a, gcd(a, b)) * b).monic();
}

int multiplicity(const Poly<Rational>& p, const Poly<Rational>& f) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "multiplicity in the zero polynomial");
  if (f.is_constant()) throw Error(ErrorCode::InvalidArgument, "multiplicity of a constant factor");
  int k = 0;
  Poly<Rational> q = p;
  for (;;) {
    auto [quot, rem] = divmod(q, f);
    if (!rem.is_zero()) return k;
    q = std::move(quot);
    ++k;
  }
}

Poly<Rational> squarefree_part(const Poly<Rational>& p) {
  if (p.is_constant()) return p.is_zero() ? p : Poly<Rational>::one();
  return exact_div(p, gcd(p, p.derivative())).monic();
}

std::string to_string(const Poly<Rational>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    const Rational& c = p.coeffs()[k];
    if (is_zero(c)) continue;
    const bool neg = sgn(c) < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = a == 1;
    if (k == 0 || !unit) os << format_rational(a);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::string to_string(const RatFun<Rational>& r, const std::string& var) {
  if (r.is_polynomial()) return to_string(r.num(), var);
  return "(" + to_string(r.num(), var) + ")/(" + to_string(r.den(), var) + ")";
}

}  // namespace ratlin
