#include "ratlin/functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ratlin {

namespace {

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::vector<std::string> registry_names() { return {"exp", "sin", "sqrt", "inv_shift"}; }

ScalarFunction ScalarFunction::parse(const std::string& name, const Complex& shift) {
  for (const auto& n : registry_names())
    if (n == name) return ScalarFunction{name, shift};
  throw Error(ErrorCode::ProblemParseError, "unknown function '" + name + "'");
}

bool ScalarFunction::defined_at(const Complex& lambda) const {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) return false;
  if (name == "sqrt") return !(lambda.imag() == 0.0 && lambda.real() < 0.0);
  if (name == "inv_shift") return lambda != shift;
  return true;
}

Complex ScalarFunction::operator()(const Complex& lambda) const {
  if (!defined_at(lambda))
    throw Error(ErrorCode::FunctionNotEvaluable, describe() + " is not defined there", format_complex(lambda));
  if (name == "exp") return std::exp(lambda);
  if (name == "sin") return std::sin(lambda);
  if (name == "sqrt") return std::sqrt(lambda);
  return 1.0 / (lambda - shift);
}

std::string ScalarFunction::describe() const {
  if (name == "inv_shift") return "1/(x - " + format_complex(shift) + ")";
  return name;
}

std::vector<Complex> SamplingRegion::sample_points() const {
  std::vector<Complex> out;
  switch (kind) {
    case SamplingKind::Disc:
      for (std::size_t k = 0; k < count; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
        out.push_back(center + radius * Complex(std::cos(t), std::sin(t)));
      }
      break;
    case SamplingKind::Segment:
      for (std::size_t k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back(a + t * (b - a));
      }
      break;
    case SamplingKind::Points: out = points; break;
  }
  return out;
}

SampleSet sample(const std::vector<ScalarFunction>& fs, const SamplingRegion& region) {
  SampleSet s;
  s.points = region.sample_points();
  for (const auto& f : fs) {
    std::vector<Complex> v;
    v.reserve(s.points.size());
    for (const auto& z : s.points) v.push_back(f(z));
    s.values.push_back(std::move(v));
  }
  s.validate();
  return s;
}

}  // namespace ratlin
