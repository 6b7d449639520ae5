#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlin/aaa.hpp"

namespace ratlin {

/// A named scalar function from the built-in registry:
///   "exp", "sin", "sqrt" (principal branch, cut on the negative reals, where
///   evaluation fails) and "inv_shift" = 1/(λ - shift).
struct ScalarFunction {
  std::string name;
  Complex shift{0.0, 0.0};

  /// FunctionNotEvaluable off the domain.
  Complex operator()(const Complex& lambda) const;
  bool defined_at(const Complex& lambda) const;
  std::string describe() const;

  static ScalarFunction parse(const std::string& name, const Complex& shift = Complex(0.0, 0.0));
};

std::vector<std::string> registry_names();

enum class SamplingKind { Disc, Segment, Points };

/// Where functions are sampled. A disc is sampled on its boundary circle.
struct SamplingRegion {
  SamplingKind kind = SamplingKind::Segment;
  Complex center{0.0, 0.0};
  double radius = 1.0;
  Complex a{-1.0, 0.0}, b{1.0, 0.0};
  std::size_t count = 100;
  std::vector<Complex> points;

  std::vector<Complex> sample_points() const;
};

/// Samples each function at the region's points.
SampleSet sample(const std::vector<ScalarFunction>& fs, const SamplingRegion& region);

}  // namespace ratlin
