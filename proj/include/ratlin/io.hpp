#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratlin/eigsolve.hpp"

namespace ratlin {

/// Parses a rational function of one variable written with + - * / ^,
/// parentheses, exact decimals or integers and the variable x (also λ or
/// "lambda"). Juxtaposition such as "2x" or "(x+1)(x-1)" multiplies.
RatFun<Rational> parse_ratfun(const std::string& text);
QRatMatrix parse_rat_matrix(const std::vector<std::vector<std::string>>& rows);
/// ProblemParseError when an entry is not a polynomial of degree <= max_degree.
QPolyMatrix parse_poly_matrix(const std::vector<std::vector<std::string>>& rows, int max_degree = -1);

/// A constant matrix read from JSON; `exact` when every entry is real.
struct MatrixData {
  bool exact = true;
  QMatrix q;
  CMatrix c;
};

struct TermSpec {
  MatrixData C, D;
  std::optional<ScalarFunction> function;
  std::optional<std::vector<Complex>> sample_values;  // at the problem's sampling points
  std::optional<BarycentricApprox> barycentric;        // skips approximation
};

struct NlepProblem {
  std::size_t n = 0;
  std::vector<MatrixData> Q;  // Q(λ) = Σ Q_j λ^j
  std::optional<BasisRelation> relation;  // with A/B given directly
  std::vector<MatrixData> A, B;
  std::vector<TermSpec> terms;
  std::optional<SamplingRegion> sampling;
  std::optional<EigenRegion> target;
};

struct LinearizationProblem {
  QPolyMatrix pencil;
  std::size_t state_size = 0;
  QRatMatrix target;
  std::vector<RegionSpec> regions;
  struct Bfr {
    BfrLayout layout = BfrLayout::Standard;
    BfrShape shape;
    QRatMatrix N1, N2;
  };
  std::optional<Bfr> bfr;
};

struct Problem {
  std::string kind;  // "nlep" or "linearization"
  std::optional<NlepProblem> nlep;
  std::optional<LinearizationProblem> linearization;
};

Problem parse_problem(const std::string& json_text);
Problem load_problem(const std::string& path);

enum class Mode { VerifyLinearization, SolveRep, SolveNlep };
std::string to_string(Mode m);

struct PipelineConfig {
  std::string problem_path;
  Mode mode = Mode::SolveNlep;
  double aaa_tol = 1e-12;
  std::size_t aaa_max_m = 50;
  bool set_valued = false;
  std::string form = "full";       // full | trimmed
  std::string basis = "monomial";  // monomial | chebyshev | custom
  double low_rank_tol = 1e-12;
  std::optional<SamplingRegion> sampling;
  std::optional<EigenRegion> target;
  std::string output_format = "json";  // json | csv
  std::string output_path;
  bool timings = false;
  std::uint64_t seed = 0;
  double residual_threshold = 1e-8;
  bool direct_minimality_check = false;

  void validate() const;
};

/// Relative problem paths are resolved against base_dir.
PipelineConfig parse_config(const std::string& json_text, const std::string& base_dir = "");
PipelineConfig load_config(const std::string& path);
std::string config_to_json(const PipelineConfig& c);

struct CheckOutcome {
  std::string check;   // which routine produced the verdict
  bool passed = false;
  bool gating = true;  // false: reported only
  std::string detail;

  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

struct ApproximationRow {
  std::string function;
  std::size_t m = 0;
  double relative_error = 0.0;
  bool irreducible = true;

  friend bool operator==(const ApproximationRow&, const ApproximationRow&) = default;
};

struct EigenRow {
  double re = 0.0, im = 0.0;
  std::optional<double> residual;  // absent at poles
  std::optional<double> residual_nonlinear;
  std::string classification;

  friend bool operator==(const EigenRow&, const EigenRow&) = default;
};

struct PlotRow {
  std::size_t function = 0;
  double re = 0.0, im = 0.0;
  double abs_error = 0.0;

  friend bool operator==(const PlotRow&, const PlotRow&) = default;
};

struct RunReport {
  int schema_version = 1;
  std::string mode;
  std::string problem_kind;
  std::string config;  // canonical JSON of the effective configuration
  std::vector<ApproximationRow> approximations;
  std::vector<CheckOutcome> checks;
  std::vector<EigenRow> eigenpairs;
  std::map<std::string, std::size_t> sizes;
  std::map<std::string, double> timings;
  std::vector<PlotRow> plot;
  bool passed = false;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);
/// Header "re,im,residual,residual_nonlinear,classification", one row per eigenpair.
std::string eigenpairs_csv(const RunReport& r);
/// Header "function,re,im,abs_error".
std::string plot_csv(const RunReport& r);

/// Writes the report (json or csv) to `path` and the plot data next to it
/// as <path>.samples.csv when there is any. IoError on failure.
void emit(const RunReport& r, const std::string& format, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ratlin
