#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ratlin/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rational and nonlinear eigenvalue pipeline"};
  std::string config_path;
  std::optional<std::string> mode, out, format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  app.add_option("--config", config_path, "pipeline configuration (JSON)")->required();
  app.add_option("--mode", mode, "verify_linearization | solve_rep | solve_nlep");
  app.add_option("--out", out, "report path (stdout when absent)");
  app.add_option("--format", format, "json | csv");
  app.add_option("--seed", seed, "seed for randomized cross-checks");
  app.add_option("--tol", tol, "AAA tolerance");
  CLI11_PARSE(app, argc, argv);

  try {
    ratlin::PipelineConfig cfg = ratlin::load_config(config_path);
    if (mode) {
      if (*mode == "verify_linearization") {
        cfg.mode = ratlin::Mode::VerifyLinearization;
      } else if (*mode == "solve_rep") {
        cfg.mode = ratlin::Mode::SolveRep;
      } else if (*mode == "solve_nlep") {
        cfg.mode = ratlin::Mode::SolveNlep;
      } else {
        throw ratlin::Error(ratlin::ErrorCode::ConfigError, "unknown mode '" + *mode + "'");
      }
    }
    if (out) cfg.output_path = *out;
    if (format) cfg.output_format = *format;
    if (seed) cfg.seed = *seed;
    if (tol) cfg.aaa_tol = *tol;
    cfg.validate();

    const ratlin::RunReport report = ratlin::run(cfg);
    if (cfg.output_path.empty()) {
      std::cout << (cfg.output_format == "csv" ? ratlin::eigenpairs_csv(report) : ratlin::report_to_json(report));
    } else {
      ratlin::emit(report, cfg.output_format, cfg.output_path);
    }
    for (const auto& c : report.checks)
      if (c.gating && !c.passed) std::cerr << "check failed: " << c.check << ": " << c.detail << "\n";
    return ratlin::exit_code(report);
  } catch (const ratlin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
