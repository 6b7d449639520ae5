#pragma once

#include "ratlin/io.hpp"

namespace ratlin {

/// Loads the problem named by the config and runs the configured mode.
/// ConfigError and ProblemParseError for bad inputs; module errors are
/// rethrown with the stage that raised them prepended to the message.
RunReport run(const PipelineConfig& config);

/// Same, with the problem already in memory.
RunReport run(const PipelineConfig& config, const Problem& problem);

/// 0 when report.passed, 1 otherwise.
int exit_code(const RunReport& report);

}  // namespace ratlin
