#pragma once

#include "nckit/report.hpp"

// Scenario backends for the CLI subcommands. Each runner consumes a flat
// config (file keys overridden by flags), writes report.json plus CSV tables
// under out_dir, and returns the process exit code: 0 all asserted
// inequalities hold, 1 an assertion failed, 2 configuration error.

namespace nckit {

int run_curvature(const ScenarioConfig& cfg);
int run_decompose(const ScenarioConfig& cfg);
int run_deviation(const ScenarioConfig& cfg);
int run_poincare(const ScenarioConfig& cfg);
int run_transport(const ScenarioConfig& cfg);
int run_suite(const ScenarioConfig& cfg);

} // namespace nckit
