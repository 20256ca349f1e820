#pragma once

#include "stendo/periodicity.hpp"
#include "stendo/report.hpp"
#include "stendo/scenario.hpp"

namespace stendo {

// Executes the scenario's tasks in order and assembles the report.
// InputError propagates to the caller (exit code 2); per-task verification
// failures and inconclusive searches are recorded in the report.
Report run_scenario(const Scenario& sc, const std::string& scenario_hash);

}  // namespace stendo
