#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "stendo/matrix.hpp"

namespace stendo {

inline const char* tool_version() { return "0.1.0"; }

struct TaskResult {
  std::string name;
  std::string status;  // verified | failed | inconclusive | not-applicable
  std::string message;
  nlohmann::json payload;
};

struct Report {
  uint32_t p = 5;
  uint64_t seed = 0;
  std::string scenario_hash;
  std::vector<TaskResult> tasks;

  std::string overall() const;
  int exit_code() const;  // 0 ok, 1 failed, 3 inconclusive
  nlohmann::json to_json() const;
  std::string human_summary() const;
};

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Fp& F, const nlohmann::json& j);

// Re-checks the certificates embedded in a report (witness matrices,
// differentials, structure constants) without recomputing resolutions.
// Returns 0 when every embedded certificate re-verifies, 1 otherwise.
int verify_report_json(const nlohmann::json& j, std::string& log);

}  // namespace stendo
