#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "stendo/quiver.hpp"

namespace stendo {

// Declarative scenario description (single JSON document).
struct Scenario {
  uint32_t p = 5;
  uint64_t seed = 0;

  enum class BackendKind { QuiverAlgebra, PlaneCurve };
  BackendKind backend_kind = BackendKind::QuiverAlgebra;
  QuiverPresentation presentation;           // quiver-algebra backend
  std::vector<std::string> factors;          // plane-curve backend
  bool nonstandard_acknowledged = false;

  // tilting data (optional; "bikr" uses the standard plane-curve object)
  struct ModuleSpec {
    enum class Kind { Regular, Uniserial, Simple } kind = Kind::Regular;
    std::string vertex;  // label
    int length = 1;
  };
  bool has_tilting = false;
  bool bikr = false;
  std::vector<ModuleSpec> tilting;
  int d = 1;

  struct Task {
    std::string name;
    // optional parameters (task dependent)
    int nmax = 0;
    int imax = 6;
    int s = -1;
    int r_bound = 12;
    int summand = 0;
    std::string module_spec;                // "simple:<vertex>" or "projective:<vertex>"
    std::string on;                         // "gamma" (default) or "algebra"
    std::vector<ModuleSpec> candidates;     // maximality task
    std::optional<QuiverPresentation> other_presentation;  // algebra-iso task
  };
  std::vector<Task> tasks;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path, std::string* raw_out = nullptr);

uint64_t fnv1a(const std::string& data);

}  // namespace stendo
