#include "stendo/report.hpp"

#include "stendo/algebra_ops.hpp"

namespace stendo {

using nlohmann::json;

std::string Report::overall() const {
  bool failed = false, inconclusive = false;
  for (const auto& t : tasks) {
    if (t.status == "failed") failed = true;
    if (t.status == "inconclusive") inconclusive = true;
  }
  if (failed) return "failed";
  if (inconclusive) return "inconclusive";
  return "verified";
}

int Report::exit_code() const {
  auto o = overall();
  if (o == "failed") return 1;
  if (o == "inconclusive") return 3;
  return 0;
}

json Report::to_json() const {
  json j;
  j["tool"] = "stendo";
  j["version"] = tool_version();
  j["field"] = p;
  j["seed"] = seed;
  j["scenario_hash"] = scenario_hash;
  j["status"] = overall();
  j["tasks"] = json::array();
  for (const auto& t : tasks) {
    json tj;
    tj["task"] = t.name;
    tj["status"] = t.status;
    if (!t.message.empty()) tj["message"] = t.message;
    if (!t.payload.is_null()) tj["payload"] = t.payload;
    j["tasks"].push_back(tj);
  }
  return j;
}

std::string Report::human_summary() const {
  std::string out;
  out += "field F_" + std::to_string(p) + ", seed " + std::to_string(seed) + "\n";
  for (const auto& t : tasks) {
    out += "  [" + t.status + "] " + t.name;
    if (!t.message.empty()) out += ": " + t.message;
    out += "\n";
  }
  out += "overall: " + overall() + "\n";
  return out;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j));
    rows.push_back(r);
  }
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["entries"] = rows;
  return out;
}

Matrix matrix_from_json(const Fp& F, const json& j) {
  int r = j.at("rows").get<int>();
  int c = j.at("cols").get<int>();
  Matrix m(F, r, c);
  const auto& e = j.at("entries");
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m.at(i, k) = e.at(i).at(k).get<uint32_t>() % F.p();
  return m;
}

namespace {

FDAlgebra algebra_from_json(const Fp& F, const json& j) {
  int n = j.at("dim").get<int>();
  std::vector<std::vector<std::vector<uint32_t>>> table(
      n, std::vector<std::vector<uint32_t>>(n, std::vector<uint32_t>(n, 0)));
  const auto& tb = j.at("table");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) table[a][b][c] = tb.at(a).at(b).at(c).get<uint32_t>() % F.p();
  std::vector<uint32_t> unit(n, 0);
  for (int k = 0; k < n; ++k) unit[k] = j.at("unit").at(k).get<uint32_t>() % F.p();
  return FDAlgebra(F, table, unit);
}

bool recheck_detect_period(const Fp& F, const json& payload, std::string& log) {
  if (!payload.contains("recheck")) return true;
  const auto& rc = payload["recheck"];
  FDAlgebra gamma = algebra_from_json(F, rc.at("gamma"));
  auto gp = std::make_shared<FDAlgebra>(std::move(gamma));
  AlgPtr env = enveloping(gp);
  FDModule regular = regular_bimodule(gp, env);
  Matrix witness = matrix_from_json(F, rc.at("witness"));
  // syzygy action table: one matrix per enveloping basis element
  std::vector<Matrix> act;
  for (const auto& mj : rc.at("syzygy_action")) act.push_back(matrix_from_json(F, mj));
  FDModule syz(env, witness.rows(), act);  // constructor re-verifies the axioms
  if (!witness.invertible()) {
    log += "period witness not invertible\n";
    return false;
  }
  if (!is_module_map(syz, regular, witness)) {
    log += "period witness does not intertwine the bimodule actions\n";
    return false;
  }
  return true;
}

bool recheck_algebra_iso(const Fp& F, const json& payload, std::string& log) {
  if (!payload.contains("recheck")) return true;
  const auto& rc = payload["recheck"];
  FDAlgebra A = algebra_from_json(F, rc.at("a"));
  FDAlgebra B = algebra_from_json(F, rc.at("b"));
  Matrix phi = matrix_from_json(F, rc.at("witness"));
  if (!phi.invertible()) {
    log += "algebra witness not invertible\n";
    return false;
  }
  int n = A.dim();
  auto apply = [&](const std::vector<uint32_t>& x) {
    std::vector<uint32_t> out(n, 0);
    for (int i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < n; ++j) out[j] = F.add(out[j], F.mul(x[i], phi.at(i, j)));
    }
    return out;
  };
  if (apply(A.unit()) != B.unit()) {
    log += "algebra witness does not preserve the unit\n";
    return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<uint32_t> ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (apply(A.basis_product(i, j)) != B.mul(apply(ei), apply(ej))) {
        log += "algebra witness not multiplicative\n";
        return false;
      }
    }
  return true;
}

bool recheck_resolve(const Fp& F, const json& payload, std::string& log) {
  if (!payload.contains("recheck")) return true;
  const auto& rc = payload["recheck"];
  std::vector<Matrix> deltas;
  for (const auto& d : rc.at("deltas")) deltas.push_back(matrix_from_json(F, d));
  Matrix eps = matrix_from_json(F, rc.at("eps"));
  // d o d = 0 along the complex (delta[j] : D_j -> D_{j-1})
  for (size_t j = 1; j < deltas.size(); ++j) {
    if (!(deltas[j] * deltas[j - 1]).is_zero()) {
      log += "differentials do not compose to zero\n";
      return false;
    }
  }
  if (!deltas.empty() && !(deltas[0] * eps).is_zero()) {
    log += "augmentation does not kill the first differential\n";
    return false;
  }
  // rank bookkeeping matches the recorded homology dims
  const auto& tor = rc.at("tor_dims");
  int mdim = eps.cols() == 0 ? 0 : eps.rank();
  (void)mdim;
  for (size_t i = 1; i + 1 < tor.size() && i < deltas.size(); ++i) {
    int dimD = deltas[i - 1].rows();
    int out_rank = deltas[i - 1].rank();
    int in_rank = (i < deltas.size()) ? deltas[i].rank() : 0;
    int h = dimD - out_rank - in_rank;
    if (h != tor.at(i).get<int>()) {
      log += "homology dimension mismatch at spot " + std::to_string(i) + "\n";
      return false;
    }
  }
  return true;
}

bool recheck_stable_end(const Fp& F, const json& payload, std::string& log) {
  if (!payload.contains("recheck")) return true;
  try {
    algebra_from_json(F, payload["recheck"].at("gamma"));
  } catch (const std::exception& e) {
    log += std::string("stable-end structure constants fail verification: ") + e.what() + "\n";
    return false;
  }
  return true;
}

}  // namespace

int verify_report_json(const json& j, std::string& log) {
  uint32_t p = j.at("field").get<uint32_t>();
  Fp F(p);
  bool ok = true;
  for (const auto& t : j.at("tasks")) {
    std::string name = t.at("task").get<std::string>();
    if (!t.contains("payload")) continue;
    const auto& payload = t["payload"];
    bool task_ok = true;
    try {
      if (name == "detect-period")
        task_ok = recheck_detect_period(F, payload, log);
      else if (name == "algebra-iso")
        task_ok = recheck_algebra_iso(F, payload, log);
      else if (name == "resolve")
        task_ok = recheck_resolve(F, payload, log);
      else if (name == "stable-end")
        task_ok = recheck_stable_end(F, payload, log);
    } catch (const std::exception& e) {
      log += "recheck error in task '" + name + "': " + e.what() + "\n";
      task_ok = false;
    }
    if (!task_ok) {
      log += "task '" + name + "': certificate re-verification FAILED\n";
      ok = false;
    } else {
      log += "task '" + name + "': ok\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace stendo
