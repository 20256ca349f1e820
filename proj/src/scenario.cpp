#include "stendo/scenario.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace stendo {

namespace {

using nlohmann::json;

QuiverPresentation parse_presentation(const json& j) {
  QuiverPresentation Q;
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InputError("presentation needs a 'vertices' array");
  for (const auto& v : j["vertices"]) Q.vertices.push_back(v.get<std::string>());
  auto vertex_index = [&](const std::string& name) {
    for (size_t i = 0; i < Q.vertices.size(); ++i)
      if (Q.vertices[i] == name) return static_cast<int>(i);
    throw InputError("unknown vertex '" + name + "' in presentation");
  };
  if (j.contains("arrows"))
    for (const auto& a : j["arrows"]) {
      QuiverPresentation::Arrow arrow;
      arrow.name = a.at("name").get<std::string>();
      arrow.source = vertex_index(a.at("from").get<std::string>());
      arrow.target = vertex_index(a.at("to").get<std::string>());
      Q.arrows.push_back(arrow);
    }
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) Q.relations.push_back(r.get<std::string>());
  Q.nilpotency_bound = j.value("nilpotency_bound", 0);
  if (Q.nilpotency_bound <= 0)
    throw InputError("presentation needs a positive 'nilpotency_bound'");
  return Q;
}

Scenario::ModuleSpec parse_module_spec(const json& j) {
  Scenario::ModuleSpec ms;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "regular") {
      ms.kind = Scenario::ModuleSpec::Kind::Regular;
      return ms;
    }
    auto colon = s.find(':');
    if (colon != std::string::npos) {
      std::string head = s.substr(0, colon);
      ms.vertex = s.substr(colon + 1);
      if (head == "simple") {
        ms.kind = Scenario::ModuleSpec::Kind::Simple;
        return ms;
      }
    }
    throw InputError("unrecognized module spec '" + s + "'");
  }
  std::string type = j.at("type").get<std::string>();
  if (type == "regular") {
    ms.kind = Scenario::ModuleSpec::Kind::Regular;
  } else if (type == "uniserial") {
    ms.kind = Scenario::ModuleSpec::Kind::Uniserial;
    ms.vertex = j.at("vertex").get<std::string>();
    ms.length = j.at("length").get<int>();
    if (ms.length < 1) throw InputError("uniserial length must be >= 1");
  } else if (type == "simple") {
    ms.kind = Scenario::ModuleSpec::Kind::Simple;
    ms.vertex = j.at("vertex").get<std::string>();
  } else {
    throw InputError("unrecognized module spec type '" + type + "'");
  }
  return ms;
}

}  // namespace

Scenario parse_scenario(const nlohmann::json& j) {
  Scenario sc;
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  if (j.contains("field")) {
    sc.p = j["field"].value("p", 5u);
  }
  if (!is_prime(sc.p)) throw InputError("field modulus must be prime");
  if (!j.contains("seed")) throw InputError("scenario requires an explicit 'seed'");
  sc.seed = j["seed"].get<uint64_t>();

  const auto& b = j.at("backend");
  std::string type = b.at("type").get<std::string>();
  if (type == "quiver-algebra") {
    sc.backend_kind = Scenario::BackendKind::QuiverAlgebra;
    sc.presentation = parse_presentation(b.at("presentation"));
  } else if (type == "plane-curve") {
    sc.backend_kind = Scenario::BackendKind::PlaneCurve;
    for (const auto& f : b.at("factors")) sc.factors.push_back(f.get<std::string>());
    sc.nonstandard_acknowledged = b.value("nonstandard_acknowledged", false);
    if (sc.factors.empty()) throw InputError("plane-curve backend needs factors");
  } else {
    throw InputError("unknown backend type '" + type + "'");
  }

  if (j.contains("tilting")) {
    sc.has_tilting = true;
    const auto& t = j["tilting"];
    if (t.is_string() && t.get<std::string>() == "bikr") {
      sc.bikr = true;
      if (sc.backend_kind != Scenario::BackendKind::PlaneCurve)
        throw InputError("the standard curve tilting object needs the plane-curve backend");
    } else if (t.is_object() && t.contains("summands")) {
      for (const auto& m : t["summands"]) sc.tilting.push_back(parse_module_spec(m));
    } else {
      throw InputError("tilting must be \"bikr\" or {\"summands\": [...]}");
    }
    sc.d = j.value("d", 1);
  } else if (j.contains("d")) {
    sc.d = j["d"].get<int>();
  }

  if (!j.contains("tasks") || !j["tasks"].is_array())
    throw InputError("scenario needs a 'tasks' array");
  for (const auto& t : j["tasks"]) {
    Scenario::Task task;
    task.name = t.at("task").get<std::string>();
    task.nmax = t.value("nmax", 0);
    task.imax = t.value("imax", 6);
    task.s = t.value("s", -1);
    task.r_bound = t.value("r_bound", 12);
    task.summand = t.value("summand", 0);
    task.module_spec = t.value("module", "");
    task.on = t.value("on", "gamma");
    if (t.contains("candidates"))
      for (const auto& c : t["candidates"]) task.candidates.push_back(parse_module_spec(c));
    if (t.contains("other")) task.other_presentation = parse_presentation(t["other"]);
    sc.tasks.push_back(std::move(task));
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path, std::string* raw_out) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string raw = ss.str();
  if (raw_out) *raw_out = raw;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw);
  } catch (const std::exception& e) {
    throw InputError("scenario JSON parse error: " + std::string(e.what()));
  }
  return parse_scenario(j);
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace stendo
