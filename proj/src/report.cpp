#include "gl/verify.hpp"

namespace gl {

namespace {

nlohmann::ordered_json numbers(const std::vector<double>& v) {
  auto a = nlohmann::ordered_json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

}  // namespace

nlohmann::ordered_json to_json(const VerifyConfig& c) {
  nlohmann::ordered_json j;
  j["levels"] = c.levels;
  j["drift_tol"] = c.drift_tol;
  j["grid"] = to_json(c.grid);
  j["search"] = to_json(c.search);
  j["dyadic_depth"] = c.trunc.depth;
  return j;
}

nlohmann::ordered_json to_json(const EmbeddingReport& r) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  j["left"] = r.left.to_json();
  j["right"] = r.right.to_json();
  j["family"] = r.family;
  j["c_hat"] = json_number(r.c_hat);
  j["c_hat_levels"] = numbers(r.c_hat_levels);
  j["drift"] = json_number(r.drift);
  j["stable"] = r.stable;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["failures"] = r.failures;
  auto members = nlohmann::ordered_json::array();
  for (const auto& m : r.members) {
    nlohmann::ordered_json e;
    e["index"] = m.index;
    e["label"] = m.label;
    e["status"] = to_string(m.status);
    e["left"] = numbers(m.left);
    e["right"] = numbers(m.right);
    e["ratio"] = numbers(m.ratio);
    if (!m.note.empty()) e["note"] = m.note;
    members.push_back(e);
  }
  j["members"] = members;
  j["verdict"] = to_string(r.verdict);
  return j;
}

nlohmann::ordered_json to_json(const Theorem1Report& r) {
  nlohmann::ordered_json j;
  j["left_embedding"] = to_json(r.left);
  j["right_embedding"] = to_json(r.right);
  j["verdict"] = to_string(r.verdict());
  return j;
}

nlohmann::ordered_json to_json(const Example1Outcome& r) {
  nlohmann::ordered_json j;
  j["member"] = r.member;
  j["near_critical"] = r.near_critical;
  j["values"] = numbers(r.values);
  j["drift"] = json_number(r.drift);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace gl
