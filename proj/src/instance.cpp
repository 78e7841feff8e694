#include "contests/instance.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace contests {

namespace {

std::vector<double> doubles_from(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw std::invalid_argument(std::string(what) + " must be numeric");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

nlohmann::json step_to_json(const StepFn& f) {
  return {{"type", "step"}, {"breaks", f.breaks()}, {"values", f.values()}};
}

StepFn step_from_json(const nlohmann::json& j) {
  return StepFn(doubles_from(j.at("breaks"), "breaks"),
                doubles_from(j.at("values"), "values"));
}

Instance instance_from_json(const nlohmann::json& j) {
  Instance instance;
  if (!j.is_object() || !j.contains("contests") || !j.contains("values"))
    throw std::invalid_argument("instance: needs 'contests' and 'values'");
  if (j.contains("description")) instance.description = j.at("description").get<std::string>();
  if (j.contains("n") && !j.at("n").is_null()) {
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("instance: n must be positive");
    instance.n = n;
  }

  const auto& contests = j.at("contests");
  if (!contests.is_array() || contests.empty())
    throw std::invalid_argument("instance: needs at least one contest");
  for (const auto& c : contests) {
    ContestSpec spec;
    spec.budget = c.at("budget").get<double>();
    if (!(std::isfinite(spec.budget) && spec.budget >= 0.0))
      throw std::invalid_argument("instance: budget must be non-negative");
    if (c.contains("strategy") && !c.at("strategy").is_null()) {
      const auto& s = c.at("strategy");
      const std::string type = s.at("type").get<std::string>();
      if (type == "step") {
        spec.step = step_from_json(s);
        if (budget_of(*spec.step) > spec.budget + 1e-9)
          throw std::invalid_argument(
              "instance: step strategy integral exceeds the contest budget");
      } else if (type == "prizes") {
        spec.prizes = PrizeVector(doubles_from(s.at("w"), "w"));
      } else {
        throw std::invalid_argument("instance: unknown strategy type '" + type + "'");
      }
    }
    instance.contests.push_back(std::move(spec));
  }

  const auto& values = j.at("values");
  if (!values.is_array() || values.size() != instance.contests.size())
    throw std::invalid_argument("instance: needs one value function per contest");
  for (const auto& v : values) instance.values.push_back(step_from_json(v));

  for (std::size_t idx = 0; idx < instance.contests.size(); ++idx) {
    const ContestSpec& spec = instance.contests[idx];
    if (!spec.prizes) continue;
    if (!instance.n)
      throw std::invalid_argument("instance: prize lists require the field n");
    if (spec.prizes->n() != *instance.n)
      throw std::invalid_argument("instance: prize list length differs from n");
    if (spec.prizes->sum() > *instance.n * spec.budget + 1e-9)
      throw std::invalid_argument("instance: prize sum exceeds n times the budget");
  }
  return instance;
}

nlohmann::json instance_to_json(const Instance& instance) {
  nlohmann::json j;
  if (!instance.description.empty()) j["description"] = instance.description;
  if (instance.n) j["n"] = *instance.n;
  j["contests"] = nlohmann::json::array();
  for (const ContestSpec& spec : instance.contests) {
    nlohmann::json c{{"budget", spec.budget}};
    if (spec.step)
      c["strategy"] = step_to_json(*spec.step);
    else if (spec.prizes)
      c["strategy"] = {{"type", "prizes"}, {"w", spec.prizes->w}};
    else
      c["strategy"] = nullptr;
    j["contests"].push_back(std::move(c));
  }
  j["values"] = nlohmann::json::array();
  for (const StepFn& v : instance.values)
    j["values"].push_back({{"breaks", v.breaks()}, {"values", v.values()}});
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("instance is not valid JSON: " + std::string(e.what()));
  }
  return instance_from_json(j);
}

}  // namespace contests
