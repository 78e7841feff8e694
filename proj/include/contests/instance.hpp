#ifndef CONTESTS_INSTANCE_HPP
#define CONTESTS_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "contests/rounding.hpp"
#include "contests/stepcalc.hpp"

namespace contests {

// One contest as declared in an instance file: a budget plus an optional
// strategy, either an abstract step allocation or a concrete prize list.
struct ContestSpec {
  double budget = 0.0;
  std::optional<StepFn> step;
  std::optional<PrizeVector> prizes;
};

struct Instance {
  std::vector<ContestSpec> contests;
  std::vector<StepFn> values;  // one value function per designer
  std::optional<int> n;
  std::string description;
};

// Parsing validates every file invariant (budgets respected, prize lists of
// length n, one value function per contest) and throws std::invalid_argument
// naming the violated invariant.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& instance);
Instance load_instance(const std::string& path);

nlohmann::json step_to_json(const StepFn& f);
StepFn step_from_json(const nlohmann::json& j);

}  // namespace contests

#endif  // CONTESTS_INSTANCE_HPP
