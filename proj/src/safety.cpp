#include "contests/safety.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "contests/bestresponse.hpp"
#include "contests/equilibrium.hpp"

namespace contests {

double benchmark(const StepFn& v, Budget t_j, Budget t_mj) {
  if (t_j.t + t_mj.t <= 0.0)
    throw std::domain_error("benchmark: both budgets are zero");
  return t_j.t / (t_j.t + t_mj.t) * budget_of(v);
}

double sl_factor(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sl_factor: p outside [0,1]");
  return 8.0 - 6.0 * p + 4.0 * std::sqrt((1.0 - p) * (4.0 - 2.0 * p));
}

StepFn construct_16competitive(const StepFn& v, Budget t_j, Budget t_mj) {
  if (v.is_zero())
    throw std::invalid_argument("construct_16competitive: value function is zero");
  if (!(t_j.t > 0.0))
    throw std::invalid_argument("construct_16competitive: budget must be positive");
  const double peak = v.max_value();
  const double total = budget_of(v);
  const double c_scale =
      (std::sqrt(4.0 * t_mj.t * (2.0 * t_j.t + 4.0 * t_mj.t)) + 2.0 * t_j.t + 4.0 * t_mj.t) /
      (t_j.t + t_mj.t);
  const PLFn cumulative = cum_value(v);
  const double floor_level = v.min_positive_value();

  std::vector<double> breaks;
  std::vector<double> values;
  double width_acc = 0.0;
  double q_prev = 0.0;
  for (int i = 1; i <= 4400; ++i) {
    double level = peak * std::pow(0.5, i - 1);
    double q_i = upper_inverse(v, level);
    double mass = cumulative(q_i) - cumulative(q_prev);
    if (mass > 0.0) {
      double height = c_scale * level * (t_j.t + t_mj.t) / total;
      double width = t_j.t * mass / (total * height);
      width_acc = std::min(width_acc + width, 1.0);
      breaks.push_back(width_acc);
      values.push_back(height);
    }
    q_prev = q_i;
    if (cumulative(q_i) >= total * (1.0 - 1e-15) || level <= floor_level) break;
  }
  if (breaks.empty() || breaks.back() < 1.0) {
    breaks.push_back(1.0);
    values.push_back(0.0);
  }
  return StepFn(std::move(breaks), std::move(values));
}

StepFn simple_threshold_adversary(const StepFn& x_j, Budget t_j, Budget t_mj) {
  const bool single_stair =
      (x_j.pieces() == 1 && x_j.value(0) > 0.0) ||
      (x_j.pieces() == 2 && x_j.value(0) > 0.0 && x_j.value(1) == 0.0);
  if (!single_stair)
    throw std::domain_error("simple_threshold_adversary: not a single positive stair");
  const double width = x_j.pieces() == 1 ? 1.0 : x_j.upper_break(0);
  const double height = x_j.value(0);
  if (std::abs(height * width - t_j.t) > 1e-9 * std::max(1.0, t_j.t))
    throw std::domain_error("simple_threshold_adversary: stair does not spend the budget");
  if (t_mj.t == 0.0) return StepFn::zero();
  const double adv_width = std::min(t_mj.t / t_j.t * width, 1.0);
  return StepFn::single_stair(height, adv_width);
}

SafetyReport safety_eval(const StepFn& x_j, const StepFn& v, Budget t_j,
                         Budget t_mj, double eps,
                         const std::vector<StepFn>& extra_adversaries) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("safety_eval: eps must be in (0,1)");
  SafetyReport report{x_j, benchmark(v, t_j, t_mj), 0.0, 0.0, 0.0, 0};
  report.guarantee = report.benchmark / 16.0;
  if (v.is_zero()) return report;

  const double total = budget_of(v);
  if (t_mj.t > 0.0) {
    ResponseResult opponent =
        fptas_best_response(x_j, v, Budget(t_mj.t), Budget(t_j.t), eps);
    report.sl_upper = total - opponent.utility;
    report.sl_lower = std::max(0.0, total - opponent.utility / (1.0 - eps));
    ++report.adversaries_tested;
  } else {
    double unopposed = r_worst(x_j, StepFn::zero(), v);
    report.sl_upper = unopposed;
    report.sl_lower = unopposed;
    ++report.adversaries_tested;
  }

  std::vector<StepFn> adversaries = extra_adversaries;
  if (t_j.t > 0.0 && t_mj.t > 0.0)
    adversaries.push_back(stretch(x_j, t_mj.t / t_j.t, 0.0));
  for (const StepFn& adversary : adversaries) {
    report.sl_upper = std::min(report.sl_upper, r_worst(x_j, adversary, v));
    ++report.adversaries_tested;
  }
  report.sl_lower = std::min(report.sl_lower, report.sl_upper);
  return report;
}

StepFn reciprocal_tail_value(double m, int levels) {
  if (!(m > 1.0)) throw std::invalid_argument("reciprocal_tail_value: m must exceed 1");
  if (levels < 2) throw std::invalid_argument("reciprocal_tail_value: need at least 2 levels");
  std::vector<double> breaks{1.0 / m};
  std::vector<double> values{m};
  for (int k = 1; k < levels; ++k) {
    double level = std::pow(m, 1.0 - static_cast<double>(k) / (levels - 1));
    breaks.push_back(std::min(1.0 / level, 1.0));
    values.push_back(level);
  }
  breaks.back() = 1.0;
  return StepFn(std::move(breaks), std::move(values));
}

}  // namespace contests
