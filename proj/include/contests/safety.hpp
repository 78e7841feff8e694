#ifndef CONTESTS_SAFETY_HPP
#define CONTESTS_SAFETY_HPP

#include <vector>

#include "contests/stepcalc.hpp"

namespace contests {

// Certified interval around a strategy's safety level, together with the
// proportional-share benchmark it is measured against.
struct SafetyReport {
  StepFn strategy;
  double benchmark;   // t_j/(t_j+t_mj) * integral of v
  double sl_lower;    // certified floor (approximation slack removed)
  double sl_upper;    // best adversary found so far
  double guarantee;   // benchmark / 16
  int adversaries_tested;
};

// Upper bound on the safety level of any strategy.
double benchmark(const StepFn& v, Budget t_j, Budget t_mj);

// Competitiveness factor as a function of the budget share p = t_j/(t_j+t_mj);
// decreasing, with value 16 at p = 0.
double sl_factor(double p);

// Staircase whose safety level is at least benchmark / sl_factor(p): stair i
// targets the value band above max(v)/2^{i-1} and spends exactly its share of
// the budget, so the total budget is t_j exactly.
StepFn construct_16competitive(const StepFn& v, Budget t_j, Budget t_mj);

// Certified safety interval: the opponent-side approximation scheme bounds
// the strongest adversary from both sides, and every explicit adversary
// (always including the proportional mimic of x_j) tightens the upper end.
SafetyReport safety_eval(const StepFn& x_j, const StepFn& v, Budget t_j,
                         Budget t_mj, double eps,
                         const std::vector<StepFn>& extra_adversaries = {});

// The matching counter-strategy for a single-stair allocation of width r and
// height t_j/r: same height, width (t_mj/t_j)*r clipped to 1.
StepFn simple_threshold_adversary(const StepFn& x_j, Budget t_j, Budget t_mj);

// Step discretization (lower envelope, geometric level grid) of the value
// family v(q) = m on [0,1/m], 1/q beyond; its exact integral approaches
// 1 + ln m as the level count grows.
StepFn reciprocal_tail_value(double m, int levels = 64);

}  // namespace contests

#endif  // CONTESTS_SAFETY_HPP
