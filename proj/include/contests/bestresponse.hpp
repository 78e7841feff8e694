#ifndef CONTESTS_BESTRESPONSE_HPP
#define CONTESTS_BESTRESPONSE_HPP

#include <cstdint>
#include <vector>

#include "contests/stepcalc.hpp"

namespace contests {

// Quantization parameters of the best-response approximation scheme, derived
// from eps, the designer budget, the opponent's top prize level and the
// utility hint K*.
struct FptasParams {
  double eps;
  double eps_prime;   // eps / 4
  double lambda_x;    // eps' * t_j, value floor
  double kstar;
  double lambda_v;    // eps' * K* / p, utility unit
  double lambda_t;    // eps' * t_j / p, budget unit
  int p;              // number of candidate prize levels, >= 1
  std::int64_t rho_v;
  std::int64_t rho_t;
  std::vector<double> levels;  // c_1 > c_2 > ... > c_p

  FptasParams(double eps, Budget t_j, double top_level, double kstar);
};

struct ResponseResult {
  enum class Method { exact, fptas, stretch };
  StepFn strategy;
  double utility;  // r_best against the given opponent, recomputed exactly
  Method method;
  double grid_slack = 0.0;  // resolution slack of the grid oracle, else 0
};

struct DpResult {
  std::vector<double> breakpoints;  // B_1..B_p, non-decreasing
  double utility;                   // r* * lambda_v
  std::int64_t state_count;
  std::int64_t transitions;
};

// Upper bound on the DP table size; a run whose quantization would exceed it
// throws std::length_error instead of exhausting memory.
inline constexpr std::int64_t kDpMaxStates = 160'000'000;

// Exhaustive best response over monotone breakpoint vectors on a uniform
// grid, with the response restricted to the opponent's level set. Refuses
// opponents with more than four positive levels.
ResponseResult exact_best_response_grid(const StepFn& x_mj, const StepFn& v,
                                        Budget t_j, int grid);

// Single table fill for a fixed K*: b[i,r,s] is the least right endpoint B_i
// achieving utility r*lambda_v with rounded budget s*lambda_t.
DpResult dp_inner(const StepFn& x_mj, const StepFn& v, Budget t_j,
                  const FptasParams& params, double kstar);

// Approximation scheme for the best response: utility >= (1-eps) * OPT.
ResponseResult fptas_best_response(const StepFn& x_mj, const StepFn& v,
                                   Budget t_j, Budget t_mj, double eps);

// Imitate the opponent at proportional scale; guarantees the proportional
// share t_j/(t_j+t_mj) of the total value under the best equilibrium.
ResponseResult stretch_response(const StepFn& x_mj, const StepFn& v,
                                Budget t_j, Budget t_mj);

// Convert a best-equilibrium guarantee into a worst-equilibrium one: the
// returned strategy (1-eps)-strongly-dominates xhat and stays within t_j.
StepFn worst_to_best_lift(const StepFn& xhat, Budget t_j, double eps);

}  // namespace contests

#endif  // CONTESTS_BESTRESPONSE_HPP
