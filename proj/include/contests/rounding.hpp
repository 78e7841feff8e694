#ifndef CONTESTS_ROUNDING_HPP
#define CONTESTS_ROUNDING_HPP

#include <vector>

#include "contests/stepcalc.hpp"

namespace contests {

// Rank-by-skill prize list, non-increasing and non-negative.
struct PrizeVector {
  std::vector<double> w;
  explicit PrizeVector(std::vector<double> prizes);
  int n() const { return static_cast<int>(w.size()); }
  double sum() const;
};

// Quantization constants of the prize-structure rounding at population n.
struct RoundingParams {
  int n;
  double delta;  // 1/n
  int k1;        // floor(n^{2/3})
  double beta;   // sqrt(6 ln(1/delta) / k1), < 1
  double shrink; // horizontal shrink factor C applied before rounding
  double d_const = 2.0;

  explicit RoundingParams(int n, double d_const = 2.0);
  double error_bound(double max_value, double kstar) const;
};

// Smallest n accepted by round_to_prizes.
inline constexpr int kMinRoundingN = 1000;

// Lower binomial tail Pr[B(n-1, h) < k], evaluated by a mode-centered term
// recurrence so it stays accurate for large n.
double xi(int n, int k, double h);

// Rank-by-skill prize structure whose interim allocation dominates x_j after
// a small horizontal shrink; sum of prizes stays within n*t_j.
PrizeVector round_to_prizes(const StepFn& x_j, Budget t_j, int n);

// Interim allocation of a prize list: expected prize at co-participant mass h.
double interim_of_prizes(const PrizeVector& prizes, double h);

// Step envelopes of the interim allocation on a uniform grid; the lower
// envelope is the conservative bridge into the equilibrium computations.
StepFn interim_lower_step(const PrizeVector& prizes, int pieces = 4096);
StepFn interim_upper_step(const PrizeVector& prizes, int pieces = 4096);

// Affine mix with the uniform prize list: w'_k = (1-eps) w_k + eps t_j.
// Turns a best-equilibrium guarantee into a worst-equilibrium one.
PrizeVector epsilon_mix(const PrizeVector& prizes, double eps, Budget t_j);

// Certified relative utility loss of the rounding at population n.
double r_bound(int n, double d_const, double max_value, double kstar);

}  // namespace contests

#endif  // CONTESTS_ROUNDING_HPP
