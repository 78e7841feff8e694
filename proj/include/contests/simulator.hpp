#ifndef CONTESTS_SIMULATOR_HPP
#define CONTESTS_SIMULATOR_HPP

#include <cstdint>
#include <vector>

#include "contests/equilibrium.hpp"
#include "contests/rounding.hpp"
#include "contests/stepcalc.hpp"

namespace contests {

struct TrialConfig {
  int n;            // contestants per trial
  int trials;
  std::uint64_t seed;
  int bins;         // histogram resolution for quantile-conditional stats
};

// Aggregated outcome of a Monte-Carlo run. Empirical H components sum to the
// empirical quantile CDF at every bin edge by construction.
struct SimReport {
  TrialConfig config;
  std::vector<double> utility_mean;               // per contest, per trial
  std::vector<double> utility_se;
  std::vector<std::vector<double>> h_curves;      // [contest][edge 0..bins]
  std::vector<std::vector<double>> prize_mean;    // [contest][bin]
  std::vector<std::vector<double>> prize_se;      // [contest][bin]
  std::vector<std::vector<std::int64_t>> bin_counts;
  std::int64_t quantile_ties;
};

struct UtilityCheck {
  double z;
  bool pass;       // |z| <= 3
  double target;   // n * integral of v against dH
  double mean;
  double se;
};

// Stateless counter-based uniform draw, identical for any evaluation order.
double counter_u01(std::uint64_t seed, std::uint64_t trial,
                   std::uint64_t contestant, std::uint64_t draw);

// Full three-stage game: quantiles are drawn uniformly, each contestant picks
// a contest from the mixed strategy at her quantile, and every contest pays
// its prize list in ascending quantile order. Deterministic per seed.
SimReport run_goc(const std::vector<PrizeVector>& prizes,
                  const std::vector<StepFn>& values,
                  const MixedStrategy& strategy, const TrialConfig& cfg);

// Three-standard-error comparison of a contest's empirical designer utility
// against the analytic n * integral of v dH.
UtilityCheck check_designer_utility(const SimReport& report, std::size_t contest,
                                    const StepFn& v, const PLFn& h);

}  // namespace contests

#endif  // CONTESTS_SIMULATOR_HPP
