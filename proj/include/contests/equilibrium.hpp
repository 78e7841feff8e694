#ifndef CONTESTS_EQUILIBRIUM_HPP
#define CONTESTS_EQUILIBRIUM_HPP

#include <cstddef>
#include <vector>

#include "contests/stepcalc.hpp"

namespace contests {

// One cumulative behavior H_j per contest; sum_j H_j(q) = q.
struct CumulativeBehavior {
  std::vector<PLFn> components;
};

// Symmetric mixed strategy: interval probabilities over contests plus the
// tie-break vectors used at the (measure-zero) cut points themselves.
class MixedStrategy {
 public:
  MixedStrategy(std::vector<double> cuts,
                std::vector<std::vector<double>> interval_probs,
                std::vector<std::vector<double>> knot_probs);

  std::size_t contest_count() const { return interval_probs_.front().size(); }
  const std::vector<double>& cuts() const { return cuts_; }
  const std::vector<std::vector<double>>& interval_probs() const { return interval_probs_; }

  // Probability vector at quantile q; exact cut points use the knot rule.
  const std::vector<double>& probs_at(double q) const;

 private:
  std::vector<double> cuts_;
  std::vector<std::vector<double>> interval_probs_;
  std::vector<std::vector<double>> knot_probs_;
};

// Worst cumulative equilibrium behavior for the designer holding x_j against
// the bundled opponent x_mj: H(q) = max{x_j^{-1}(X+0), q - x_mj^{-1}(X)} at
// X = Q^{-1}(q). Slopes are 0 or 1.
PLFn ceb_worst(const StepFn& x_j, const StepFn& x_mj);

// Best counterpart: H(q) = min{x_j^{-1}(X), q - x_mj^{-1}(X+0)}.
PLFn ceb_best(const StepFn& x_j, const StepFn& x_mj);

// Designer utility per contestant under the worst/best equilibrium.
double r_worst(const StepFn& x_j, const StepFn& x_mj, const StepFn& v);
double r_best(const StepFn& x_j, const StepFn& x_mj, const StepFn& v);

// Equilibrium test: every component must sit inside the inverse sandwich at
// every prize level. Throws on a malformed H (components not summing to q);
// returns false for a well-formed H that is not an equilibrium.
bool verify_gceb(const CumulativeBehavior& h, const std::vector<StepFn>& xs,
                 double tol = 1e-9);

// A full m-contest equilibrium whose favored component is exactly
// ceb_best(xs[favored], merge_opponents(rest)); the complement is split
// across the remaining contests proportionally to their inverse intervals.
CumulativeBehavior ceb_all(const std::vector<StepFn>& xs, std::size_t favored);

// Reconstruct a mixed strategy whose cumulation is exactly h.
MixedStrategy strategy_from_ceb(const CumulativeBehavior& h,
                                const std::vector<StepFn>& xs);

}  // namespace contests

#endif  // CONTESTS_EQUILIBRIUM_HPP
