#include "contests/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace contests {

namespace {

std::vector<double> levels_with_zero(const std::vector<StepFn>& fs) {
  std::vector<double> levels = positive_levels(fs);
  levels.push_back(0.0);
  return levels;
}

// Shared scaffolding of the Prop-4.2 formulas: both envelopes are piecewise
// linear with slopes in {0,1}, changing shape only at prize levels.
PLFn ceb_envelope(const StepFn& x_j, const StepFn& x_mj, bool best) {
  std::vector<PLFn::Knot> knots{{0.0, 0.0}};
  for (double level : levels_with_zero({x_j, x_mj})) {
    double sj = strict_upper_inverse(x_j, level);
    double ij = upper_inverse(x_j, level);
    double smj = strict_upper_inverse(x_mj, level);
    double imj = upper_inverse(x_mj, level);
    double lo = sj + smj;
    if (lo > 1.0) break;
    double hi = std::min(ij + imj, 1.0);
    auto value = [&](double q) {
      return best ? std::min(ij, q - smj) : std::max(sj, q - imj);
    };
    double kink = best ? ij + smj : sj + imj;
    knots.push_back({lo, value(lo)});
    if (kink > lo && kink < hi) knots.push_back({kink, value(kink)});
    knots.push_back({hi, value(hi)});
    if (hi >= 1.0) break;
  }
  if (knots.back().q < 1.0) knots.push_back({1.0, knots.back().y});
  return PLFn(std::move(knots));
}

void append_unique(std::vector<double>& xs, double x) {
  if (xs.empty() || x > xs.back() + 1e-15) xs.push_back(x);
}

}  // namespace

PLFn ceb_worst(const StepFn& x_j, const StepFn& x_mj) {
  return ceb_envelope(x_j, x_mj, /*best=*/false);
}

PLFn ceb_best(const StepFn& x_j, const StepFn& x_mj) {
  return ceb_envelope(x_j, x_mj, /*best=*/true);
}

double r_worst(const StepFn& x_j, const StepFn& x_mj, const StepFn& v) {
  return stieltjes(v, ceb_worst(x_j, x_mj));
}

double r_best(const StepFn& x_j, const StepFn& x_mj, const StepFn& v) {
  return stieltjes(v, ceb_best(x_j, x_mj));
}

bool verify_gceb(const CumulativeBehavior& h, const std::vector<StepFn>& xs,
                 double tol) {
  const std::size_t m = xs.size();
  if (h.components.size() != m || m == 0)
    throw std::invalid_argument("verify_gceb: component count mismatch");
  std::vector<double> grid;
  for (const PLFn& component : h.components)
    for (const auto& knot : component.knots()) grid.push_back(knot.q);
  std::sort(grid.begin(), grid.end());
  for (double q : grid) {
    double sum = 0.0;
    for (const PLFn& component : h.components) sum += component(q);
    if (std::abs(sum - q) > tol)
      throw std::invalid_argument("verify_gceb: components do not sum to q");
  }

  for (double level : levels_with_zero(xs)) {
    double q_lo = 0.0;
    double q_hi = 0.0;
    std::vector<double> lower(m), upper(m);
    for (std::size_t j = 0; j < m; ++j) {
      lower[j] = strict_upper_inverse(xs[j], level);
      upper[j] = upper_inverse(xs[j], level);
      q_lo += lower[j];
      q_hi += upper[j];
    }
    if (q_lo > 1.0) break;
    q_hi = std::min(q_hi, 1.0);
    std::vector<double> samples{q_lo, q_hi};
    for (const PLFn& component : h.components)
      for (const auto& knot : component.knots())
        if (knot.q > q_lo && knot.q < q_hi) samples.push_back(knot.q);
    for (double q : samples)
      for (std::size_t j = 0; j < m; ++j) {
        double value = h.components[j](q);
        if (value < lower[j] - tol || value > upper[j] + tol) return false;
      }
  }
  return true;
}

CumulativeBehavior ceb_all(const std::vector<StepFn>& xs, std::size_t favored) {
  const std::size_t m = xs.size();
  if (m == 0 || favored >= m) throw std::invalid_argument("ceb_all: bad arguments");
  if (m == 1) return CumulativeBehavior{{PLFn::identity()}};

  std::vector<StepFn> others;
  for (std::size_t j = 0; j < m; ++j)
    if (j != favored) others.push_back(xs[j]);
  PLFn h_fav = ceb_best(xs[favored], merge_opponents(others));

  std::vector<std::vector<PLFn::Knot>> rest(m, {{0.0, 0.0}});
  for (double level : levels_with_zero(xs)) {
    double q_lo = 0.0;
    double q_hi = 0.0;
    double sum_strict = 0.0;
    double sum_inv = 0.0;
    std::vector<double> lower(m), upper(m);
    for (std::size_t j = 0; j < m; ++j) {
      lower[j] = strict_upper_inverse(xs[j], level);
      upper[j] = upper_inverse(xs[j], level);
      q_lo += lower[j];
      q_hi += upper[j];
      if (j != favored) {
        sum_strict += lower[j];
        sum_inv += upper[j];
      }
    }
    if (q_lo > 1.0) break;
    double hi = std::min(q_hi, 1.0);
    std::vector<double> samples;
    append_unique(samples, q_lo);
    for (const auto& knot : h_fav.knots())
      if (knot.q > q_lo && knot.q < hi) append_unique(samples, knot.q);
    append_unique(samples, hi);
    for (double q : samples) {
      double complement = q - h_fav(q);
      double ratio = 0.0;
      if (sum_inv > sum_strict)
        ratio = std::clamp((complement - sum_strict) / (sum_inv - sum_strict), 0.0, 1.0);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == favored) continue;
        rest[j].push_back({q, lower[j] + (upper[j] - lower[j]) * ratio});
      }
    }
    if (hi >= 1.0) break;
  }

  CumulativeBehavior result;
  result.components.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (j == favored) {
      result.components.push_back(h_fav);
    } else {
      if (rest[j].back().q < 1.0) rest[j].push_back({1.0, rest[j].back().y});
      result.components.push_back(PLFn(std::move(rest[j])));
    }
  }
  return result;
}

MixedStrategy::MixedStrategy(std::vector<double> cuts,
                             std::vector<std::vector<double>> interval_probs,
                             std::vector<std::vector<double>> knot_probs)
    : cuts_(std::move(cuts)),
      interval_probs_(std::move(interval_probs)),
      knot_probs_(std::move(knot_probs)) {
  if (cuts_.size() < 2 || interval_probs_.size() != cuts_.size() - 1 ||
      knot_probs_.size() != cuts_.size())
    throw std::invalid_argument("MixedStrategy: inconsistent piece structure");
}

const std::vector<double>& MixedStrategy::probs_at(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("probs_at: q outside [0,1]");
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), q);
  std::size_t idx = static_cast<std::size_t>(it - cuts_.begin());
  if (it != cuts_.end() && *it == q) return knot_probs_[idx];
  return interval_probs_[idx - 1];
}

MixedStrategy strategy_from_ceb(const CumulativeBehavior& h,
                                const std::vector<StepFn>& xs) {
  const std::size_t m = h.components.size();
  if (m == 0 || xs.size() != m)
    throw std::invalid_argument("strategy_from_ceb: component count mismatch");

  std::vector<double> cuts;
  {
    std::vector<double> all;
    for (const PLFn& component : h.components)
      for (const auto& knot : component.knots()) all.push_back(knot.q);
    std::sort(all.begin(), all.end());
    for (double q : all) append_unique(cuts, q);
    cuts.front() = 0.0;
    cuts.back() = 1.0;
  }
  for (double q : cuts) {
    double sum = 0.0;
    for (const PLFn& component : h.components) sum += component(q);
    if (std::abs(sum - q) > 1e-9)
      throw std::invalid_argument("strategy_from_ceb: components do not sum to q");
  }

  std::vector<std::vector<double>> interval_probs;
  for (std::size_t t = 0; t + 1 < cuts.size(); ++t) {
    double dq = cuts[t + 1] - cuts[t];
    std::vector<double> probs(m);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      probs[j] = std::max(0.0, (h.components[j](cuts[t + 1]) - h.components[j](cuts[t])) / dq);
      total += probs[j];
    }
    for (double& p : probs) p /= total;  // total = 1 up to rounding
    interval_probs.push_back(std::move(probs));
  }

  // At the cut points the probabilities follow the argmax-uniform rule over
  // the currently best expected prizes.
  std::vector<std::vector<double>> knot_probs;
  for (double q : cuts) {
    std::vector<double> prize(m);
    double top = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      prize[j] = xs[j](std::clamp(h.components[j](q), 0.0, 1.0));
      top = std::max(top, prize[j]);
    }
    std::vector<double> probs(m, 0.0);
    std::size_t winners = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (prize[j] >= top - 1e-12) ++winners;
    for (std::size_t j = 0; j < m; ++j)
      if (prize[j] >= top - 1e-12) probs[j] = 1.0 / static_cast<double>(winners);
    knot_probs.push_back(std::move(probs));
  }

  return MixedStrategy(std::move(cuts), std::move(interval_probs), std::move(knot_probs));
}

}  // namespace contests
