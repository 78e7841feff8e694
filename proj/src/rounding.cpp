#include "contests/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace contests {

namespace {

// Weighted lower-tail binomial sum: sum_{l=0}^{last} weight(l+1) * term(l)
// where term(l) = C(m,l) h^l (1-h)^{m-l}. Sweeps outwards from the largest
// term; naive powers would underflow long before n = 10^4.
template <typename WeightFn>
double binomial_sweep(int m, int last, double h, WeightFn weight) {
  int center = std::clamp(static_cast<int>((m + 1) * h), 0, last);
  double log_center = std::lgamma(m + 1.0) - std::lgamma(center + 1.0) -
                      std::lgamma(m - center + 1.0) + center * std::log(h) +
                      (m - center) * std::log1p(-h);
  if (log_center < -745.0) return 0.0;  // every in-range term underflows
  const double center_term = std::exp(log_center);
  double sum = weight(center + 1) * center_term;
  double term = center_term;
  for (int l = center; l >= 1; --l) {
    term *= l * (1.0 - h) / ((m - l + 1.0) * h);
    sum += weight(l) * term;
    if (term < 1e-18) break;
  }
  term = center_term;
  for (int l = center; l + 1 <= last; ++l) {
    term *= (m - l) * h / ((l + 1.0) * (1.0 - h));
    sum += weight(l + 2) * term;
    if (term < 1e-18) break;
  }
  return sum;
}

}  // namespace

PrizeVector::PrizeVector(std::vector<double> prizes) : w(std::move(prizes)) {
  if (w.empty()) throw std::invalid_argument("PrizeVector: empty prize list");
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!(std::isfinite(w[k]) && w[k] >= -kCanonicalEps))
      throw std::invalid_argument("PrizeVector: prizes must be non-negative");
    w[k] = std::max(w[k], 0.0);
    if (k > 0 && w[k] > w[k - 1] + kCanonicalEps)
      throw std::invalid_argument("PrizeVector: prizes must be non-increasing");
    if (k > 0) w[k] = std::min(w[k], w[k - 1]);
  }
}

double PrizeVector::sum() const {
  double total = 0.0;
  for (double x : w) total += x;
  return total;
}

RoundingParams::RoundingParams(int n_in, double d_in) : n(n_in), d_const(d_in) {
  if (n < 2) throw std::invalid_argument("RoundingParams: n too small");
  if (!(d_const > 1.0)) throw std::invalid_argument("RoundingParams: D must exceed 1");
  delta = 1.0 / n;
  k1 = static_cast<int>(std::floor(std::pow(static_cast<double>(n), 2.0 / 3.0) + 1e-9));
  if (!(k1 > 6.0 * std::log(static_cast<double>(n))))
    throw std::invalid_argument("RoundingParams: n too small, k1 <= 6 ln n");
  beta = std::sqrt(6.0 * std::log(static_cast<double>(n)) / k1);
  shrink = (1.0 - delta) / (1.0 + beta) * (k1 - 1.0) / (k1 + 1.0) *
           static_cast<double>(n) / (n - 1.0);
}

double RoundingParams::error_bound(double max_value, double kstar) const {
  return r_bound(n, d_const, max_value, kstar);
}

double xi(int n, int k, double h) {
  if (k < 1 || k > n) throw std::domain_error("xi: k outside [1,n]");
  if (!(h >= 0.0 && h <= 1.0)) throw std::domain_error("xi: h outside [0,1]");
  if (k >= n) return 1.0;
  if (h == 0.0) return 1.0;
  if (h == 1.0) return 0.0;
  double sum = binomial_sweep(n - 1, k - 1, h, [](int) { return 1.0; });
  return std::min(sum, 1.0);
}

PrizeVector round_to_prizes(const StepFn& x_j, Budget t_j, int n) {
  if (n < kMinRoundingN)
    throw std::invalid_argument("round_to_prizes: n too small, minimum is " +
                                std::to_string(kMinRoundingN));
  if (budget_of(x_j) > t_j.t + 1e-9)
    throw std::invalid_argument("round_to_prizes: strategy exceeds the budget");
  RoundingParams params(n);
  const StepFn shrunk = stretch(x_j, params.shrink, 0.0);

  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  const double scale = 1.0 / (1.0 - params.delta);
  double prev = shrunk((params.k1 - 1.0) / (n - 1.0));
  for (int i = params.k1; i <= n - 1; ++i) {
    double cur = shrunk(static_cast<double>(i) / (n - 1.0));
    int k = std::min(static_cast<int>(std::ceil((1.0 + params.beta) * i - 1e-12)), n);
    d[static_cast<std::size_t>(k)] += (prev - cur) * scale;
    prev = cur;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  double suffix = 0.0;
  for (int k = n; k >= 1; --k) {
    suffix += d[static_cast<std::size_t>(k)];
    w[static_cast<std::size_t>(k - 1)] = suffix;
  }
  return PrizeVector(std::move(w));
}

double interim_of_prizes(const PrizeVector& prizes, double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw std::domain_error("interim_of_prizes: h outside [0,1]");
  const int n = prizes.n();
  if (h == 0.0) return prizes.w.front();
  if (h == 1.0) return prizes.w.back();
  if (n == 1) return prizes.w.front();
  return binomial_sweep(n - 1, n - 1, h,
                        [&](int k) { return prizes.w[static_cast<std::size_t>(k - 1)]; });
}

namespace {

StepFn interim_step(const PrizeVector& prizes, int pieces, bool lower) {
  if (pieces < 1) throw std::invalid_argument("interim_step: need at least one piece");
  std::vector<double> breaks(static_cast<std::size_t>(pieces));
  std::vector<double> values(static_cast<std::size_t>(pieces));
  for (int t = 0; t < pieces; ++t) {
    double edge = static_cast<double>(t + (lower ? 1 : 0)) / pieces;
    breaks[static_cast<std::size_t>(t)] = static_cast<double>(t + 1) / pieces;
    values[static_cast<std::size_t>(t)] = interim_of_prizes(prizes, edge);
  }
  // The sweep evaluator carries ~1e-11 noise on flat stretches; restore
  // monotonicity on the conservative side of the requested envelope.
  for (std::size_t t = 1; t < values.size(); ++t)
    if (lower)
      values[t] = std::min(values[t], values[t - 1]);
  for (std::size_t t = values.size(); t-- > 1;)
    if (!lower)
      values[t - 1] = std::max(values[t - 1], values[t]);
  return StepFn(std::move(breaks), std::move(values));
}

}  // namespace

StepFn interim_lower_step(const PrizeVector& prizes, int pieces) {
  return interim_step(prizes, pieces, true);
}

StepFn interim_upper_step(const PrizeVector& prizes, int pieces) {
  return interim_step(prizes, pieces, false);
}

PrizeVector epsilon_mix(const PrizeVector& prizes, double eps, Budget t_j) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("epsilon_mix: eps must be in (0,1)");
  if (prizes.sum() > prizes.n() * t_j.t + 1e-9)
    throw std::invalid_argument("epsilon_mix: prize list exceeds the budget");
  std::vector<double> mixed(prizes.w.size());
  for (std::size_t k = 0; k < mixed.size(); ++k)
    mixed[k] = (1.0 - eps) * prizes.w[k] + eps * t_j.t;
  return PrizeVector(std::move(mixed));
}

double r_bound(int n, double d_const, double max_value, double kstar) {
  if (!(kstar > 0.0)) throw std::domain_error("r_bound: K* must be positive");
  RoundingParams params(n, d_const);
  double k1 = params.k1;
  double kept = 1.0 / (1.0 + std::sqrt(6.0 * std::log(static_cast<double>(n)) / k1)) *
                    (k1 - 1.0) / (k1 + 1.0) -
                d_const * max_value / kstar * (k1 - 1.0) / (n - 1.0);
  return 1.0 - kept;
}

}  // namespace contests
