#include "contests/bestresponse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "contests/equilibrium.hpp"

namespace contests {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clipped_cum(const PLFn& cumulative, double q) {
  return cumulative(std::clamp(q, 0.0, 1.0));
}

StepFn strategy_from_breakpoints(const std::vector<double>& levels,
                                 const std::vector<double>& b) {
  std::vector<double> breaks;
  std::vector<double> values;
  double prev = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    double hi = std::clamp(b[i], prev, 1.0);
    if (hi > prev && levels[i] > 0.0) {
      breaks.push_back(hi);
      values.push_back(levels[i]);
      prev = hi;
    }
  }
  if (breaks.empty()) return StepFn::zero();
  if (breaks.back() < 1.0) {
    breaks.push_back(1.0);
    values.push_back(0.0);
  }
  return StepFn(std::move(breaks), std::move(values));
}

// Range-argmax table over a fixed array, O(n log n) build, O(1) query.
class ArgmaxTable {
 public:
  explicit ArgmaxTable(const std::vector<double>& data) : data_(data) {
    std::size_t n = data.size();
    int levels = 1;
    while ((std::size_t{1} << levels) <= n) ++levels;
    table_.assign(levels, std::vector<int>(n));
    for (std::size_t k = 0; k < n; ++k) table_[0][k] = static_cast<int>(k);
    for (int l = 1; l < levels; ++l) {
      std::size_t half = std::size_t{1} << (l - 1);
      for (std::size_t k = 0; k + (std::size_t{1} << l) <= n; ++k) {
        int a = table_[l - 1][k];
        int b = table_[l - 1][k + half];
        table_[l][k] = data_[b] > data_[a] ? b : a;
      }
    }
  }

  int argmax(int lo, int hi) const {  // inclusive range
    int span = hi - lo + 1;
    int l = 0;
    while ((2 << l) <= span) ++l;
    int a = table_[l][static_cast<std::size_t>(lo)];
    int b = table_[l][static_cast<std::size_t>(hi - (1 << l) + 1)];
    return data_[b] > data_[a] ? b : a;
  }

 private:
  std::vector<double> data_;
  std::vector<std::vector<int>> table_;
};

}  // namespace

FptasParams::FptasParams(double eps_in, Budget t_j, double top_level, double kstar_in) {
  if (!(eps_in > 0.0 && eps_in < 1.0))
    throw std::domain_error("FptasParams: eps must be in (0,1)");
  if (!(t_j.t > 0.0)) throw std::invalid_argument("FptasParams: budget must be positive");
  if (!(kstar_in > 0.0)) throw std::invalid_argument("FptasParams: K* must be positive");
  eps = eps_in;
  eps_prime = eps / 4.0;
  lambda_x = eps_prime * t_j.t;
  kstar = kstar_in;
  if (top_level > 0.0 && top_level > lambda_x) {
    double count = std::floor(std::log(top_level / lambda_x) / std::log1p(eps_prime)) + 1.0;
    p = std::max(1, static_cast<int>(count));
  } else {
    p = 1;
  }
  levels.resize(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i)
    levels[static_cast<std::size_t>(i)] = top_level * std::pow(1.0 + eps_prime, -i);
  lambda_v = eps_prime * kstar / p;
  lambda_t = eps_prime * t_j.t / p;
  rho_v = static_cast<std::int64_t>(std::ceil(2.0 * p / eps_prime - 1e-9));
  double cube = (1.0 + eps_prime) * (1.0 + eps_prime) * (1.0 + eps_prime);
  rho_t = static_cast<std::int64_t>(std::floor(cube * p / eps_prime + 1e-9));
}

DpResult dp_inner(const StepFn& x_mj, const StepFn& v, Budget t_j,
                  const FptasParams& params, double kstar) {
  if (std::abs(params.kstar - kstar) > 1e-12 * std::max(1.0, kstar))
    throw std::invalid_argument("dp_inner: params were built for a different K*");
  if (std::abs(params.lambda_t * params.p - params.eps_prime * t_j.t) >
      1e-12 * std::max(1.0, t_j.t))
    throw std::invalid_argument("dp_inner: params were built for a different budget");
  const int p = params.p;
  const std::int64_t rv = params.rho_v;
  const std::int64_t rt = params.rho_t;
  const std::int64_t layer = (rv + 1) * (rt + 1);
  const std::int64_t total = (p + 1) * layer;
  if (total > kDpMaxStates)
    throw std::length_error("dp_inner: table of " + std::to_string(total) +
                            " states (p=" + std::to_string(p) +
                            ", rho_v=" + std::to_string(rv) +
                            ", rho_t=" + std::to_string(rt) + ") exceeds the cap");

  const PLFn cumulative = cum_value(v);
  const double total_value = cumulative.total();
  const double lambda_v = params.lambda_v;
  const double lambda_t = params.lambda_t;

  std::vector<double> b(static_cast<std::size_t>(total), kInf);
  std::vector<std::uint32_t> pred(static_cast<std::size_t>(total), 0);
  auto idx = [layer, rt](int i, std::int64_t r, std::int64_t s) {
    return static_cast<std::size_t>(i * layer + r * (rt + 1) + s);
  };
  b[idx(0, 0, 0)] = 0.0;

  const auto& vk = cumulative.knots();
  std::int64_t transitions = 0;
  for (int i = 1; i <= p; ++i) {
    const double level = params.levels[static_cast<std::size_t>(i - 1)];
    const double a_star = strict_upper_inverse(x_mj, level);
    const double* prev_layer = b.data() + (i - 1) * layer;
    for (std::int64_t r = 0; r <= rv; ++r) {
      for (std::int64_t s = 0; s <= rt; ++s) {
        const double b_star = prev_layer[r * (rt + 1) + s];
        if (!(b_star <= 1.0)) continue;
        const double v_at = clipped_cum(cumulative, b_star + a_star);
        const double room = total_value - v_at;
        // Targets ascend with r', so the inverse of V is a forward walk.
        std::size_t walk = 1;
        for (std::int64_t rp = r; rp <= rv; ++rp) {
          const double gain = static_cast<double>(rp - r) * lambda_v;
          if (gain > room) break;
          ++transitions;
          const double target = std::min(v_at + gain, total_value);
          while (walk + 1 < vk.size() && vk[walk].y < target) ++walk;
          const double dy = vk[walk].y - vk[walk - 1].y;
          const double endpoint =
              dy > 0.0 ? vk[walk - 1].q + (std::min(target, vk[walk].y) - vk[walk - 1].y) / dy *
                                              (vk[walk].q - vk[walk - 1].q)
                       : vk[walk - 1].q;
          const double delta = std::max(endpoint - b_star - a_star, 0.0);
          const std::int64_t sp =
              s + static_cast<std::int64_t>(std::ceil(delta * level / lambda_t - 1e-12));
          if (sp > rt) continue;
          const std::size_t at = idx(i, rp, sp);
          if (b[at] > b_star + delta) {
            b[at] = b_star + delta;
            pred[at] = static_cast<std::uint32_t>(r * (rt + 1) + s);
          }
        }
      }
    }
  }

  // Recover the best feasible terminal state.
  std::int64_t r_star = 0;
  std::int64_t s_star = 0;
  for (std::int64_t r = rv; r >= 0; --r) {
    bool found = false;
    for (std::int64_t s = rt; s >= 0; --s) {
      if (b[idx(p, r, s)] <= 1.0) {
        s_star = s;
        found = true;
        break;
      }
    }
    if (found) {
      r_star = r;
      break;
    }
  }

  DpResult result;
  result.utility = static_cast<double>(r_star) * lambda_v;
  result.state_count = total;
  result.transitions = transitions;
  result.breakpoints.assign(static_cast<std::size_t>(p), 0.0);
  std::int64_t r = r_star;
  std::int64_t s = s_star;
  for (int i = p; i >= 1; --i) {
    result.breakpoints[static_cast<std::size_t>(i - 1)] = b[idx(i, r, s)];
    std::uint32_t off = pred[idx(i, r, s)];
    r = off / static_cast<std::uint32_t>(rt + 1);
    s = off % static_cast<std::uint32_t>(rt + 1);
  }
  return result;
}

ResponseResult fptas_best_response(const StepFn& x_mj, const StepFn& v,
                                   Budget t_j, Budget t_mj, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("fptas_best_response: eps must be in (0,1)");
  if (v.is_zero())
    throw std::invalid_argument("fptas_best_response: value function is identically zero");
  if (!(t_j.t > 0.0))
    throw std::invalid_argument("fptas_best_response: budget must be positive");
  if (x_mj.is_zero()) {
    StepFn strategy = StepFn::constant(t_j.t);
    return {strategy, r_best(strategy, x_mj, v), ResponseResult::Method::fptas};
  }

  const double total_value = budget_of(v);
  const double top_level = x_mj.max_value();
  double mu = t_mj.t > 0.0 ? t_j.t / (t_j.t + t_mj.t) : 1.0;

  bool have = false;
  double best_quantized = -1.0;
  std::vector<double> best_breaks;
  std::vector<double> best_levels;
  while (mu <= 1.0) {
    FptasParams params(eps, t_j, top_level, mu * total_value);
    DpResult dp = dp_inner(x_mj, v, t_j, params, params.kstar);
    if (!have || dp.utility > best_quantized) {
      have = true;
      best_quantized = dp.utility;
      best_breaks = dp.breakpoints;
      best_levels = params.levels;
    }
    mu *= 2.0;
  }

  const double eps_prime = eps / 4.0;
  const double shrink = (1.0 - eps_prime) * (1.0 - eps_prime) * (1.0 - eps_prime);
  for (double& bi : best_breaks) bi *= shrink;
  StepFn strategy = strategy_from_breakpoints(best_levels, best_breaks);
  return {strategy, r_best(strategy, x_mj, v), ResponseResult::Method::fptas};
}

ResponseResult exact_best_response_grid(const StepFn& x_mj, const StepFn& v,
                                        Budget t_j, int grid) {
  if (grid < 10) throw std::invalid_argument("exact_best_response_grid: grid must be >= 10");
  std::vector<double> levels = positive_levels({x_mj});
  const int n_levels = static_cast<int>(levels.size());
  if (n_levels > 4)
    throw std::invalid_argument("exact_best_response_grid: opponent has more than 4 levels");

  if (n_levels == 0 || t_j.t == 0.0) {
    StepFn strategy = t_j.t > 0.0 ? StepFn::constant(t_j.t) : StepFn::zero();
    return {strategy, r_best(strategy, x_mj, v), ResponseResult::Method::exact,
            v.max_value() * n_levels / grid};
  }

  const PLFn cumulative = cum_value(v);
  std::vector<double> a_star(static_cast<std::size_t>(n_levels) + 1);
  for (int i = 0; i < n_levels; ++i)
    a_star[static_cast<std::size_t>(i)] = strict_upper_inverse(x_mj, levels[static_cast<std::size_t>(i)]);
  a_star[static_cast<std::size_t>(n_levels)] = strict_upper_inverse(x_mj, 0.0);
  std::vector<double> d(static_cast<std::size_t>(n_levels));
  for (int i = 0; i < n_levels; ++i) {
    double next = i + 1 < n_levels ? levels[static_cast<std::size_t>(i + 1)] : 0.0;
    d[static_cast<std::size_t>(i)] = levels[static_cast<std::size_t>(i)] - next;
  }

  // gain[i][k]: marginal objective of setting breakpoint i at grid index k.
  std::vector<std::vector<double>> gain(static_cast<std::size_t>(n_levels));
  {
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n_levels) + 1);
    for (int i = 0; i <= n_levels; ++i) {
      w[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(grid) + 1);
      for (int k = 0; k <= grid; ++k)
        w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
            clipped_cum(cumulative, a_star[static_cast<std::size_t>(i)] +
                                        static_cast<double>(k) / grid);
    }
    for (int i = 0; i < n_levels; ++i) {
      gain[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(grid) + 1);
      for (int k = 0; k <= grid; ++k)
        gain[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
            w[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(k)];
    }
  }
  ArgmaxTable last_table(gain[static_cast<std::size_t>(n_levels - 1)]);

  const double budget_units = t_j.t * grid * (1.0 + 1e-12) + 1e-9;
  std::vector<int> k_now(static_cast<std::size_t>(n_levels), 0);
  std::vector<int> k_best;
  double best = -kInf;

  auto kmax_for = [&](double spent, int i) {
    double room = (budget_units - spent) / d[static_cast<std::size_t>(i)];
    return std::min(grid, static_cast<int>(std::floor(room)));
  };

  // Enumerate the first N-1 breakpoints; the last one is a range argmax.
  auto search = [&](auto&& self, int i, int k_prev, double spent, double partial) -> void {
    if (i == n_levels - 1) {
      int hi = kmax_for(spent, i);
      if (hi < k_prev) return;
      int k = last_table.argmax(k_prev, hi);
      double value = partial + gain[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (value > best) {
        best = value;
        k_now[static_cast<std::size_t>(i)] = k;
        k_best = k_now;
      }
      return;
    }
    int hi = kmax_for(spent, i);
    for (int k = k_prev; k <= hi; ++k) {
      k_now[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, k, spent + d[static_cast<std::size_t>(i)] * k,
           partial + gain[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    }
  };
  search(search, 0, 0, 0.0, 0.0);

  std::vector<double> breakpoints;
  for (int k : k_best) breakpoints.push_back(static_cast<double>(k) / grid);
  StepFn strategy = strategy_from_breakpoints(levels, breakpoints);
  return {strategy, r_best(strategy, x_mj, v), ResponseResult::Method::exact,
          v.max_value() * n_levels / grid};
}

ResponseResult stretch_response(const StepFn& x_mj, const StepFn& v,
                                Budget t_j, Budget t_mj) {
  StepFn strategy = StepFn::zero();
  if (x_mj.is_zero() || t_mj.t == 0.0) {
    if (t_j.t > 0.0) strategy = StepFn::constant(t_j.t);
  } else {
    strategy = stretch(x_mj, t_j.t / t_mj.t, 0.0);
  }
  return {strategy, r_best(strategy, x_mj, v), ResponseResult::Method::stretch};
}

StepFn worst_to_best_lift(const StepFn& xhat, Budget t_j, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("worst_to_best_lift: eps must be in (0,1)");
  if (budget_of(xhat) > t_j.t + 1e-9)
    throw std::invalid_argument("worst_to_best_lift: strategy exceeds the budget");
  return stretch(xhat, 1.0 - eps, eps * t_j.t);
}

}  // namespace contests
