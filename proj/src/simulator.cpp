#include "contests/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace contests {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double counter_u01(std::uint64_t seed, std::uint64_t trial,
                   std::uint64_t contestant, std::uint64_t draw) {
  std::uint64_t h = mix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
  h = mix64(h ^ (trial + 0x2545f4914f6cdd1dULL));
  h = mix64(h ^ (contestant + 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ draw);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SimReport run_goc(const std::vector<PrizeVector>& prizes,
                  const std::vector<StepFn>& values,
                  const MixedStrategy& strategy, const TrialConfig& cfg) {
  const std::size_t m = prizes.size();
  if (m == 0 || values.size() != m || strategy.contest_count() != m)
    throw std::invalid_argument("run_goc: contest count mismatch");
  if (cfg.n < 1 || cfg.trials < 1 || cfg.bins < 1)
    throw std::invalid_argument("run_goc: n, trials and bins must be positive");
  for (const PrizeVector& p : prizes)
    if (p.n() != cfg.n)
      throw std::invalid_argument("run_goc: prize list length differs from n");

  const int bins = cfg.bins;
  std::vector<double> util_sum(m, 0.0), util_sq(m, 0.0);
  std::vector<std::vector<std::int64_t>> counts(m, std::vector<std::int64_t>(bins, 0));
  std::vector<std::vector<double>> prize_sum(m, std::vector<double>(bins, 0.0));
  std::vector<std::vector<double>> prize_sq(m, std::vector<double>(bins, 0.0));
  std::int64_t ties = 0;

  struct Participant {
    double q;
    int contestant;
  };
  std::vector<std::vector<Participant>> rosters(m);
  std::vector<double> trial_util(m);

  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (auto& roster : rosters) roster.clear();
    std::fill(trial_util.begin(), trial_util.end(), 0.0);

    for (int i = 0; i < cfg.n; ++i) {
      double q = counter_u01(cfg.seed, trial, i, 0);
      double u = counter_u01(cfg.seed, trial, i, 1);
      const std::vector<double>& probs = strategy.probs_at(q);
      std::size_t pick = m - 1;
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        acc += probs[j];
        if (u < acc) {
          pick = j;
          break;
        }
      }
      rosters[pick].push_back({q, i});
      trial_util[pick] += values[pick](q);
    }

    for (std::size_t j = 0; j < m; ++j) {
      auto& roster = rosters[j];
      std::sort(roster.begin(), roster.end(), [](const Participant& a, const Participant& b) {
        return a.q != b.q ? a.q < b.q : a.contestant < b.contestant;
      });
      for (std::size_t rank = 0; rank < roster.size(); ++rank) {
        if (rank > 0 && roster[rank].q == roster[rank - 1].q) ++ties;
        double paid = rank < prizes[j].w.size() ? prizes[j].w[rank] : 0.0;
        int bin = std::min(bins - 1, static_cast<int>(roster[rank].q * bins));
        ++counts[j][static_cast<std::size_t>(bin)];
        prize_sum[j][static_cast<std::size_t>(bin)] += paid;
        prize_sq[j][static_cast<std::size_t>(bin)] += paid * paid;
      }
      util_sum[j] += trial_util[j];
      util_sq[j] += trial_util[j] * trial_util[j];
    }
  }

  SimReport report;
  report.config = cfg;
  report.quantile_ties = ties;
  report.utility_mean.resize(m);
  report.utility_se.resize(m);
  const double trials = cfg.trials;
  for (std::size_t j = 0; j < m; ++j) {
    double mean = util_sum[j] / trials;
    report.utility_mean[j] = mean;
    double var = cfg.trials > 1
                     ? std::max(0.0, (util_sq[j] - trials * mean * mean) / (trials - 1.0))
                     : 0.0;
    report.utility_se[j] = std::sqrt(var / trials);
  }
  report.bin_counts = counts;
  report.h_curves.assign(m, std::vector<double>(static_cast<std::size_t>(bins) + 1, 0.0));
  const double samples = trials * cfg.n;
  for (std::size_t j = 0; j < m; ++j) {
    std::int64_t acc = 0;
    for (int e = 1; e <= bins; ++e) {
      acc += counts[j][static_cast<std::size_t>(e - 1)];
      report.h_curves[j][static_cast<std::size_t>(e)] = static_cast<double>(acc) / samples;
    }
  }
  report.prize_mean.assign(m, std::vector<double>(bins, 0.0));
  report.prize_se.assign(m, std::vector<double>(bins, 0.0));
  for (std::size_t j = 0; j < m; ++j)
    for (int b = 0; b < bins; ++b) {
      auto count = counts[j][static_cast<std::size_t>(b)];
      if (count == 0) continue;
      double mean = prize_sum[j][static_cast<std::size_t>(b)] / count;
      report.prize_mean[j][static_cast<std::size_t>(b)] = mean;
      if (count > 1) {
        double var = std::max(
            0.0, (prize_sq[j][static_cast<std::size_t>(b)] - count * mean * mean) / (count - 1.0));
        report.prize_se[j][static_cast<std::size_t>(b)] = std::sqrt(var / count);
      }
    }
  return report;
}

UtilityCheck check_designer_utility(const SimReport& report, std::size_t contest,
                                    const StepFn& v, const PLFn& h) {
  if (contest >= report.utility_mean.size())
    throw std::invalid_argument("check_designer_utility: contest index out of range");
  UtilityCheck check;
  check.target = report.config.n * stieltjes(v, h);
  check.mean = report.utility_mean[contest];
  check.se = report.utility_se[contest];
  double diff = check.mean - check.target;
  if (check.se > 0.0)
    check.z = diff / check.se;
  else
    check.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  check.pass = std::abs(check.z) <= 3.0;
  return check;
}

}  // namespace contests
