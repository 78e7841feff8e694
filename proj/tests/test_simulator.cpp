#include "contests/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "contests/equilibrium.hpp"
#include "contests/rounding.hpp"

using namespace contests;

namespace {

MixedStrategy even_split() {
  PLFn half({{0.0, 0.0}, {1.0, 0.5}});
  CumulativeBehavior h{{half, half}};
  StepFn ones = StepFn::constant(1.0);
  return strategy_from_ceb(h, {ones, ones});
}

MixedStrategy all_in_one() {
  CumulativeBehavior h{{PLFn::identity()}};
  return strategy_from_ceb(h, {StepFn::constant(1.0)});
}

}  // namespace

TEST_CASE("equal prize lists pay everyone the same") {
  int n = 20;
  PrizeVector uniform(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{n, 4000, 99, 10};
  SimReport report = run_goc({uniform, uniform}, {ones, ones}, even_split(), cfg);

  // Every contestant earns exactly 1, so the mean prize is 1 in every bin.
  for (std::size_t j = 0; j < 2; ++j)
    for (int b = 0; b < cfg.bins; ++b)
      if (report.bin_counts[j][static_cast<std::size_t>(b)] > 0)
        CHECK(report.prize_mean[j][static_cast<std::size_t>(b)] == doctest::Approx(1.0));

  // Designer utility concentrates near (n/2) * E[v] = 10.
  for (std::size_t j = 0; j < 2; ++j) {
    double z = (report.utility_mean[j] - 10.0) / report.utility_se[j];
    CHECK(std::abs(z) <= 3.0);
  }
}

TEST_CASE("winner-takes-all matches the interim allocation") {
  int n = 25;
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  w[0] = 1.0;
  PrizeVector top(w);
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{n, 30000, 4242, 10};
  SimReport report = run_goc({top}, {ones}, all_in_one(), cfg);
  for (int b = 0; b < cfg.bins; ++b) {
    auto count = report.bin_counts[0][static_cast<std::size_t>(b)];
    REQUIRE(count > 0);
    double lo = static_cast<double>(b) / cfg.bins;
    double hi = static_cast<double>(b + 1) / cfg.bins;
    // Exact within-bin mean of (1-q)^{n-1}.
    double target = (std::pow(1.0 - lo, n) - std::pow(1.0 - hi, n)) / (n * (hi - lo));
    double se = report.prize_se[0][static_cast<std::size_t>(b)];
    if (se == 0.0) continue;
    CHECK(std::abs(report.prize_mean[0][static_cast<std::size_t>(b)] - target) <= 4.0 * se);
  }
}

TEST_CASE("empirical H conservation is exact") {
  int n = 30;
  PrizeVector uniform(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{n, 2000, 7, 16};
  SimReport report = run_goc({uniform, uniform}, {ones, ones}, even_split(), cfg);
  // The per-contest counts partition the samples, so the curves reproduce the
  // empirical CDF exactly at the integer-count level.
  std::int64_t samples = static_cast<std::int64_t>(cfg.n) * cfg.trials;
  std::int64_t acc0 = 0;
  std::int64_t acc1 = 0;
  std::int64_t grand = 0;
  for (int e = 1; e <= cfg.bins; ++e) {
    acc0 += report.bin_counts[0][static_cast<std::size_t>(e - 1)];
    acc1 += report.bin_counts[1][static_cast<std::size_t>(e - 1)];
    grand += report.bin_counts[0][static_cast<std::size_t>(e - 1)] +
             report.bin_counts[1][static_cast<std::size_t>(e - 1)];
    CHECK(acc0 + acc1 == grand);
    CHECK(report.h_curves[0][static_cast<std::size_t>(e)] ==
          static_cast<double>(acc0) / samples);
    CHECK(report.h_curves[1][static_cast<std::size_t>(e)] ==
          static_cast<double>(acc1) / samples);
  }
  CHECK(grand == samples);
}

TEST_CASE("seed determinism") {
  int n = 15;
  PrizeVector uniform(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{n, 500, 123456, 8};
  SimReport a = run_goc({uniform, uniform}, {ones, ones}, even_split(), cfg);
  SimReport b = run_goc({uniform, uniform}, {ones, ones}, even_split(), cfg);
  CHECK(a.utility_mean == b.utility_mean);
  CHECK(a.h_curves == b.h_curves);
  CHECK(a.prize_mean == b.prize_mean);
  CHECK(a.quantile_ties == b.quantile_ties);
  CHECK(a.quantile_ties == 0);

  TrialConfig other{n, 500, 654321, 8};
  SimReport c = run_goc({uniform, uniform}, {ones, ones}, even_split(), other);
  CHECK(a.utility_mean != c.utility_mean);
}

TEST_CASE("check_designer_utility") {
  int n = 20;
  PrizeVector uniform(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{n, 10000, 2024, 10};
  SimReport report = run_goc({uniform, uniform}, {ones, ones}, even_split(), cfg);
  PLFn half({{0.0, 0.0}, {1.0, 0.5}});

  UtilityCheck ok = check_designer_utility(report, 0, ones, half);
  CHECK(ok.pass);
  CHECK(ok.target == doctest::Approx(10.0));

  // Deliberately wrong H: hand contest 0 the whole population.
  UtilityCheck wrong = check_designer_utility(report, 0, ones, PLFn::identity());
  CHECK_FALSE(wrong.pass);
  CHECK(std::abs(wrong.z) > 3.0);
}

TEST_CASE("all-zero competitor hands over the whole population") {
  int n = 10;
  PrizeVector uniform(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  PrizeVector nothing(std::vector<double>(static_cast<std::size_t>(n), 0.0));
  StepFn ones = StepFn::constant(1.0);
  StepFn interim_a = StepFn::constant(1.0);
  StepFn interim_b = StepFn::zero();
  CumulativeBehavior h = ceb_all({interim_a, interim_b}, 0);
  MixedStrategy strategy = strategy_from_ceb(h, {interim_a, interim_b});
  TrialConfig cfg{n, 5000, 5, 10};
  SimReport report = run_goc({uniform, nothing}, {ones, ones}, strategy, cfg);
  UtilityCheck check = check_designer_utility(report, 0, ones, h.components[0]);
  CHECK(check.pass);
  CHECK(check.target == doctest::Approx(10.0));
  CHECK(report.utility_mean[1] == doctest::Approx(0.0));
}

TEST_CASE("binned prizes track the interim allocation at the played behavior") {
  // Whatever symmetric strategy is played, the expected prize of a quantile-q
  // contestant in contest j equals the interim allocation at H_j(q).
  const int n = 30;
  std::vector<double> top(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < 10; ++k) top[static_cast<std::size_t>(k)] = 1.0;
  PrizeVector prizes_a(top);
  PrizeVector prizes_b(std::vector<double>(static_cast<std::size_t>(n), 0.4));
  StepFn env_a = interim_lower_step(prizes_a, 512);
  StepFn env_b = interim_lower_step(prizes_b, 512);
  CumulativeBehavior h = ceb_all({env_a, env_b}, 0);
  MixedStrategy strategy = strategy_from_ceb(h, {env_a, env_b});
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{n, 30000, 314159, 10};
  SimReport report = run_goc({prizes_a, prizes_b}, {ones, ones}, strategy, cfg);

  const std::vector<PrizeVector> lists{prizes_a, prizes_b};
  for (std::size_t j = 0; j < 2; ++j) {
    for (int b = 0; b < cfg.bins; ++b) {
      auto count = report.bin_counts[j][static_cast<std::size_t>(b)];
      if (count < 500) continue;
      double lo = static_cast<double>(b) / cfg.bins;
      double hi = static_cast<double>(b + 1) / cfg.bins;
      // Conditioned on joining contest j, in-bin quantiles arrive with
      // density dH_j; substituting u = H_j(q) gives the exact prize mean
      // (1/dH) * integral of x_j(u) du over [H_j(lo), H_j(hi)].
      double u_lo = h.components[j](lo);
      double u_hi = h.components[j](hi);
      if (u_hi - u_lo < 1e-9) continue;
      double target = 0.0;
      const int panels = 16;
      for (int i = 0; i <= panels; ++i) {
        double u = u_lo + (u_hi - u_lo) * i / panels;
        double weight = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        target += weight * interim_of_prizes(lists[j], u);
      }
      target /= 3.0 * panels;
      double se = report.prize_se[j][static_cast<std::size_t>(b)];
      CHECK(std::abs(report.prize_mean[j][static_cast<std::size_t>(b)] - target) <=
            4.0 * se + 1e-3);
    }
  }
}

TEST_CASE("run_goc validation") {
  PrizeVector uniform(std::vector<double>(10, 1.0));
  StepFn ones = StepFn::constant(1.0);
  TrialConfig cfg{20, 10, 1, 4};  // n mismatch
  CHECK_THROWS_AS(run_goc({uniform, uniform}, {ones, ones}, even_split(), cfg),
                  std::invalid_argument);
  TrialConfig bad{10, 0, 1, 4};
  CHECK_THROWS_AS(run_goc({uniform, uniform}, {ones, ones}, even_split(), bad),
                  std::invalid_argument);
}
