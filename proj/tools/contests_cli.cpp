// Command-line front end: equilibrium curves, best responses, safety
// analysis, prize-structure rounding and Monte-Carlo simulation over JSON
// instance files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "contests/bestresponse.hpp"
#include "contests/equilibrium.hpp"
#include "contests/instance.hpp"
#include "contests/rounding.hpp"
#include "contests/safety.hpp"
#include "contests/simulator.hpp"

namespace {

using contests::Budget;
using contests::Instance;
using contests::StepFn;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitMalformed = 2;

struct InfeasibleRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kEnvelopePieces = 4096;

// The contest's own step strategy; prize lists go through the conservative
// lower step envelope so the equilibrium engine can consume them.
StepFn strategy_step(const Instance& instance, std::size_t j) {
  const auto& spec = instance.contests[j];
  if (spec.step) return *spec.step;
  if (spec.prizes) return contests::interim_lower_step(*spec.prizes, kEnvelopePieces);
  throw InfeasibleRequest("contest " + std::to_string(j) + " has no strategy");
}

std::size_t checked_contest(const Instance& instance, int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= instance.contests.size())
    throw InfeasibleRequest("contest index out of range");
  return static_cast<std::size_t>(j);
}

StepFn merged_others(const Instance& instance, std::size_t j) {
  std::vector<StepFn> others;
  for (std::size_t k = 0; k < instance.contests.size(); ++k)
    if (k != j) others.push_back(strategy_step(instance, k));
  if (others.empty()) return StepFn::zero();
  return contests::merge_opponents(others);
}

double other_budget(const Instance& instance, std::size_t j) {
  double total = 0.0;
  for (std::size_t k = 0; k < instance.contests.size(); ++k)
    if (k != j) total += instance.contests[k].budget;
  return total;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InfeasibleRequest("cannot write to " + path);
  out << content;
}

// Shortest exact decimal form, so curve files reproduce the knots losslessly.
std::string num(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

int run_eq(const Instance& instance, int contest, const std::string& csv) {
  std::size_t j = checked_contest(instance, contest);
  StepFn own = strategy_step(instance, j);
  StepFn others = merged_others(instance, j);
  const StepFn& value_fn = instance.values[j];
  contests::PLFn worst = contests::ceb_worst(own, others);
  contests::PLFn best = contests::ceb_best(own, others);

  json out{{"contest", contest},
           {"r_worst", contests::stieltjes(value_fn, worst)},
           {"r_best", contests::stieltjes(value_fn, best)},
           {"budget_used", contests::budget_of(own)}};
  std::vector<double> grid;
  for (const auto& knot : worst.knots()) grid.push_back(knot.q);
  for (const auto& knot : best.knots()) grid.push_back(knot.q);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  json curves = json::array();
  std::string csv_text = "q,h_worst,h_best\n";
  for (double q : grid) {
    curves.push_back({{"q", q}, {"h_worst", worst(q)}, {"h_best", best(q)}});
    csv_text += num(q) + "," + num(worst(q)) + "," + num(best(q)) + "\n";
  }
  out["curves"] = curves;
  if (!csv.empty()) write_file(csv, csv_text);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_best_response(const Instance& instance, int contest, std::optional<double> fptas_eps,
                      bool exact, int grid) {
  std::size_t j = checked_contest(instance, contest);
  StepFn others = merged_others(instance, j);
  Budget t_j(instance.contests[j].budget);
  Budget t_mj(other_budget(instance, j));
  contests::ResponseResult result =
      fptas_eps ? contests::fptas_best_response(others, instance.values[j], t_j, t_mj, *fptas_eps)
                : contests::exact_best_response_grid(others, instance.values[j], t_j, grid);
  json out{{"contest", contest},
           {"method", result.method == contests::ResponseResult::Method::exact ? "exact" : "fptas"},
           {"utility", result.utility},
           {"budget_used", contests::budget_of(result.strategy)},
           {"strategy", contests::step_to_json(result.strategy)}};
  if (fptas_eps)
    out["eps"] = *fptas_eps;
  else
    out["grid"] = grid;
  if (exact) out["grid_slack"] = result.grid_slack;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_safety_construct(const Instance& instance, int contest) {
  std::size_t j = checked_contest(instance, contest);
  Budget t_j(instance.contests[j].budget);
  Budget t_mj(other_budget(instance, j));
  StepFn staircase = contests::construct_16competitive(instance.values[j], t_j, t_mj);
  double bench = contests::benchmark(instance.values[j], t_j, t_mj);
  json out{{"contest", contest},
           {"strategy", contests::step_to_json(staircase)},
           {"budget", contests::budget_of(staircase)},
           {"benchmark", bench},
           {"guarantee", bench / 16.0},
           {"stairs", staircase.pieces()}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_safety_eval(const Instance& instance, int contest, double eps,
                    const std::string& adversaries_path) {
  std::size_t j = checked_contest(instance, contest);
  std::vector<StepFn> extras;
  if (!adversaries_path.empty()) {
    std::ifstream in(adversaries_path);
    if (!in) throw InfeasibleRequest("cannot open adversary file: " + adversaries_path);
    json adv;
    in >> adv;
    for (const auto& a : adv) extras.push_back(contests::step_from_json(a));
  }
  Budget t_j(instance.contests[j].budget);
  Budget t_mj(other_budget(instance, j));
  contests::SafetyReport report =
      contests::safety_eval(strategy_step(instance, j), instance.values[j], t_j, t_mj, eps, extras);
  json out{{"contest", contest},
           {"benchmark", report.benchmark},
           {"sl_lower", report.sl_lower},
           {"sl_upper", report.sl_upper},
           {"guarantee", report.guarantee},
           {"adversaries_tested", report.adversaries_tested}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_round(const Instance& instance, int contest, int n, std::optional<double> eps_mix_in) {
  std::size_t j = checked_contest(instance, contest);
  const auto& spec = instance.contests[j];
  if (!spec.step) throw InfeasibleRequest("round needs an abstract step strategy");
  Budget t_j(spec.budget);
  contests::PrizeVector rounded = contests::round_to_prizes(*spec.step, t_j, n);
  double eps_mix_value = eps_mix_in ? *eps_mix_in : std::pow(n, -1.0 / 3.0);
  contests::PrizeVector mixed = contests::epsilon_mix(rounded, eps_mix_value, t_j);
  double kstar = contests::benchmark(instance.values[j], t_j, Budget(other_budget(instance, j)));
  double bound = contests::r_bound(n, 2.0, instance.values[j].max_value(), kstar);
  json out{{"contest", contest},
           {"n", n},
           {"w", mixed.w},
           {"sum_w", mixed.sum()},
           {"budget_cap", n * spec.budget},
           {"eps_mix", eps_mix_value},
           {"r_bound", bound},
           {"certified_ratio", 1.0 - bound - eps_mix_value}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_simulate(const Instance& instance, int trials, std::uint64_t seed, int bins,
                 const std::string& csv) {
  if (!instance.n) throw InfeasibleRequest("simulate requires the field n");
  std::vector<contests::PrizeVector> prizes;
  std::vector<StepFn> interims;
  for (std::size_t j = 0; j < instance.contests.size(); ++j) {
    if (!instance.contests[j].prizes)
      throw InfeasibleRequest("simulate requires prize-list strategies everywhere");
    prizes.push_back(*instance.contests[j].prizes);
    interims.push_back(contests::interim_lower_step(prizes.back(), kEnvelopePieces));
  }
  contests::CumulativeBehavior equilibrium = contests::ceb_all(interims, 0);
  contests::MixedStrategy strategy = contests::strategy_from_ceb(equilibrium, interims);
  contests::TrialConfig cfg{*instance.n, trials, seed, bins};
  contests::SimReport report = contests::run_goc(prizes, instance.values, strategy, cfg);

  json out{{"n", cfg.n},
           {"trials", cfg.trials},
           {"seed", cfg.seed},
           {"bins", cfg.bins},
           {"quantile_ties", report.quantile_ties}};
  json per_contest = json::array();
  for (std::size_t j = 0; j < prizes.size(); ++j) {
    contests::UtilityCheck check = contests::check_designer_utility(
        report, j, instance.values[j], equilibrium.components[j]);
    per_contest.push_back({{"utility_mean", report.utility_mean[j]},
                           {"utility_se", report.utility_se[j]},
                           {"utility_target", check.target},
                           {"z", check.z}});
  }
  out["per_contest"] = per_contest;
  out["h_curves"] = report.h_curves;
  if (!csv.empty()) {
    std::string csv_text = "edge";
    for (std::size_t j = 0; j < prizes.size(); ++j) csv_text += ",h_" + std::to_string(j);
    for (std::size_t j = 0; j < prizes.size(); ++j) csv_text += ",prize_mean_" + std::to_string(j);
    csv_text += "\n";
    for (int e = 0; e <= cfg.bins; ++e) {
      csv_text += num(static_cast<double>(e) / cfg.bins);
      for (std::size_t j = 0; j < prizes.size(); ++j)
        csv_text += "," + num(report.h_curves[j][static_cast<std::size_t>(e)]);
      for (std::size_t j = 0; j < prizes.size(); ++j)
        csv_text +=
            "," + (e < cfg.bins ? num(report.prize_mean[j][static_cast<std::size_t>(e)])
                                : std::string("0"));
      csv_text += "\n";
    }
    write_file(csv, csv_text);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_validate(const Instance& instance) {
  json out{{"valid", true},
           {"contests", instance.contests.size()},
           {"with_strategy", 0}};
  int with_strategy = 0;
  for (const auto& spec : instance.contests)
    if (spec.step || spec.prizes) ++with_strategy;
  out["with_strategy"] = with_strategy;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel contests: equilibria, best responses, safety, rounding"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string csv_path;
  int contest = 0;

  auto* eq = app.add_subcommand("eq", "worst/best equilibrium curves for one contest");
  eq->add_option("instance", instance_path)->required();
  eq->add_option("--contest", contest)->required();
  eq->add_option("--csv", csv_path);

  auto* br = app.add_subcommand("best-response", "last-mover strategy against the others");
  std::optional<double> fptas_eps;
  bool exact = false;
  int grid = 1000;
  br->add_option("instance", instance_path)->required();
  br->add_option("--contest", contest)->required();
  br->add_option("--fptas", fptas_eps, "approximation eps in (0,1)");
  br->add_flag("--exact", exact, "exhaustive grid oracle");
  br->add_option("--grid", grid);

  auto* safety = app.add_subcommand("safety", "first-mover analysis");
  safety->require_subcommand(1);
  auto* construct = safety->add_subcommand("construct", "16-competitive staircase");
  construct->add_option("instance", instance_path)->required();
  construct->add_option("--contest", contest)->required();
  auto* eval = safety->add_subcommand("eval", "certified safety interval");
  double eval_eps = 0.5;
  std::string adversaries_path;
  eval->add_option("instance", instance_path)->required();
  eval->add_option("--contest", contest)->required();
  eval->add_option("--eps", eval_eps)->required();
  eval->add_option("--adversaries", adversaries_path, "JSON array of step adversaries");

  auto* round = app.add_subcommand("round", "rank-by-skill prize structure for a step strategy");
  int round_n = 10000;
  std::optional<double> eps_mix_opt;
  round->add_option("instance", instance_path)->required();
  round->add_option("--contest", contest)->required();
  round->add_option("--n", round_n)->required();
  round->add_option("--eps-mix", eps_mix_opt);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the three-stage game");
  int trials = 10000;
  std::uint64_t seed = 1;
  int bins = 20;
  simulate->add_option("instance", instance_path)->required();
  simulate->add_option("--trials", trials)->required();
  simulate->add_option("--seed", seed);
  simulate->add_option("--bins", bins);
  simulate->add_option("--csv", csv_path);

  auto* validate = app.add_subcommand("validate", "audit an instance file");
  validate->add_option("instance", instance_path)->required();

  CLI11_PARSE(app, argc, argv);

  if (const char* env_seed = std::getenv("CONTESTS_SEED")) seed = std::strtoull(env_seed, nullptr, 10);

  // Parse errors are the file's fault (exit 2); anything the solvers refuse
  // on a valid file is an infeasible request (exit 1).
  std::optional<Instance> instance;
  try {
    instance = contests::load_instance(instance_path);
  } catch (const std::exception& e) {
    std::cerr << "malformed instance: " << e.what() << "\n";
    return kExitMalformed;
  }
  try {
    if (eq->parsed()) return run_eq(*instance, contest, csv_path);
    if (br->parsed()) {
      if (!fptas_eps && !exact) throw InfeasibleRequest("pick --fptas EPS or --exact");
      return run_best_response(*instance, contest, fptas_eps, exact, grid);
    }
    if (construct->parsed()) return run_safety_construct(*instance, contest);
    if (eval->parsed()) return run_safety_eval(*instance, contest, eval_eps, adversaries_path);
    if (round->parsed()) return run_round(*instance, contest, round_n, eps_mix_opt);
    if (simulate->parsed()) return run_simulate(*instance, trials, seed, bins, csv_path);
    if (validate->parsed()) return run_validate(*instance);
  } catch (const std::exception& e) {
    std::cerr << "infeasible request: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}
