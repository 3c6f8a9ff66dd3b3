// Command-line front end: build value tables, trace the optimal policy, and
// produce the cost-sweep and budget-constrained experiment data.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "lsopt/budget.hpp"
#include "lsopt/config.hpp"
#include "lsopt/table_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string config;
  std::string table;
  std::string out;
  std::string h0;
  std::optional<std::uint64_t> seed;
  std::optional<long> reps;
  std::string costs;
  std::string budgets;
  std::string policy = "optimal";
  int threads = 0;
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

lsopt::ExperimentConfig load(const Options& o) {
  if (o.config.empty()) throw lsopt::ConfigError("--config", "a config file is required");
  auto cfg = lsopt::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.reps) {
    if (*o.reps < 1) throw lsopt::ConfigError("--reps", "replications must be at least 1");
    cfg.reps = *o.reps;
  }
  if (!o.costs.empty()) cfg.costs = lsopt::parse_list("--costs", o.costs);
  if (!o.budgets.empty()) cfg.budgets = lsopt::parse_list("--budgets", o.budgets);
  return cfg;
}

int cmd_solve(const Options& o) {
  const auto cfg = load(o);
  if (o.out.empty()) throw lsopt::ConfigError("--out", "an output path is required");
  const auto start = std::chrono::steady_clock::now();
  const auto setup = cfg.setup();
  const auto table = lsopt::build_table(setup.model, cfg.cost);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  lsopt::write_table(table, o.out);
  std::cout << "built table in " << secs << " s\n"
            << "checksum " << lsopt::table_checksum(table) << "\n"
            << "V(H0) " << lsopt::history_value(table, setup.h0) << "\n"
            << "R(H0) " << lsopt::history_stop_reward(*table.rewards, setup.h0) << "\n";
  return 0;
}

int cmd_trace(const Options& o) {
  std::shared_ptr<const lsopt::ValueTable> table;
  std::uint64_t seed = o.seed.value_or(1);
  if (!o.table.empty()) {
    table = std::make_shared<const lsopt::ValueTable>(lsopt::read_table(o.table));
  } else {
    const auto cfg = load(o);
    if (!o.seed) seed = cfg.seed;
    table = std::make_shared<const lsopt::ValueTable>(
        lsopt::build_table(cfg.setup().model, cfg.cost));
  }
  const auto& grid = table->model().grid();
  const lsopt::ObservationHistory h0 =
      o.h0.empty() ? lsopt::ObservationHistory(grid.a(), grid.b(), grid.k(), grid.k())
                   : lsopt::history_from_json(nlohmann::json::parse(o.h0));
  lsopt::Rng rng = lsopt::replication_rng(seed, 0);
  const lsopt::PolicyKind policy = lsopt::OptimalPolicy{table};
  const auto trace = lsopt::run(policy, h0, table->model().spec(), table->cost, rng);

  std::ofstream file;
  std::ostream& out = open_out(o.out, file);
  for (const auto& rec : lsopt::trace_records(*table, h0, trace)) out << rec.dump() << '\n';
  std::cerr << "tau " << trace.tau << " reward " << trace.final_reward << " performance "
            << trace.performance << '\n';
  return 0;
}

int cmd_compare(const Options& o) {
  const auto cfg = load(o);
  const auto points = lsopt::sweep_cost(cfg.setup(), cfg.costs, cfg.reps, cfg.seed);
  std::ofstream file;
  lsopt::write_sweep_csv(open_out(o.out, file), points);
  return 0;
}

int cmd_evaluate(const Options& o) {
  const auto cfg = load(o);
  const auto setup = cfg.setup();
  const auto rewards = lsopt::build_reward_tables(setup.model);
  lsopt::EvalReport report;
  if (o.policy == "optimal") {
    auto table = std::make_shared<const lsopt::ValueTable>(lsopt::build_table(rewards, cfg.cost));
    report = lsopt::evaluate(lsopt::OptimalPolicy{table}, setup, cfg.cost, cfg.reps, cfg.seed);
  } else if (o.policy == "lookahead") {
    report = lsopt::evaluate(lsopt::OneStepLookahead{rewards, cfg.cost}, setup, cfg.cost, cfg.reps,
                             cfg.seed);
  } else {
    throw lsopt::ConfigError("--policy", "expected optimal or lookahead");
  }
  auto j = lsopt::to_json(report);
  j["cost"] = cfg.cost;
  std::ofstream file;
  open_out(o.out, file) << j.dump(2) << '\n';
  return 0;
}

int cmd_budget(const Options& o) {
  const auto cfg = load(o);
  if (o.out.empty()) throw lsopt::ConfigError("--out", "an output prefix is required");
  lsopt::BudgetSolver solver(cfg.setup(), cfg.lambda_tol);
  std::vector<lsopt::BudgetResult> results;
  for (double t : cfg.budgets) {
    const auto r = solver.solve_v1(t, cfg.lambda_lo, cfg.lambda_hi, cfg.lambda_tol, cfg.reps, cfg.seed);
    if (r.at_lower_boundary) {
      std::cerr << "warning: T=" << t << " minimizer at lambda_lo; T may exceed the reachable budget\n";
    }
    results.push_back(r);
  }
  std::ofstream v1(o.out + "_v1.csv"), v2(o.out + "_v2.csv");
  if (!v1 || !v2) throw std::runtime_error("cannot write " + o.out + "_v{1,2}.csv");
  lsopt::write_v1_csv(v1, results);
  lsopt::write_v2_csv(v2, results);
  std::cerr << "tables built " << solver.tables_built() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayes-optimal and lookahead sampling policies for 1-D superlevel sets"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "experiment config file");
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--reps", o.reps, "Monte Carlo replications");
    sub->add_option("--threads", o.threads, "worker threads (default: all)");
  };
  auto* solve = app.add_subcommand("solve", "build and write a value table");
  common(solve);
  auto* trace = app.add_subcommand("trace", "trace the optimal policy as JSON lines");
  common(trace);
  trace->add_option("--table", o.table, "table file written by solve");
  trace->add_option("--h0", o.h0, R"(initial history JSON {"a":..,"b":..,"obs":[[x,y],..]})");
  auto* compare = app.add_subcommand("compare", "optimal vs one-step lookahead over costs (CSV)");
  common(compare);
  compare->add_option("--costs", o.costs, "comma separated costs");
  auto* evaluate = app.add_subcommand("evaluate", "Monte Carlo evaluation of one policy (JSON)");
  common(evaluate);
  evaluate->add_option("--policy", o.policy, "optimal | lookahead");
  auto* budget = app.add_subcommand("budget", "budget-constrained bounds (two CSVs)");
  common(budget);
  budget->add_option("--budgets", o.budgets, "comma separated expected budgets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (*solve) return cmd_solve(o);
    if (*trace) return cmd_trace(o);
    if (*compare) return cmd_compare(o);
    if (*evaluate) return cmd_evaluate(o);
    if (*budget) return cmd_budget(o);
  } catch (const lsopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
