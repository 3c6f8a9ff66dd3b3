#include "lsopt/budget.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lsopt {

BudgetSolver::BudgetSolver(Setup setup, double tol, Execution exec)
    : setup_(std::move(setup)), step_(tol / 10.0), exec_(exec) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  rewards_ = build_reward_tables(setup_.model, exec_);
}

double BudgetSolver::snap(double lambda) const {
  return static_cast<double>(std::llround(lambda / step_)) * step_;
}

double BudgetSolver::value_at(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const long long key = std::llround(lambda / step_);
  if (key < 1) throw std::invalid_argument("lambda below the cache resolution");
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const ValueTable t = build_table(rewards_, snap(lambda), exec_);
  const double v = history_value(t, setup_.h0);
  cache_.emplace(key, v);
  return v;
}

double BudgetSolver::dual_value(double budget, double lambda) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be non-negative");
  return value_at(lambda) + snap(lambda) * budget;
}

BudgetResult BudgetSolver::solve_v1(double budget, double lambda_lo, double lambda_hi, double tol,
                                    long reps, std::uint64_t seed) {
  const double bound = setup_.model->reward().bound();
  if (!(lambda_lo > 0.0 && lambda_lo < lambda_hi && lambda_hi <= 2.0 * bound)) {
    throw std::invalid_argument("lambda bracket must satisfy 0 < lo < hi <= 2C");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(budget >= 0.0 && budget <= setup_.model->m() - 1)) {
    throw std::invalid_argument("budget must lie in [0, m - 1]");
  }

  double best_lambda = lambda_lo;
  double best = std::numeric_limits<double>::infinity();
  auto f = [&](double lambda) {
    const double v = dual_value(budget, lambda);
    if (v < best || (v == best && lambda > best_lambda)) {
      best = v;
      best_lambda = lambda;
    }
    return v;
  };

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = lambda_lo, hi = lambda_hi;
  f(lo);
  f(hi);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo >= tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }

  BudgetResult r;
  r.budget = budget;
  r.lambda_star = snap(best_lambda);
  r.v1 = best;
  r.v2_upper = best;
  r.at_lower_boundary = best_lambda - lambda_lo < tol;
  const EvalReport lower = evaluate_fixed_budget(setup_, rewards_, budget, reps, seed, exec_);
  r.v2_lower = lower.mean_performance;
  r.v2_se = lower.std_error;
  return r;
}

EvalReport evaluate_fixed_budget(const Setup& setup, std::shared_ptr<const RewardTables> rewards,
                                 double budget, long reps, std::uint64_t seed, Execution exec) {
  if (reps < 1) throw std::invalid_argument("replications must be at least 1");
  const int floor_t = static_cast<int>(std::floor(budget));
  const double frac = budget - floor_t;
  const PolicyKind low = FixedBudgetLookahead{rewards, floor_t};
  const PolicyKind high = FixedBudgetLookahead{rewards, frac > 0.0 ? floor_t + 1 : floor_t};
  const ModelSpec& spec = setup.model->spec();
  {
    Rng probe = replication_rng(seed, 0);
    (void)run(high, setup.h0, spec, 0.0, probe);
  }

  std::vector<RunOutcome> out(static_cast<std::size_t>(reps));
  auto one = [&](long r) {
    Rng coin = replication_rng(seed, static_cast<std::uint64_t>(r), 1);
    const bool up = std::uniform_real_distribution<double>(0.0, 1.0)(coin) < frac;
    Rng rng = replication_rng(seed, static_cast<std::uint64_t>(r));
    const PolicyTrace t = run(up ? high : low, setup.h0, spec, 0.0, rng);
    out[static_cast<std::size_t>(r)] = {t.performance, t.final_reward, t.tau};
  };
  if (exec == Execution::Serial) {
    for (long r = 0; r < reps; ++r) one(r);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (long r = 0; r < reps; ++r) one(r);
  }
  return summarize("fixed_budget_lookahead", out);
}

void write_v1_csv(std::ostream& os, const std::vector<BudgetResult>& results) {
  os << "T,lambda_star,V1\n";
  os.precision(10);
  for (const auto& r : results) os << r.budget << ',' << r.lambda_star << ',' << r.v1 << '\n';
}

void write_v2_csv(std::ostream& os, const std::vector<BudgetResult>& results) {
  os << "T,V2_lower,se,V2_upper\n";
  os.precision(10);
  for (const auto& r : results) {
    os << r.budget << ',' << r.v2_lower << ',' << r.v2_se << ',' << r.v2_upper << '\n';
  }
}

}  // namespace lsopt
