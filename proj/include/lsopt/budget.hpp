#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include "lsopt/sim.hpp"

namespace lsopt {

struct BudgetResult {
  double budget = 0.0;
  double lambda_star = 0.0;
  double v1 = 0.0;        // inf over lambda of V(H0, lambda) + lambda * budget
  double v2_lower = 0.0;  // fixed-budget lookahead estimate
  double v2_se = 0.0;
  double v2_upper = 0.0;  // = v1
  /// The minimizer sits at the lower end of the bracket, so the budget may
  /// exceed what any cost-per-sample policy spends; v1 is then not trusted.
  bool at_lower_boundary = false;
};

/// Expected-budget-constrained value through the Lagrangian dual
/// min_lambda V(H0, lambda) + lambda T, minimized by golden-section search
/// (V is convex and piecewise linear in lambda).
class BudgetSolver {
 public:
  /// tol is the default lambda tolerance; lambdas are snapped to a lattice
  /// of tol / 10 and V(H0, lambda) is cached per lattice point.
  explicit BudgetSolver(Setup setup, double tol = 1e-3, Execution exec = Execution::Parallel);

  /// V(H0, lambda). Throws std::invalid_argument for lambda <= 0.
  double value_at(double lambda);
  double dual_value(double budget, double lambda);

  /// Throws std::invalid_argument unless 0 < lo < hi <= 2 * reward bound,
  /// tol > 0 and budget in [0, m - 1].
  BudgetResult solve_v1(double budget, double lambda_lo, double lambda_hi, double tol, long reps,
                        std::uint64_t seed);

  std::size_t tables_built() const { return cache_.size(); }
  const Setup& setup() const { return setup_; }

 private:
  double snap(double lambda) const;

  Setup setup_;
  double step_;
  Execution exec_;
  std::shared_ptr<const RewardTables> rewards_;
  std::map<long long, double> cache_;
};

/// Fixed-budget lookahead estimate for a possibly fractional budget: each
/// replication takes ceil(T) samples with probability T - floor(T), else
/// floor(T). No cost is charged.
EvalReport evaluate_fixed_budget(const Setup& setup, std::shared_ptr<const RewardTables> rewards,
                                 double budget, long reps, std::uint64_t seed,
                                 Execution exec = Execution::Parallel);

/// T,lambda_star,V1
void write_v1_csv(std::ostream& os, const std::vector<BudgetResult>& results);
/// T,V2_lower,se,V2_upper
void write_v2_csv(std::ostream& os, const std::vector<BudgetResult>& results);

}  // namespace lsopt
