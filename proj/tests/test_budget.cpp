#include <sstream>

#include <gtest/gtest.h>

#include "lsopt/budget.hpp"
#include "test_support.hpp"

namespace lsopt {
namespace {

using testing::brownian;

lsopt::Setup setup_for(std::shared_ptr<const Model> model) {
  return {model, ObservationHistory(0.0, 1.0, 0.0, 0.0)};
}

TEST(Budget, DualAtExpensiveLambda) {
  BudgetSolver solver(setup_for(brownian(20, 21)));
  EXPECT_DOUBLE_EQ(solver.value_at(2.0), 0.5);
  EXPECT_DOUBLE_EQ(solver.dual_value(3.0, 2.0), 6.5);
  EXPECT_THROW(solver.value_at(0.0), std::invalid_argument);
}

TEST(Budget, ZeroBudgetIsStoppingReward) {
  BudgetSolver solver(setup_for(brownian(20, 21)));
  const auto r = solver.solve_v1(0.0, 1e-3, 2.0, 1e-3, 500, 1);
  EXPECT_NEAR(r.v1, 0.5, 1e-12);
  EXPECT_EQ(r.v2_lower, 0.5);
  EXPECT_EQ(r.v2_se, 0.0);
  EXPECT_EQ(r.v2_upper, r.v1);
}

TEST(Budget, ValueIsConvexInLambda) {
  BudgetSolver solver(setup_for(brownian(30, 31)));
  const double lo = solver.value_at(0.02), mid = solver.value_at(0.05), hi = solver.value_at(0.08);
  EXPECT_LE(mid, 0.5 * (lo + hi) + 1e-12);
  EXPECT_GE(lo, mid);
  EXPECT_GE(mid, hi);
}

TEST(Budget, ValuesAreCachedPerLambda) {
  BudgetSolver solver(setup_for(brownian(10, 11)), 1e-3);
  solver.value_at(0.05);
  solver.value_at(0.05);
  solver.value_at(0.05 + 1e-6);
  EXPECT_EQ(solver.tables_built(), 1u);
  solver.value_at(0.06);
  EXPECT_EQ(solver.tables_built(), 2u);
}

TEST(Budget, RejectsBadArguments) {
  BudgetSolver solver(setup_for(brownian(10, 11)));
  EXPECT_THROW(solver.solve_v1(1.0, 0.0, 1.0, 1e-3, 10, 1), std::invalid_argument);
  EXPECT_THROW(solver.solve_v1(1.0, 0.5, 0.4, 1e-3, 10, 1), std::invalid_argument);
  EXPECT_THROW(solver.solve_v1(1.0, 0.01, 2.5, 1e-3, 10, 1), std::invalid_argument);
  EXPECT_THROW(solver.solve_v1(1.0, 0.01, 1.0, 0.0, 10, 1), std::invalid_argument);
  EXPECT_THROW(solver.solve_v1(10.0, 0.01, 1.0, 1e-3, 10, 1), std::invalid_argument);
  EXPECT_THROW(solver.solve_v1(-1.0, 0.01, 1.0, 1e-3, 10, 1), std::invalid_argument);
  EXPECT_THROW(BudgetSolver(setup_for(brownian(10, 11)), 0.0), std::invalid_argument);
}

// Weak duality, the V2 <= V1 sandwich, and monotone concave V1 in T.
TEST(BudgetProperty, DualityAndShape) {
  BudgetSolver solver(setup_for(brownian(30, 31)), 1e-4);
  std::vector<BudgetResult> results;
  for (int t = 0; t <= 5; ++t) results.push_back(solver.solve_v1(t, 1e-3, 2.0, 1e-4, 4000, 3));
  for (std::size_t t = 0; t < results.size(); ++t) {
    const auto& r = results[t];
    for (double lambda : {0.002, 0.01, 0.03, 0.1, 0.5, 2.0}) {
      EXPECT_LE(r.v1, solver.dual_value(static_cast<double>(t), lambda) + 1e-12);
    }
    EXPECT_LE(r.v2_lower, r.v1 + 3.0 * r.v2_se);
    if (t > 0) EXPECT_GE(r.v1, results[t - 1].v1 - 1e-9);
    if (t > 1) EXPECT_LE(r.v1 - results[t - 1].v1, results[t - 1].v1 - results[t - 2].v1 + 1e-3);
  }
}

TEST(Budget, MinimizerStableUnderTighterTolerance) {
  BudgetSolver solver(setup_for(brownian(20, 21)), 1e-5);
  const auto coarse = solver.solve_v1(2.0, 1e-3, 2.0, 1e-3, 100, 1);
  const auto fine = solver.solve_v1(2.0, 1e-3, 2.0, 1e-5, 100, 1);
  EXPECT_LE(fine.v1, coarse.v1 + 1e-12);
  EXPECT_NEAR(fine.v1, coarse.v1, 2e-3);
}

TEST(Budget, FractionalBudgetRandomizesRounding) {
  const auto s = setup_for(brownian(20, 21));
  const auto rewards = build_reward_tables(s.model);
  const auto r = evaluate_fixed_budget(s, rewards, 2.5, 20000, 4);
  EXPECT_NEAR(r.mean_tau, 2.5, 0.02);
  const auto whole = evaluate_fixed_budget(s, rewards, 3.0, 100, 4);
  EXPECT_EQ(whole.mean_tau, 3.0);
}

TEST(Budget, CsvLayout) {
  BudgetResult r{1.0, 0.25, 0.7, 0.69, 0.001, 0.7, false};
  std::ostringstream v1, v2;
  write_v1_csv(v1, {r});
  write_v2_csv(v2, {r});
  EXPECT_EQ(v1.str().substr(0, v1.str().find('\n')), "T,lambda_star,V1");
  EXPECT_EQ(v2.str().substr(0, v2.str().find('\n')), "T,V2_lower,se,V2_upper");
}

}  // namespace
}  // namespace lsopt
