#include <sstream>

#include <omp.h>
#include <gtest/gtest.h>

#include "lsopt/sim.hpp"
#include "test_support.hpp"

namespace lsopt {
namespace {

using testing::brownian;
using testing::compound_poisson;

lsopt::Setup setup_for(std::shared_ptr<const Model> model) {
  return {model, ObservationHistory(0.0, 1.0, model->grid().k(), model->grid().k())};
}

TEST(Sim, ExpensiveSamplingHasNoVariance) {
  const auto s = setup_for(brownian(20, 21));
  const auto table = std::make_shared<const ValueTable>(build_table(s.model, 2.0));
  const auto r = evaluate(OptimalPolicy{table}, s, 2.0, 500, 1);
  EXPECT_EQ(r.mean_performance, history_stop_reward(*table->rewards, s.h0));
  EXPECT_EQ(r.std_error, 0.0);
  EXPECT_EQ(r.mean_tau, 0.0);
  EXPECT_EQ(r.replications, 500);
}

TEST(Sim, MonteCarloMatchesTableValue) {
  for (const auto& model : {brownian(50, 41), compound_poisson(50, 41)}) {
    const auto s = setup_for(model);
    const auto table = std::make_shared<const ValueTable>(build_table(model, 0.05));
    const auto r = evaluate(OptimalPolicy{table}, s, 0.05, 20000, 11);
    EXPECT_NEAR(r.mean_performance, history_value(*table, s.h0), 3.0 * r.std_error) << model->prior().name();
  }
}

TEST(Sim, ResultsIndependentOfThreadCount) {
  const auto s = setup_for(compound_poisson(20, 21));
  const auto rewards = build_reward_tables(s.model);
  const PolicyKind kind = OneStepLookahead{rewards, 0.01};
  const auto serial = simulate(kind, s, 0.01, 3000, 9, Execution::Serial);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 3, 4}) {
    omp_set_num_threads(threads);
    const auto par = simulate(kind, s, 0.01, 3000, 9, Execution::Parallel);
    ASSERT_EQ(par.size(), serial.size());
    for (std::size_t r = 0; r < par.size(); ++r) {
      EXPECT_EQ(par[r].performance, serial[r].performance);
      EXPECT_EQ(par[r].tau, serial[r].tau);
    }
  }
  omp_set_num_threads(saved);
  const auto a = summarize("x", serial);
  const auto b = summarize("x", simulate(kind, s, 0.01, 3000, 9));
  EXPECT_EQ(a.mean_performance, b.mean_performance);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Sim, ReplicationStreamsDiffer) {
  Rng a = replication_rng(1, 0), b = replication_rng(1, 1), c = replication_rng(2, 0), d = replication_rng(1, 0, 1);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
  EXPECT_EQ(x, replication_rng(1, 0)());
}

TEST(Sim, SweepWithExpensiveSamplingIsTrivial) {
  const auto s = setup_for(brownian(20, 21));
  const auto points = sweep_cost(s, {2.0, 3.0}, 200, 1);
  ASSERT_EQ(points.size(), 2u);
  for (const auto& p : points) {
    EXPECT_EQ(p.optimal.mean_performance, 0.5);
    EXPECT_EQ(p.lookahead.mean_performance, 0.5);
    EXPECT_EQ(p.ratio(), 1.0);
    EXPECT_EQ(p.optimal.mean_tau, 0.0);
  }
}

TEST(Sim, SweepOrderingAndDominance) {
  const auto s = setup_for(brownian(30, 31));
  const auto points = sweep_cost(s, {0.005, 0.02, 0.08}, 5000, 2);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    EXPECT_GE(p.optimal.mean_performance, p.lookahead.mean_performance - 3.0 * p.paired_se(1.0));
    EXPECT_NEAR(p.optimal.mean_performance, p.optimal_table_value, 3.0 * p.optimal.std_error);
    if (k > 0) {
      EXPECT_LE(p.optimal_table_value, points[k - 1].optimal_table_value);
      EXPECT_LE(p.optimal.mean_tau, points[k - 1].optimal.mean_tau);
    }
  }
  EXPECT_THROW(sweep_cost(s, {0.02, 0.01}, 10, 1), std::invalid_argument);
  EXPECT_THROW(sweep_cost(s, {0.0}, 10, 1), std::invalid_argument);
}

TEST(Sim, SweepCsvLayout) {
  const auto points = sweep_cost(setup_for(brownian(10, 11)), {2.0}, 10, 1);
  std::ostringstream os;
  write_sweep_csv(os, points);
  std::istringstream lines(os.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "c,optimal_value,optimal_se,lookahead_value,lookahead_se,ratio");
  EXPECT_EQ(row, "2,0.5,0,0.5,0,1");
}

}  // namespace
}  // namespace lsopt
