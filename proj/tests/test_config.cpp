#include <sstream>

#include <gtest/gtest.h>

#include "lsopt/config.hpp"

namespace lsopt {
namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string error_field(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

TEST(Config, Defaults) {
  const auto cfg = parse("");
  EXPECT_EQ(cfg.model.prior, PriorModel::brownian());
  EXPECT_EQ(cfg.model.grid.m(), 100);
  EXPECT_EQ(cfg.model.grid.n(), 81);
  EXPECT_EQ(cfg.cost, 0.05);
  EXPECT_EQ(cfg.initial_history(), ObservationHistory(0.0, 1.0, 0.0, 0.0));
  EXPECT_EQ(cfg.costs, (std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2}));
}

TEST(Config, ParsesAllKeys) {
  const auto cfg = parse(R"(# comment
prior = cpp
mu = 10
m = 20   # trailing comment
n = 21
k = 1
yrange = 5
reward = clipped
C = 2
c = 0.1
ya = 1.5
yb = 0.5
costs = 0.1, 0.2
budgets = 1,2.5
reps = 77
seed = 9
lambda_lo = 0.01
lambda_hi = 1
lambda_tol = 0.0001
)");
  EXPECT_EQ(cfg.model.prior, PriorModel::compound_poisson(10.0));
  EXPECT_EQ(cfg.model.grid, Grid(0.0, 1.0, 20, 1.0, 21, 5.0));
  EXPECT_EQ(cfg.model.reward, RewardSpec::clipped_linear(1.0, 2.0));
  EXPECT_EQ(cfg.costs, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.budgets, (std::vector<double>{1.0, 2.5}));
  EXPECT_EQ(cfg.reps, 77);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.initial_history(), ObservationHistory(0.0, 1.0, 1.5, 0.5));
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(error_field("c = -1"), "c");
  try {
    parse("c = -1");
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cost must be positive"), std::string::npos);
  }
  EXPECT_EQ(error_field("colour = red"), "colour");
  EXPECT_EQ(error_field("prior = levy"), "prior");
  EXPECT_EQ(error_field("m = 0"), "m");
  EXPECT_EQ(error_field("m = 2.5"), "m");
  EXPECT_EQ(error_field("n = x"), "n");
  EXPECT_EQ(error_field("ya = 0.01"), "ya");
  EXPECT_EQ(error_field("costs = 0.1, -2"), "costs");
  EXPECT_EQ(error_field("prior = cpp\nmu = 0"), "mu");
  EXPECT_EQ(error_field("reward = clipped\nC = 0"), "C");
  EXPECT_EQ(error_field("lambda_lo = 3"), "lambda_lo");
  EXPECT_EQ(error_field("just words"), "line 1");
}

}  // namespace
}  // namespace lsopt
