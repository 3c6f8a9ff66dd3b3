#pragma once

#include <memory>
#include <span>

#include <json.hpp>

#include "lsopt/prior.hpp"
#include "lsopt/reward.hpp"

namespace lsopt {

/// Everything that defines the discretized problem except the sampling cost.
struct ModelSpec {
  PriorModel prior;
  Grid grid;
  RewardSpec reward;

  bool operator==(const ModelSpec&) const = default;
};

nlohmann::json to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& j);

/// ModelSpec plus the precomputed kernel and class scores. Immutable; share
/// through std::shared_ptr<const Model>.
class Model {
 public:
  explicit Model(ModelSpec spec);

  const ModelSpec& spec() const { return spec_; }
  const PriorModel& prior() const { return spec_.prior; }
  const Grid& grid() const { return spec_.grid; }
  const RewardSpec& reward() const { return spec_.reward; }
  const BridgeKernel& kernel() const { return kernel_; }
  const ClassScores& scores() const { return scores_; }
  int n() const { return spec_.grid.n(); }
  int m() const { return spec_.grid.m(); }

  double stop_reward(int steps, int il, int ir, std::span<double> scratch) const {
    return stop_reward_indexed(kernel_, scores_, steps, il, ir, scratch);
  }

 private:
  ModelSpec spec_;
  BridgeKernel kernel_;
  ClassScores scores_;
};

std::shared_ptr<const Model> make_model(ModelSpec spec);

}  // namespace lsopt
