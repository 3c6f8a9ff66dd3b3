#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "lsopt/history.hpp"
#include "lsopt/model.hpp"

namespace lsopt::oracle {

/// Exhaustive backward recursion over full histories on a tiny lattice:
///   V(H) = max(R(H), max_{x' unsampled} E[V(H + (x', Y(x')))] - c)
/// memoized on the sorted history. Shares only the bridge pmf and stopping
/// reward primitives with the solver.
class BruteForce {
 public:
  /// Throws std::invalid_argument for cost <= 0.
  BruteForce(std::shared_ptr<const Model> model, double cost);

  /// h must lie on the model's lattice and y-grid and span at most 9
  /// lattice steps (8 interior candidates).
  double value(const ObservationHistory& h);
  /// R(H): sum of per-gap stopping rewards.
  double stop_reward(const ObservationHistory& h) const;

  std::size_t states() const { return memo_.size(); }

 private:
  // state[p] = y-index observed at lattice offset p, or -1
  double solve(std::vector<int>& state);
  double reward_of(const std::vector<int>& state) const;

  std::shared_ptr<const Model> model_;
  double cost_;
  std::unordered_map<std::string, double> memo_;
};

double brute_value(std::shared_ptr<const Model> model, double cost, const ObservationHistory& h);

}  // namespace lsopt::oracle
