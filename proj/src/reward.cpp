#include "lsopt/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsopt {

RewardSpec RewardSpec::clipped_linear(double k, double clip) {
  if (!(clip > 0.0)) throw std::invalid_argument("clip bound C must be positive");
  return {RewardKind::ClippedLinear, k, clip};
}

std::string RewardSpec::name() const {
  return kind == RewardKind::Indicator ? "indicator" : "clipped";
}

ClassScores::ClassScores(const RewardSpec& reward, const Grid& grid)
    : plus_(grid.n()), minus_(grid.n()), certain_(grid.n()) {
  const double half = 0.5 * grid.dy();
  for (int i = 0; i < grid.n(); ++i) {
    const double d = grid.y(i) - reward.k;
    if (reward.kind == RewardKind::Indicator) {
      if (std::abs(d) < half) {
        plus_[i] = minus_[i] = 0.5;
      } else {
        plus_[i] = d > 0.0 ? 1.0 : 0.0;
        minus_[i] = 1.0 - plus_[i];
      }
    } else {
      plus_[i] = std::clamp(d, -reward.clip, reward.clip);
      minus_[i] = -plus_[i];
    }
    certain_[i] = std::max(plus_[i], minus_[i]);
  }
}

double ClassScores::expected_best(std::span<const double> weights, double scale) const {
  const std::size_t n = weights.size();
  double p0 = 0.0, p1 = 0.0, m0 = 0.0, m1 = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    p0 += weights[i] * plus_[i];
    m0 += weights[i] * minus_[i];
    p1 += weights[i + 1] * plus_[i + 1];
    m1 += weights[i + 1] * minus_[i + 1];
  }
  for (; i < n; ++i) {
    p0 += weights[i] * plus_[i];
    m0 += weights[i] * minus_[i];
  }
  return std::max(p0 + p1, m0 + m1) * scale;
}

double pointwise_value(const RewardSpec& reward, std::span<const double> pmf, const Grid& grid) {
  if (pmf.size() != static_cast<std::size_t>(grid.n())) {
    throw std::invalid_argument("pmf length does not match the y-grid");
  }
  return ClassScores(reward, grid).expected_best(pmf);
}

double stop_reward_indexed(const BridgeKernel& kernel, const ClassScores& scores, int steps, int il,
                           int ir, std::span<double> scratch) {
  double interior = 0.0;
  for (int s = 1; s < steps; ++s) {
    const double total = kernel.weights(s, steps - s, il, ir, scratch);
    interior += scores.expected_best(scratch, 1.0 / total);
  }
  const double h = kernel.grid().h();
  return h * (0.5 * scores.certain(il) + interior + 0.5 * scores.certain(ir));
}

double stop_reward(const RewardSpec& reward, const PriorModel& prior, const Grid& grid, double dx,
                   double y_left, double y_right) {
  const auto steps = grid.steps(dx);
  if (!steps || *steps > grid.m()) {
    throw std::invalid_argument("gap length must be a positive multiple of h within the grid");
  }
  const auto il = grid.y_index(y_left);
  const auto ir = grid.y_index(y_right);
  if (!il || !ir) throw std::invalid_argument("gap endpoint values must lie on the y-grid");
  const BridgeKernel kernel(prior, grid);
  const ClassScores scores(reward, grid);
  std::vector<double> scratch(grid.n());
  return stop_reward_indexed(kernel, scores, static_cast<int>(*steps), *il, *ir, scratch);
}

}  // namespace lsopt
