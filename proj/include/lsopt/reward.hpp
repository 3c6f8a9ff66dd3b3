#pragma once

#include <span>
#include <string>
#include <vector>

#include "lsopt/prior.hpp"

namespace lsopt {

enum class RewardKind { Indicator, ClippedLinear };

/// Binary classification scores f_+ and f_- about threshold k.
///   Indicator:     f_+(y) = 1{y >= k},  f_-(y) = 1{y <= k}
///   ClippedLinear: f_+(y) = clamp(y - k, -C, C),  f_- = -f_+
struct RewardSpec {
  RewardKind kind = RewardKind::Indicator;
  double k = 0.0;
  double clip = 1.0;

  static RewardSpec indicator(double k) { return {RewardKind::Indicator, k, 1.0}; }
  static RewardSpec clipped_linear(double k, double clip);

  /// Per-unit-length bound on |max_i f_i|.
  double bound() const { return kind == RewardKind::Indicator ? 1.0 : clip; }
  std::string name() const;

  bool operator==(const RewardSpec&) const = default;
};

/// f_+ and f_- averaged over each y-grid cell. A cell straddling k splits
/// its indicator mass 50/50.
class ClassScores {
 public:
  ClassScores(const RewardSpec& reward, const Grid& grid);

  /// max(E f_+, E f_-) under pmf.
  double expected_best(std::span<const double> pmf) const { return expected_best(pmf, 1.0); }
  /// Same for unnormalized weights scaled by `scale`.
  double expected_best(std::span<const double> weights, double scale) const;
  /// Best score when Y is known to lie in cell i.
  double certain(int i) const { return certain_[i]; }

 private:
  std::vector<double> plus_, minus_, certain_;
};

double pointwise_value(const RewardSpec& reward, std::span<const double> pmf, const Grid& grid);

/// Expected stopping reward over a gap of `steps` lattice steps with
/// endpoint y-indices il, ir: trapezoid rule on the lattice, interior
/// integrands from the bridge pmf, endpoint integrands from the observed
/// cells. scratch must hold n doubles.
double stop_reward_indexed(const BridgeKernel& kernel, const ClassScores& scores, int steps, int il,
                           int ir, std::span<double> scratch);

double stop_reward(const RewardSpec& reward, const PriorModel& prior, const Grid& grid, double dx,
                   double y_left, double y_right);

}  // namespace lsopt
