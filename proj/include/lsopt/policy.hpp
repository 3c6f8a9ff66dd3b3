#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lsopt/history.hpp"
#include "lsopt/solver.hpp"

namespace lsopt {

/// Greedy on the value table: sample where Q_gap(x') - R(gap) is largest
/// while that improvement is positive.
struct OptimalPolicy {
  std::shared_ptr<const ValueTable> table;
};

/// Sample where the expected one-step reward gain is largest; stop once the
/// best gain does not exceed the cost.
struct OneStepLookahead {
  std::shared_ptr<const RewardTables> rewards;
  double cost = 0.0;
};

/// Same argmax as OneStepLookahead, ignoring sign and cost, for exactly
/// `budget` samples.
struct FixedBudgetLookahead {
  std::shared_ptr<const RewardTables> rewards;
  int budget = 0;
};

using PolicyKind = std::variant<OptimalPolicy, OneStepLookahead, FixedBudgetLookahead>;

std::string policy_id(const PolicyKind& kind);
const Model& policy_model(const PolicyKind& kind);
const RewardTables& policy_rewards(const PolicyKind& kind);

/// Next location to sample, or nullopt to stop. Ties go to the leftmost
/// location. Throws std::invalid_argument for off-grid histories.
std::optional<double> decide(const PolicyKind& kind, const ObservationHistory& h,
                             int samples_taken = 0);

struct PolicyTrace {
  std::vector<Observation> steps;
  int tau = 0;
  double final_reward = 0.0;
  double performance = 0.0;
};

/// Executes the policy from h0, drawing each observation from the bridge
/// pmf of its flanking observations. Performance is final_reward - cost*tau.
/// Throws std::invalid_argument when the policy's model differs from
/// `spec`, an optimal policy's table cost differs from `cost`, or a fixed
/// budget exceeds m - 1.
PolicyTrace run(const PolicyKind& kind, const ObservationHistory& h0, const ModelSpec& spec,
                double cost, Rng& rng);

/// One JSON object per sample of an optimal-policy trace: step, x, y, the
/// table value and stopping reward of the history before the sample, and
/// the candidate curve [[x', Q_gap(x'), R(gap)], ...].
std::vector<nlohmann::json> trace_records(const ValueTable& table, const ObservationHistory& h0,
                                          const PolicyTrace& trace);

}  // namespace lsopt
