#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "lsopt/policy.hpp"

namespace lsopt {

/// Problem instance for an experiment: the discretized model and H0.
struct Setup {
  std::shared_ptr<const Model> model;
  ObservationHistory h0;
};

struct RunOutcome {
  double performance = 0.0;
  double reward = 0.0;
  int tau = 0;
};

struct EvalReport {
  std::string policy;
  long replications = 0;
  double mean_performance = 0.0;
  double std_error = 0.0;
  double mean_tau = 0.0;
  double mean_reward = 0.0;
};

/// Independent stream for replication `rep` (and sub-stream `stream`).
Rng replication_rng(std::uint64_t seed, std::uint64_t rep, std::uint64_t stream = 0);

/// Runs `reps` replications; replication r draws from replication_rng(seed, r)
/// so that two policies given the same seed share random numbers. Outcomes
/// are returned in replication order regardless of thread count. Fixed-budget
/// policies are scored without the cost term.
std::vector<RunOutcome> simulate(const PolicyKind& kind, const Setup& setup, double cost, long reps,
                                 std::uint64_t seed, Execution exec = Execution::Parallel);

EvalReport summarize(const std::string& policy, const std::vector<RunOutcome>& outcomes);

EvalReport evaluate(const PolicyKind& kind, const Setup& setup, double cost, long reps,
                    std::uint64_t seed, Execution exec = Execution::Parallel);

struct CostPoint {
  double cost = 0.0;
  double optimal_table_value = 0.0;
  EvalReport optimal;
  EvalReport lookahead;
  // Sample (co)variances of per-replication performance, common random numbers.
  double var_optimal = 0.0;
  double var_lookahead = 0.0;
  double covariance = 0.0;

  double ratio() const;
  /// Standard error of mean(lookahead) - rho * mean(optimal).
  double paired_se(double rho) const;
};

/// One value table per cost; both policies reuse the same replication seeds.
std::vector<CostPoint> sweep_cost(const Setup& setup, const std::vector<double>& costs, long reps,
                                  std::uint64_t seed, Execution exec = Execution::Parallel);

/// c,optimal_value,optimal_se,lookahead_value,lookahead_se,ratio
void write_sweep_csv(std::ostream& os, const std::vector<CostPoint>& points);

nlohmann::json to_json(const EvalReport& r);

}  // namespace lsopt
