#include "lsopt/sim.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <omp.h>

namespace lsopt {

namespace {

// Welford moments accumulated in replication order.
struct Moments {
  long count = 0;
  double mean_x = 0.0, mean_y = 0.0;
  double m2_x = 0.0, m2_y = 0.0, cxy = 0.0;

  void add(double x, double y) {
    ++count;
    const double dx = x - mean_x;
    mean_x += dx / count;
    const double dy = y - mean_y;
    mean_y += dy / count;
    m2_x += dx * (x - mean_x);
    m2_y += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }
  double var_x() const { return count > 1 ? m2_x / (count - 1) : 0.0; }
  double var_y() const { return count > 1 ? m2_y / (count - 1) : 0.0; }
  double cov() const { return count > 1 ? cxy / (count - 1) : 0.0; }
};

}  // namespace

Rng replication_rng(std::uint64_t seed, std::uint64_t rep, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

std::vector<RunOutcome> simulate(const PolicyKind& kind, const Setup& setup, double cost, long reps,
                                 std::uint64_t seed, Execution exec) {
  if (reps < 1) throw std::invalid_argument("replications must be at least 1");
  const bool fixed_budget = std::holds_alternative<FixedBudgetLookahead>(kind);
  const double charged = fixed_budget ? 0.0 : cost;
  const ModelSpec& spec = setup.model->spec();
  // validates the policy against the setup once, outside the parallel region
  {
    Rng probe = replication_rng(seed, 0);
    (void)run(kind, setup.h0, spec, charged, probe);
  }
  std::vector<RunOutcome> out(static_cast<std::size_t>(reps));
  auto one = [&](long r) {
    Rng rng = replication_rng(seed, static_cast<std::uint64_t>(r));
    const PolicyTrace t = run(kind, setup.h0, spec, charged, rng);
    out[static_cast<std::size_t>(r)] = {t.performance, t.final_reward, t.tau};
  };
  if (exec == Execution::Serial) {
    for (long r = 0; r < reps; ++r) one(r);
  } else {
#pragma omp parallel for schedule(dynamic, 64)
    for (long r = 0; r < reps; ++r) one(r);
  }
  return out;
}

EvalReport summarize(const std::string& policy, const std::vector<RunOutcome>& outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("no outcomes to summarize");
  Moments perf;
  double tau_mean = 0.0, reward_mean = 0.0;
  long k = 0;
  for (const auto& o : outcomes) {
    perf.add(o.performance, o.performance);
    ++k;
    tau_mean += (o.tau - tau_mean) / k;
    reward_mean += (o.reward - reward_mean) / k;
  }
  EvalReport r;
  r.policy = policy;
  r.replications = static_cast<long>(outcomes.size());
  r.mean_performance = perf.mean_x;
  r.std_error = std::sqrt(perf.var_x() / r.replications);
  r.mean_tau = tau_mean;
  r.mean_reward = reward_mean;
  return r;
}

EvalReport evaluate(const PolicyKind& kind, const Setup& setup, double cost, long reps,
                    std::uint64_t seed, Execution exec) {
  return summarize(policy_id(kind), simulate(kind, setup, cost, reps, seed, exec));
}

double CostPoint::ratio() const {
  return lookahead.mean_performance / optimal.mean_performance;
}

double CostPoint::paired_se(double rho) const {
  const double v = var_lookahead + rho * rho * var_optimal - 2.0 * rho * covariance;
  return std::sqrt(std::max(v, 0.0) / optimal.replications);
}

std::vector<CostPoint> sweep_cost(const Setup& setup, const std::vector<double>& costs, long reps,
                                  std::uint64_t seed, Execution exec) {
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!(costs[i] > 0.0)) throw std::invalid_argument("cost must be positive");
    if (i > 0 && !(costs[i] > costs[i - 1])) throw std::invalid_argument("costs must be ascending");
  }
  const auto rewards = build_reward_tables(setup.model, exec);
  std::vector<CostPoint> points;
  for (double c : costs) {
    auto table = std::make_shared<const ValueTable>(build_table(rewards, c, exec));
    const PolicyKind optimal = OptimalPolicy{table};
    const PolicyKind lookahead = OneStepLookahead{rewards, c};
    const auto o = simulate(optimal, setup, c, reps, seed, exec);
    const auto l = simulate(lookahead, setup, c, reps, seed, exec);
    Moments joint;
    for (long r = 0; r < reps; ++r) joint.add(o[r].performance, l[r].performance);

    CostPoint p;
    p.cost = c;
    p.optimal_table_value = history_value(*table, setup.h0);
    p.optimal = summarize(policy_id(optimal), o);
    p.lookahead = summarize(policy_id(lookahead), l);
    p.var_optimal = joint.var_x();
    p.var_lookahead = joint.var_y();
    p.covariance = joint.cov();
    points.push_back(std::move(p));
  }
  return points;
}

void write_sweep_csv(std::ostream& os, const std::vector<CostPoint>& points) {
  os << "c,optimal_value,optimal_se,lookahead_value,lookahead_se,ratio\n";
  os.precision(10);
  for (const auto& p : points) {
    os << p.cost << ',' << p.optimal.mean_performance << ',' << p.optimal.std_error << ','
       << p.lookahead.mean_performance << ',' << p.lookahead.std_error << ',' << p.ratio() << '\n';
  }
}

nlohmann::json to_json(const EvalReport& r) {
  return {{"policy", r.policy},
          {"replications", r.replications},
          {"mean_performance", r.mean_performance},
          {"std_error", r.std_error},
          {"mean_tau", r.mean_tau},
          {"mean_reward", r.mean_reward}};
}

}  // namespace lsopt
