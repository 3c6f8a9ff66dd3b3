#include "lsopt/policy.hpp"

#include <limits>
#include <stdexcept>

namespace lsopt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Choice {
  long location = -1;
  double improvement = -std::numeric_limits<double>::infinity();
};

// Scans gaps left to right; strict comparison keeps the leftmost maximum.
template <typename Score>
Choice best_gap(const std::vector<GapIndex>& gaps, Score score) {
  Choice best;
  for (const auto& g : gaps) {
    const auto [split, improvement] = score(g);
    if (split == kStop) continue;
    if (improvement > best.improvement) {
      best.improvement = improvement;
      best.location = g.left + split;
    }
  }
  return best;
}

}  // namespace

std::string policy_id(const PolicyKind& kind) {
  return std::visit(Overloaded{
                        [](const OptimalPolicy&) { return std::string("optimal"); },
                        [](const OneStepLookahead&) { return std::string("lookahead"); },
                        [](const FixedBudgetLookahead& p) {
                          return "fixed_budget_lookahead_T" + std::to_string(p.budget);
                        },
                    },
                    kind);
}

const Model& policy_model(const PolicyKind& kind) {
  return std::visit(Overloaded{
                        [](const OptimalPolicy& p) -> const Model& { return p.table->model(); },
                        [](const OneStepLookahead& p) -> const Model& { return *p.rewards->model; },
                        [](const FixedBudgetLookahead& p) -> const Model& { return *p.rewards->model; },
                    },
                    kind);
}

const RewardTables& policy_rewards(const PolicyKind& kind) {
  return std::visit(Overloaded{
                        [](const OptimalPolicy& p) -> const RewardTables& { return *p.table->rewards; },
                        [](const OneStepLookahead& p) -> const RewardTables& { return *p.rewards; },
                        [](const FixedBudgetLookahead& p) -> const RewardTables& { return *p.rewards; },
                    },
                    kind);
}

std::optional<double> decide(const PolicyKind& kind, const ObservationHistory& h,
                             int samples_taken) {
  const Grid& grid = policy_model(kind).grid();
  const auto gaps = index_gaps(grid, h);

  const Choice choice = std::visit(
      Overloaded{
          [&](const OptimalPolicy& p) {
            const ValueTable& t = *p.table;
            return best_gap(gaps, [&](const GapIndex& g) {
              return std::pair{t.action(g.il, g.ir, g.steps),
                               t.value(g.il, g.ir, g.steps) - t.stop_reward(g.il, g.ir, g.steps)};
            });
          },
          [&](const OneStepLookahead& p) {
            const RewardTables& r = *p.rewards;
            Choice c = best_gap(gaps, [&](const GapIndex& g) {
              const auto at = r.shape.index(g.steps, g.il, g.ir);
              return std::pair{r.gain_split[at], r.gain[at] - p.cost};
            });
            if (!(c.improvement > 0.0)) c.location = -1;
            return c;
          },
          [&](const FixedBudgetLookahead& p) {
            if (samples_taken >= p.budget) return Choice{};
            const RewardTables& r = *p.rewards;
            return best_gap(gaps, [&](const GapIndex& g) {
              const auto at = r.shape.index(g.steps, g.il, g.ir);
              return std::pair{r.gain_split[at], r.gain[at]};
            });
          },
      },
      kind);

  // The optimal table marks a split only when it strictly beats stopping.
  if (choice.location < 0) return std::nullopt;
  return grid.x(choice.location);
}

PolicyTrace run(const PolicyKind& kind, const ObservationHistory& h0, const ModelSpec& spec,
                double cost, Rng& rng) {
  const Model& model = policy_model(kind);
  if (!(model.spec() == spec)) throw std::invalid_argument("policy model does not match the run");
  if (const auto* opt = std::get_if<OptimalPolicy>(&kind); opt && opt->table->cost != cost) {
    throw std::invalid_argument("value table cost does not match the run cost");
  }
  if (const auto* fb = std::get_if<FixedBudgetLookahead>(&kind);
      fb && (fb->budget < 0 || fb->budget > model.m() - 1)) {
    throw std::invalid_argument("sample budget exceeds the number of interior grid points");
  }

  const Grid& grid = model.grid();
  std::vector<double> scratch(model.n());
  PolicyTrace trace;
  ObservationHistory h = h0;
  while (auto x = decide(kind, h, trace.tau)) {
    const long loc = *grid.x_index(*x);
    for (const auto& g : index_gaps(grid, h)) {
      if (g.left < loc && loc < g.left + g.steps) {
        const int sl = static_cast<int>(loc - g.left);
        const int i = sample_bridge_index(model.kernel(), sl, g.steps - sl, g.il, g.ir, rng, scratch);
        const Observation o{*x, grid.y(i)};
        h = h.insert(o);
        trace.steps.push_back(o);
        break;
      }
    }
    ++trace.tau;
  }

  trace.final_reward = history_stop_reward(policy_rewards(kind), h);
  trace.performance = trace.final_reward - cost * trace.tau;
  return trace;
}

std::vector<nlohmann::json> trace_records(const ValueTable& table, const ObservationHistory& h0,
                                          const PolicyTrace& trace) {
  const Grid& grid = table.model().grid();
  std::vector<nlohmann::json> out;
  ObservationHistory h = h0;
  for (std::size_t step = 0; step < trace.steps.size(); ++step) {
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& g : index_gaps(grid, h)) {
      const QValues q = q_values(table, g.il, g.ir, g.steps);
      for (std::size_t s = 0; s < q.splits.size(); ++s) {
        curve.push_back({grid.x(g.left + static_cast<long>(s) + 1), q.splits[s], q.stop});
      }
    }
    const auto& o = trace.steps[step];
    out.push_back({
        {"step", step},
        {"x", o.x},
        {"y", o.y},
        {"value", history_value(table, h)},
        {"stop_reward", history_stop_reward(*table.rewards, h)},
        {"curve", std::move(curve)},
    });
    h = h.insert(o);
  }
  return out;
}

}  // namespace lsopt
