#include <limits>
#include <stdexcept>

#include "lsopt/solver.hpp"

namespace lsopt::reference {

ValueTable build_table_serial(std::shared_ptr<const Model> model, double cost) {
  if (!(cost > 0.0)) throw std::invalid_argument("cost must be positive");
  const int n = model->n();
  const int m = model->m();
  auto rewards = std::make_shared<RewardTables>();
  rewards->shape = {n, m};
  rewards->stop.assign(rewards->shape.size(), 0.0);
  rewards->gain.assign(rewards->shape.size(), -std::numeric_limits<double>::infinity());
  rewards->gain_split.assign(rewards->shape.size(), kStop);

  ValueTable t;
  t.cost = cost;
  t.shape = rewards->shape;
  t.values.assign(t.shape.size(), 0.0);
  t.actions.assign(t.shape.size(), kStop);

  std::vector<double> pmf(n);
  auto& S = rewards->stop;
  auto& V = t.values;
  const auto& shape = t.shape;
  for (int j = 1; j <= m; ++j) {
    for (int il = 0; il < n; ++il) {
      for (int ir = 0; ir < n; ++ir) {
        const std::size_t at = shape.index(j, il, ir);
        S[at] = model->stop_reward(j, il, ir, pmf);

        double best = S[at];
        std::int32_t arg = kStop;
        double best_gain = -std::numeric_limits<double>::infinity();
        std::int32_t gain_arg = kStop;
        for (int s = 1; s < j; ++s) {
          model->kernel().pmf(s, j - s, il, ir, pmf);
          double ev = 0.0;
          double es = 0.0;
          for (int i = 0; i < n; ++i) {
            ev += pmf[i] * (V[shape.index(s, il, i)] + V[shape.index(j - s, i, ir)]);
            es += pmf[i] * (S[shape.index(s, il, i)] + S[shape.index(j - s, i, ir)]);
          }
          if (ev - cost > best) {
            best = ev - cost;
            arg = s;
          }
          if (es - S[at] > best_gain) {
            best_gain = es - S[at];
            gain_arg = s;
          }
        }
        V[at] = best;
        t.actions[at] = arg;
        rewards->gain[at] = best_gain;
        rewards->gain_split[at] = gain_arg;
      }
    }
  }
  rewards->model = std::move(model);
  t.rewards = std::move(rewards);
  return t;
}

}  // namespace lsopt::reference
