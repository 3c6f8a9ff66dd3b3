#include "lsopt/solver.hpp"

#include <stdexcept>

#include "solver_detail.hpp"

namespace lsopt {

std::vector<GapIndex> index_gaps(const Grid& grid, const ObservationHistory& h) {
  std::vector<GapIndex> out;
  out.reserve(h.size() - 1);
  for (const auto& [l, r] : h.gaps()) {
    const auto jl = grid.x_index(l.x);
    const auto jr = grid.x_index(r.x);
    if (!jl || !jr) throw std::invalid_argument("history location is not on the x-lattice");
    const long steps = *jr - *jl;
    if (steps < 1 || steps > grid.m()) {
      throw std::invalid_argument("history gap is longer than the grid");
    }
    const auto il = grid.y_index(l.y);
    const auto ir = grid.y_index(r.y);
    if (!il || !ir) throw std::invalid_argument("history value is not on the y-grid");
    out.push_back({*jl, static_cast<int>(steps), *il, *ir});
  }
  return out;
}

std::shared_ptr<const RewardTables> build_reward_tables(std::shared_ptr<const Model> model,
                                                        Execution exec) {
  auto t = std::make_shared<RewardTables>();
  t->shape = {model->n(), model->m()};
  t->stop.assign(t->shape.size(), 0.0);
  t->gain.assign(t->shape.size(), 0.0);
  t->gain_split.assign(t->shape.size(), kStop);
  std::vector<double> stop_t(t->shape.size(), 0.0);
  for (int j = 0; j <= model->m(); ++j) {
    detail::reward_layer(*model, *t, stop_t, j, exec);
    detail::transpose_layer(t->shape, t->stop, stop_t, j);
  }
  t->model = std::move(model);
  return t;
}

ValueTable build_table(std::shared_ptr<const RewardTables> rewards, double cost, Execution exec) {
  if (!(cost > 0.0)) throw std::invalid_argument("cost must be positive");
  ValueTable t;
  t.cost = cost;
  t.shape = rewards->shape;
  t.values.assign(t.shape.size(), 0.0);
  t.actions.assign(t.shape.size(), kStop);
  const Model& model = *rewards->model;
  std::vector<double> values_t(t.shape.size(), 0.0);
  for (int j = 1; j <= model.m(); ++j) {
    detail::value_layer(model, *rewards, t, values_t, j, exec);
    detail::transpose_layer(t.shape, t.values, values_t, j);
  }
  t.rewards = std::move(rewards);
  return t;
}

ValueTable build_table(std::shared_ptr<const Model> model, double cost, Execution exec) {
  if (!(cost > 0.0)) throw std::invalid_argument("cost must be positive");
  return build_table(build_reward_tables(std::move(model), exec), cost, exec);
}

QValues q_values(const ValueTable& table, int il, int ir, int j) {
  const int n = table.shape.n;
  if (il < 0 || il >= n || ir < 0 || ir >= n || j < 0 || j > table.shape.m) {
    throw std::out_of_range("q_values index out of range");
  }
  QValues q;
  q.stop = table.stop_reward(il, ir, j);
  std::vector<double> w(n), right(n);
  for (int s = 1; s < j; ++s) {
    const double scale = 1.0 / table.model().kernel().weights(s, j - s, il, ir, w);
    for (int i = 0; i < n; ++i) right[i] = table.value(i, ir, j - s);
    q.splits.push_back(detail::split_value(&table.values[table.shape.index(s, il, 0)],
                                           right.data(), w, scale, table.cost));
  }
  return q;
}

double history_value(const ValueTable& table, const ObservationHistory& h) {
  double v = 0.0;
  for (const auto& g : index_gaps(table.model().grid(), h)) v += table.value(g.il, g.ir, g.steps);
  return v;
}

double history_stop_reward(const RewardTables& rewards, const ObservationHistory& h) {
  double v = 0.0;
  for (const auto& g : index_gaps(rewards.model->grid(), h)) v += rewards.stop_at(g.il, g.ir, g.steps);
  return v;
}

}  // namespace lsopt
