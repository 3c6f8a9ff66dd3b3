#include <limits>
#include <vector>

#include <omp.h>

#include "solver_detail.hpp"

// The increment kernel is symmetric, so the gap (ir, il) at split j - s sees
// the mirror image of the pmf of (il, ir) at split s. Each unordered pair is
// computed once and written to both entries.

namespace lsopt::detail {

namespace {

struct Scratch {
  explicit Scratch(int n, int m) : w(n), q(m) {}
  std::vector<double> w;
  std::vector<double> q;
};

// Leftmost maximizer of q[0..j-2] (split s = index + 1) above `floor`, read
// forwards or mirrored (split s <-> j - s).
std::pair<double, std::int32_t> best_split(const std::vector<double>& q, int j, double floor,
                                           bool mirrored) {
  double best = floor;
  std::int32_t arg = kStop;
  for (int s = 1; s < j; ++s) {
    const double v = mirrored ? q[j - s - 1] : q[s - 1];
    if (v > best) {
      best = v;
      arg = s;
    }
  }
  return {best, arg};
}

void reward_pair(const Model& model, RewardTables& t, const std::vector<double>& stop_t, int j,
                 int il, int ir, Scratch& scratch) {
  const TableShape& shape = t.shape;
  const std::size_t at = shape.index(j, il, ir);
  const std::size_t mirror = shape.index(j, ir, il);
  if (j == 0) {
    for (auto idx : {at, mirror}) {
      t.stop[idx] = 0.0;
      t.gain[idx] = -std::numeric_limits<double>::infinity();
      t.gain_split[idx] = kStop;
    }
    return;
  }
  const ClassScores& scores = model.scores();
  double interior = 0.0;
  for (int s = 1; s < j; ++s) {
    const double scale = 1.0 / model.kernel().weights(s, j - s, il, ir, scratch.w);
    interior += scores.expected_best(scratch.w, scale);
    scratch.q[s - 1] = split_value(&t.stop[shape.index(s, il, 0)],
                                   &stop_t[shape.index(j - s, ir, 0)], scratch.w, scale, 0.0);
  }
  const double stop =
      model.grid().h() * (0.5 * scores.certain(il) + interior + 0.5 * scores.certain(ir));
  for (int s = 1; s < j; ++s) scratch.q[s - 1] -= stop;
  const double none = -std::numeric_limits<double>::infinity();

  const auto [gain, split] = best_split(scratch.q, j, none, false);
  t.stop[at] = stop;
  t.gain[at] = gain;
  t.gain_split[at] = split;
  if (mirror != at) {
    const auto [mgain, msplit] = best_split(scratch.q, j, none, true);
    t.stop[mirror] = stop;
    t.gain[mirror] = mgain;
    t.gain_split[mirror] = msplit;
  }
}

void value_pair(const Model& model, const RewardTables& rewards, ValueTable& t,
                const std::vector<double>& values_t, int j, int il, int ir, Scratch& scratch) {
  const TableShape& shape = t.shape;
  const std::size_t at = shape.index(j, il, ir);
  const std::size_t mirror = shape.index(j, ir, il);
  for (int s = 1; s < j; ++s) {
    const double scale = 1.0 / model.kernel().weights(s, j - s, il, ir, scratch.w);
    scratch.q[s - 1] = split_value(&t.values[shape.index(s, il, 0)],
                                   &values_t[shape.index(j - s, ir, 0)], scratch.w, scale, t.cost);
  }
  const double stop = rewards.stop[at];
  const auto [v, a] = best_split(scratch.q, j, stop, false);
  t.values[at] = v;
  t.actions[at] = a;
  if (mirror != at) {
    const auto [mv, ma] = best_split(scratch.q, j, stop, true);
    t.values[mirror] = mv;
    t.actions[mirror] = ma;
  }
}

template <typename Entry>
void run_layer(int n, int m, Execution exec, Entry entry) {
  // unordered pairs il <= ir, enumerated row by row
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int il = 0; il < n; ++il) {
    for (int ir = il; ir < n; ++ir) pairs.emplace_back(il, ir);
  }
  const long count = static_cast<long>(pairs.size());
  if (exec == Execution::Serial) {
    Scratch scratch(n, m);
    for (long p = 0; p < count; ++p) entry(pairs[p].first, pairs[p].second, scratch);
    return;
  }
#pragma omp parallel
  {
    Scratch scratch(n, m);
#pragma omp for schedule(dynamic, 16)
    for (long p = 0; p < count; ++p) entry(pairs[p].first, pairs[p].second, scratch);
  }
}

}  // namespace

void transpose_layer(const TableShape& shape, const std::vector<double>& src,
                     std::vector<double>& dst, int j) {
  for (int il = 0; il < shape.n; ++il) {
    for (int ir = 0; ir < shape.n; ++ir) dst[shape.index(j, ir, il)] = src[shape.index(j, il, ir)];
  }
}

void reward_layer(const Model& model, RewardTables& t, const std::vector<double>& stop_t, int j,
                  Execution exec) {
  run_layer(t.shape.n, t.shape.m, exec, [&](int il, int ir, Scratch& s) {
    reward_pair(model, t, stop_t, j, il, ir, s);
  });
}

void value_layer(const Model& model, const RewardTables& rewards, ValueTable& t,
                 const std::vector<double>& values_t, int j, Execution exec) {
  run_layer(t.shape.n, t.shape.m, exec, [&](int il, int ir, Scratch& s) {
    value_pair(model, rewards, t, values_t, j, il, ir, s);
  });
}

}  // namespace lsopt::detail
