#pragma once

#include <span>

#include "lsopt/solver.hpp"

namespace lsopt::detail {

// scale * sum_i w_i (left[i] + right[i]) - cost, where left[i] is the value
// of the gap (il, i) over s steps and right[i] the gap (i, ir) over j - s.
inline double split_value(const double* left, const double* right, std::span<const double> w,
                          double scale, double cost) {
  const std::size_t n = w.size();
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += w[i] * (left[i] + right[i]);
    a1 += w[i + 1] * (left[i + 1] + right[i + 1]);
    a2 += w[i + 2] * (left[i + 2] + right[i + 2]);
    a3 += w[i + 3] * (left[i + 3] + right[i + 3]);
  }
  for (; i < n; ++i) a0 += w[i] * (left[i] + right[i]);
  return ((a0 + a1) + (a2 + a3)) * scale - cost;
}

void reward_layer(const Model& model, RewardTables& t, const std::vector<double>& stop_t, int j,
                  Execution exec);
void value_layer(const Model& model, const RewardTables& rewards, ValueTable& t,
                 const std::vector<double>& values_t, int j, Execution exec);

// Writes layer j of `src` transposed ([j][ir][il]) into dst.
void transpose_layer(const TableShape& shape, const std::vector<double>& src,
                     std::vector<double>& dst, int j);

}  // namespace lsopt::detail
