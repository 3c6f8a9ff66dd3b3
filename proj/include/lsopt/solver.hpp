#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lsopt/history.hpp"
#include "lsopt/model.hpp"

namespace lsopt {

enum class Execution { Serial, Parallel };

/// Action code for "stop"; positive codes are split offsets j' in 1..j-1.
inline constexpr std::int32_t kStop = 0;

/// Tables laid out [j][il][ir] row-major, j = 0..m lattice steps.
struct TableShape {
  int n = 0;
  int m = 0;

  std::size_t size() const { return static_cast<std::size_t>(m + 1) * n * n; }
  std::size_t index(int j, int il, int ir) const {
    return (static_cast<std::size_t>(j) * n + il) * n + ir;
  }
};

/// Cost-independent tables: stopping reward of every two-observation gap and
/// the best one-step lookahead gain E[R(left) + R(right)] - R(gap) with its
/// leftmost maximizing split (kStop for gaps with no interior point).
struct RewardTables {
  std::shared_ptr<const Model> model;
  TableShape shape;
  std::vector<double> stop;
  std::vector<double> gain;
  std::vector<std::int32_t> gain_split;

  double stop_at(int il, int ir, int j) const { return stop[shape.index(j, il, ir)]; }
};

/// V[il][ir][j] for the gap {(0, y_il), (j h, y_ir)} at sampling cost c, and
/// the maximizing action (kStop preferred on ties, then the leftmost split).
struct ValueTable {
  std::shared_ptr<const RewardTables> rewards;
  double cost = 0.0;
  TableShape shape;
  std::vector<double> values;
  std::vector<std::int32_t> actions;

  const Model& model() const { return *rewards->model; }
  double value(int il, int ir, int j) const { return values[shape.index(j, il, ir)]; }
  std::int32_t action(int il, int ir, int j) const { return actions[shape.index(j, il, ir)]; }
  double stop_reward(int il, int ir, int j) const { return rewards->stop_at(il, ir, j); }
};

/// A history gap expressed on the model's lattice.
struct GapIndex {
  long left = 0;  // lattice index of the left observation
  int steps = 0;
  int il = 0;
  int ir = 0;
};

/// Throws std::invalid_argument when an observation is off the lattice or
/// off the y-grid, or a gap is longer than m steps.
std::vector<GapIndex> index_gaps(const Grid& grid, const ObservationHistory& h);

std::shared_ptr<const RewardTables> build_reward_tables(std::shared_ptr<const Model> model,
                                                        Execution exec = Execution::Parallel);

/// Layers are filled in increasing j; within a layer entries are independent.
/// Throws std::invalid_argument for cost <= 0.
ValueTable build_table(std::shared_ptr<const RewardTables> rewards, double cost,
                       Execution exec = Execution::Parallel);
ValueTable build_table(std::shared_ptr<const Model> model, double cost,
                       Execution exec = Execution::Parallel);

struct QValues {
  double stop = 0.0;
  std::vector<double> splits;  // splits[s - 1] = Q(s), s = 1..j-1
};

QValues q_values(const ValueTable& table, int il, int ir, int j);

/// Sum of per-gap table values (decomposition over gaps).
double history_value(const ValueTable& table, const ObservationHistory& h);
double history_stop_reward(const RewardTables& rewards, const ObservationHistory& h);

namespace reference {

/// Plain serial build, entry by entry, with no shared pmf work. Kept as the
/// reference the OpenMP kernels are checked against.
ValueTable build_table_serial(std::shared_ptr<const Model> model, double cost);

}  // namespace reference

}  // namespace lsopt
