#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lsopt {

using Rng = std::mt19937_64;

enum class PriorKind { Brownian, CompoundPoisson };

/// Translation-invariant Markov prior with increments symmetric about 0.
/// Brownian: standard Brownian motion. CompoundPoisson: jumps at rate mu
/// per unit length with standard normal jump sizes.
struct PriorModel {
  PriorKind kind = PriorKind::Brownian;
  double mu = 0.0;

  static PriorModel brownian() { return {PriorKind::Brownian, 0.0}; }
  static PriorModel compound_poisson(double mu);

  /// Standard deviation of Y(x + len) - Y(x).
  double increment_sd(double len) const;
  std::string name() const;

  bool operator==(const PriorModel&) const = default;
};

/// x-lattice x_j = a + j (b - a) / m and a y-grid of n points symmetric
/// about the classification threshold k, spanning k +- half_width.
class Grid {
 public:
  Grid(double a, double b, int m, double k, int n, double half_width);

  /// half_width = 6 process standard deviations over [a, b].
  static Grid with_default_range(double a, double b, int m, double k, int n,
                                 const PriorModel& prior);

  double a() const { return a_; }
  double b() const { return b_; }
  int m() const { return m_; }
  double h() const { return (b_ - a_) / m_; }
  double k() const { return k_; }
  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double dy() const { return 2.0 * half_width_ / (n_ - 1); }

  /// Lattice point j; j may exceed m (the lattice extends past b).
  double x(long j) const { return a_ + (b_ - a_) * static_cast<double>(j) / m_; }
  double y(int i) const;

  /// Lattice index of x, or nullopt when x is not a lattice point.
  std::optional<long> x_index(double x) const;
  /// Number of lattice steps in a positive length, or nullopt if off-lattice.
  std::optional<long> steps(double length) const;
  std::optional<int> y_index(double y) const;

  bool operator==(const Grid&) const = default;

 private:
  double a_, b_;
  int m_;
  double k_;
  int n_;
  double half_width_;
};

struct BridgeDistribution {
  std::vector<double> probs;

  double mean(const Grid& g) const;
  double variance(const Grid& g) const;
};

/// Precomputed increment kernels for gap lengths 1..m lattice steps. The
/// bridge pmf at an interior point is the normalized product of the left
/// and right increment kernels evaluated at grid offsets; for the compound
/// Poisson prior this is the jump-count mixture with midpoint-rule cell
/// probabilities and the no-jump atom at offset 0.
class BridgeKernel {
 public:
  BridgeKernel(const PriorModel& prior, const Grid& grid);

  const PriorModel& prior() const { return prior_; }
  const Grid& grid() const { return grid_; }

  /// Bridge pmf over y-grid indices for the point steps_left lattice steps
  /// right of an observation at y-index il and steps_right left of one at
  /// ir. out.size() must equal n.
  void pmf(int steps_left, int steps_right, int il, int ir, std::span<double> out) const;

  /// Unnormalized pmf weights; returns their sum. Same support as pmf().
  double weights(int steps_left, int steps_right, int il, int ir, std::span<double> out) const;

  /// Unnormalized log increment weight for a gap of `steps` and |offset|.
  double log_weight(int steps, int offset) const;

 private:
  PriorModel prior_;
  Grid grid_;
  int n_;
  std::vector<double> log_q_;  // [(steps - 1) * n + |offset|]
  std::vector<double> q_full_;  // [(steps - 1) * (2n - 1) + n - 1 + offset]
};

/// Inverse-CDF draw of a y-grid index from the bridge pmf. scratch must
/// hold n doubles.
int sample_bridge_index(const BridgeKernel& kernel, int steps_left, int steps_right, int il,
                        int ir, Rng& rng, std::span<double> scratch);

/// Value-level wrappers. Lengths must be positive lattice multiples of h
/// and values must lie on the y-grid; std::invalid_argument otherwise.
BridgeDistribution bridge_pmf(const BridgeKernel& kernel, double dx_left, double dx_right,
                              double y_left, double y_right);
BridgeDistribution bridge_pmf(const PriorModel& prior, const Grid& grid, double dx_left,
                              double dx_right, double y_left, double y_right);
double bridge_sample(const BridgeKernel& kernel, double dx_left, double dx_right, double y_left,
                     double y_right, Rng& rng);

/// Smallest N with P(Poisson(rate) > N) < tail.
int poisson_truncation(double rate, double tail);

}  // namespace lsopt
