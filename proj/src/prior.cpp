#include "lsopt/prior.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsopt {

namespace {

constexpr double kPoissonTail = 1e-10;
// Below this the linear product is recomputed in log space.
constexpr double kUnderflowGuard = 1e-250;

double log_sum_exp(std::span<const double> v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

}  // namespace

PriorModel PriorModel::compound_poisson(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  return {PriorKind::CompoundPoisson, mu};
}

double PriorModel::increment_sd(double len) const {
  return kind == PriorKind::Brownian ? std::sqrt(len) : std::sqrt(mu * len);
}

std::string PriorModel::name() const {
  return kind == PriorKind::Brownian ? "brownian" : "cpp";
}

Grid::Grid(double a, double b, int m, double k, int n, double half_width)
    : a_(a), b_(b), m_(m), k_(k), n_(n), half_width_(half_width) {
  if (!(a < b)) throw std::invalid_argument("grid interval requires a < b");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (!(half_width > 0.0)) throw std::invalid_argument("yrange must be positive");
}

Grid Grid::with_default_range(double a, double b, int m, double k, int n,
                              const PriorModel& prior) {
  return Grid(a, b, m, k, n, 6.0 * prior.increment_sd(b - a));
}

double Grid::y(int i) const {
  return k_ + (static_cast<double>(i) - 0.5 * (n_ - 1)) * dy();
}

std::optional<long> Grid::x_index(double x) const {
  const double t = (x - a_) / h();
  const long j = std::lround(t);
  if (std::abs(this->x(j) - x) > 1e-9 * h()) return std::nullopt;
  return j;
}

std::optional<long> Grid::steps(double length) const {
  const long j = std::lround(length / h());
  if (j < 1 || std::abs(static_cast<double>(j) * h() - length) > 1e-9 * h()) return std::nullopt;
  return j;
}

std::optional<int> Grid::y_index(double y) const {
  const long i = std::lround((y - k_) / dy() + 0.5 * (n_ - 1));
  if (i < 0 || i >= n_) return std::nullopt;
  if (std::abs(this->y(static_cast<int>(i)) - y) > 1e-9 * dy()) return std::nullopt;
  return static_cast<int>(i);
}

double BridgeDistribution::mean(const Grid& g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) s += probs[i] * g.y(static_cast<int>(i));
  return s;
}

double BridgeDistribution::variance(const Grid& g) const {
  const double mu = mean(g);
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double d = g.y(static_cast<int>(i)) - mu;
    s += probs[i] * d * d;
  }
  return s;
}

int poisson_truncation(double rate, double tail) {
  double p = std::exp(-rate);
  double cdf = p;
  int n = 0;
  while (1.0 - cdf >= tail || n < rate) {
    ++n;
    p *= rate / n;
    cdf += p;
    if (n > 100000) break;
  }
  return n;
}

BridgeKernel::BridgeKernel(const PriorModel& prior, const Grid& grid)
    : prior_(prior), grid_(grid), n_(grid.n()) {
  const int m = grid.m();
  const double h = grid.h();
  const double dy = grid.dy();
  log_q_.assign(static_cast<std::size_t>(m) * n_, 0.0);

  for (int s = 1; s <= m; ++s) {
    double* row = &log_q_[static_cast<std::size_t>(s - 1) * n_];
    const double len = s * h;
    if (prior.kind == PriorKind::Brownian) {
      for (int k = 0; k < n_; ++k) {
        const double z = k * dy;
        row[k] = -z * z / (2.0 * len);
      }
      continue;
    }
    // Compound Poisson: atom e^{-rate} at offset 0 plus
    // sum_{N>=1} Pois(rate)(N) * phi(z; 0, N) * dy.
    const double rate = prior.mu * len;
    const int n_max = poisson_truncation(rate, kPoissonTail);
    std::vector<double> terms;
    terms.reserve(n_max + 1);
    for (int k = 0; k < n_; ++k) {
      const double z = k * dy;
      terms.clear();
      if (k == 0) terms.push_back(-rate);
      for (int jumps = 1; jumps <= n_max; ++jumps) {
        const double log_pois = -rate + jumps * std::log(rate) - std::lgamma(jumps + 1.0);
        const double log_phi = -0.5 * z * z / jumps - 0.5 * std::log(2.0 * std::numbers::pi * jumps);
        terms.push_back(log_pois + log_phi + std::log(dy));
      }
      row[k] = log_sum_exp(terms);
    }
  }
  const int width = 2 * n_ - 1;
  q_full_.assign(static_cast<std::size_t>(m) * width, 0.0);
  for (int s = 1; s <= m; ++s) {
    for (int k = -(n_ - 1); k <= n_ - 1; ++k) {
      q_full_[static_cast<std::size_t>(s - 1) * width + (n_ - 1) + k] = std::exp(log_weight(s, k));
    }
  }
}

double BridgeKernel::log_weight(int steps, int offset) const {
  return log_q_[static_cast<std::size_t>(steps - 1) * n_ + std::abs(offset)];
}

double BridgeKernel::weights(int steps_left, int steps_right, int il, int ir,
                             std::span<double> out) const {
  const std::size_t width = 2 * static_cast<std::size_t>(n_) - 1;
  // ql[i] = q(i - il), qr[i] = q(i - ir) = q(ir - i) by symmetry
  const double* ql = &q_full_[(steps_left - 1) * width + (n_ - 1 - il)];
  const double* qr = &q_full_[(steps_right - 1) * width + (n_ - 1 - ir)];
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int i = 0;
  for (; i + 4 <= n_; i += 4) {
    s0 += out[i] = ql[i] * qr[i];
    s1 += out[i + 1] = ql[i + 1] * qr[i + 1];
    s2 += out[i + 2] = ql[i + 2] * qr[i + 2];
    s3 += out[i + 3] = ql[i + 3] * qr[i + 3];
  }
  for (; i < n_; ++i) s0 += out[i] = ql[i] * qr[i];
  double sum = (s0 + s1) + (s2 + s3);
  if (sum >= kUnderflowGuard) return sum;

  const double* lql = &log_q_[static_cast<std::size_t>(steps_left - 1) * n_];
  const double* lqr = &log_q_[static_cast<std::size_t>(steps_right - 1) * n_];
  double lmx = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_; ++k) {
    out[k] = lql[std::abs(k - il)] + lqr[std::abs(ir - k)];
    lmx = std::max(lmx, out[k]);
  }
  sum = 0.0;
  for (int k = 0; k < n_; ++k) {
    out[k] = std::exp(out[k] - lmx);
    sum += out[k];
  }
  return sum;
}

void BridgeKernel::pmf(int steps_left, int steps_right, int il, int ir,
                       std::span<double> out) const {
  const double inv = 1.0 / weights(steps_left, steps_right, il, ir, out);
  for (int i = 0; i < n_; ++i) out[i] *= inv;
}

int sample_bridge_index(const BridgeKernel& kernel, int steps_left, int steps_right, int il,
                        int ir, Rng& rng, std::span<double> scratch) {
  kernel.pmf(steps_left, steps_right, il, ir, scratch);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cum = 0.0;
  int last = 0;
  const int n = static_cast<int>(scratch.size());
  for (int i = 0; i < n; ++i) {
    if (scratch[i] <= 0.0) continue;
    cum += scratch[i];
    last = i;
    if (u < cum) return i;
  }
  return last;
}

namespace {

struct BridgeIndices {
  int steps_left, steps_right, il, ir;
};

BridgeIndices resolve(const BridgeKernel& kernel, double dx_left, double dx_right, double y_left,
                      double y_right) {
  const Grid& g = kernel.grid();
  const auto sl = g.steps(dx_left);
  const auto sr = g.steps(dx_right);
  if (!sl || !sr) throw std::invalid_argument("bridge lengths must be positive multiples of h");
  if (*sl > g.m() || *sr > g.m()) throw std::invalid_argument("bridge length exceeds the grid");
  const auto il = g.y_index(y_left);
  const auto ir = g.y_index(y_right);
  if (!il || !ir) throw std::invalid_argument("bridge endpoint values must lie on the y-grid");
  return {static_cast<int>(*sl), static_cast<int>(*sr), *il, *ir};
}

}  // namespace

BridgeDistribution bridge_pmf(const BridgeKernel& kernel, double dx_left, double dx_right,
                              double y_left, double y_right) {
  const auto idx = resolve(kernel, dx_left, dx_right, y_left, y_right);
  BridgeDistribution d;
  d.probs.resize(kernel.grid().n());
  kernel.pmf(idx.steps_left, idx.steps_right, idx.il, idx.ir, d.probs);
  return d;
}

BridgeDistribution bridge_pmf(const PriorModel& prior, const Grid& grid, double dx_left,
                              double dx_right, double y_left, double y_right) {
  return bridge_pmf(BridgeKernel(prior, grid), dx_left, dx_right, y_left, y_right);
}

double bridge_sample(const BridgeKernel& kernel, double dx_left, double dx_right, double y_left,
                     double y_right, Rng& rng) {
  const auto idx = resolve(kernel, dx_left, dx_right, y_left, y_right);
  std::vector<double> scratch(kernel.grid().n());
  const int i = sample_bridge_index(kernel, idx.steps_left, idx.steps_right, idx.il, idx.ir, rng,
                                    scratch);
  return kernel.grid().y(i);
}

}  // namespace lsopt
