#include "lsopt/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsopt::oracle {

namespace {

constexpr long kMaxInterior = 8;

struct Lattice {
  long origin = 0;
  std::vector<int> state;
};

Lattice to_lattice(const Model& model, const ObservationHistory& h) {
  const Grid& g = model.grid();
  const auto first = g.x_index(h.a());
  const auto last = g.x_index(h.b());
  if (!first || !last) throw std::invalid_argument("history interval is not on the lattice");
  const long span = *last - *first;
  if (span - 1 > kMaxInterior) throw std::invalid_argument("history too long for brute force");
  if (span > model.m()) throw std::invalid_argument("history longer than the grid");
  Lattice out{*first, std::vector<int>(static_cast<std::size_t>(span + 1), -1)};
  for (const auto& o : h.observations()) {
    const auto j = g.x_index(o.x);
    const auto i = g.y_index(o.y);
    if (!j || !i) throw std::invalid_argument("observation off the grid");
    out.state[static_cast<std::size_t>(*j - *first)] = *i;
  }
  return out;
}

}  // namespace

BruteForce::BruteForce(std::shared_ptr<const Model> model, double cost)
    : model_(std::move(model)), cost_(cost) {
  if (!(cost > 0.0)) throw std::invalid_argument("cost must be positive");
}

double BruteForce::reward_of(const std::vector<int>& state) const {
  std::vector<double> scratch(model_->n());
  double r = 0.0;
  int prev = 0;
  for (int p = 1; p < static_cast<int>(state.size()); ++p) {
    if (state[p] < 0) continue;
    r += model_->stop_reward(p - prev, state[prev], state[p], scratch);
    prev = p;
  }
  return r;
}

double BruteForce::stop_reward(const ObservationHistory& h) const {
  return reward_of(to_lattice(*model_, h).state);
}

double BruteForce::value(const ObservationHistory& h) {
  auto lat = to_lattice(*model_, h);
  return solve(lat.state);
}

double BruteForce::solve(std::vector<int>& state) {
  std::string key(state.size(), '\0');
  std::transform(state.begin(), state.end(), key.begin(),
                 [](int v) { return static_cast<char>(v + 1); });
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  double best = reward_of(state);
  const int len = static_cast<int>(state.size());
  std::vector<double> pmf(model_->n());
  int left = 0;
  for (int p = 1; p < len - 1; ++p) {
    if (state[p] >= 0) {
      left = p;
      continue;
    }
    int right = p + 1;
    while (state[right] < 0) ++right;
    model_->kernel().pmf(p - left, right - p, state[left], state[right], pmf);
    const std::vector<double> probs = pmf;
    double ev = 0.0;
    for (int i = 0; i < model_->n(); ++i) {
      if (probs[i] == 0.0) continue;
      state[p] = i;
      ev += probs[i] * solve(state);
    }
    state[p] = -1;
    best = std::max(best, ev - cost_);
  }
  memo_.emplace(std::move(key), best);
  return best;
}

double brute_value(std::shared_ptr<const Model> model, double cost, const ObservationHistory& h) {
  BruteForce bf(std::move(model), cost);
  return bf.value(h);
}

}  // namespace lsopt::oracle
