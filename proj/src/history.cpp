#include "lsopt/history.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsopt {

ObservationHistory::ObservationHistory(double a, double b, double ya, double yb)
    : a_(a), b_(b), obs_{{a, ya}, {b, yb}} {
  if (!(a >= 0.0) || !(a < b)) {
    throw std::invalid_argument("history interval requires 0 <= a < b");
  }
}

ObservationHistory::ObservationHistory(double a, double b, std::vector<Observation> obs)
    : a_(a), b_(b), obs_(std::move(obs)) {
  if (!(a >= 0.0) || !(a < b)) {
    throw std::invalid_argument("history interval requires 0 <= a < b");
  }
  std::sort(obs_.begin(), obs_.end(),
            [](const Observation& l, const Observation& r) { return l.x < r.x; });
  for (std::size_t i = 0; i < obs_.size(); ++i) {
    if (obs_[i].x < a_ || obs_[i].x > b_) {
      throw std::invalid_argument("observation outside the history interval");
    }
    if (i > 0 && obs_[i].x == obs_[i - 1].x) {
      throw std::invalid_argument("two observations share a location");
    }
  }
  if (obs_.size() < 2 || obs_.front().x != a_ || obs_.back().x != b_) {
    throw std::invalid_argument("history must contain both endpoint observations");
  }
}

ObservationHistory ObservationHistory::insert(Observation o) const {
  if (!(o.x >= a_ && o.x <= b_)) {
    throw std::out_of_range("observation location outside [a, b]");
  }
  auto pos = std::lower_bound(obs_.begin(), obs_.end(), o.x,
                              [](const Observation& l, double x) { return l.x < x; });
  ObservationHistory out = *this;
  if (pos != obs_.end() && pos->x == o.x) {
    return out;
  }
  out.obs_.insert(out.obs_.begin() + (pos - obs_.begin()), o);
  return out;
}

bool ObservationHistory::contains(double x) const {
  return std::binary_search(obs_.begin(), obs_.end(), Observation{x, 0.0},
                            [](const Observation& l, const Observation& r) { return l.x < r.x; });
}

std::vector<Gap> ObservationHistory::gaps() const {
  std::vector<Gap> out;
  out.reserve(obs_.size() - 1);
  for (std::size_t i = 0; i + 1 < obs_.size(); ++i) {
    out.emplace_back(obs_[i], obs_[i + 1]);
  }
  return out;
}

ObservationHistory ObservationHistory::translated(double dx) const {
  ObservationHistory out;
  out.a_ = a_ + dx;
  out.b_ = b_ + dx;
  out.obs_ = obs_;
  for (auto& o : out.obs_) o.x += dx;
  // keep the endpoints bitwise equal to the new interval bounds
  out.obs_.front().x = out.a_;
  out.obs_.back().x = out.b_;
  if (!(out.a_ >= 0.0)) throw std::invalid_argument("translation moves history below 0");
  return out;
}

void to_json(nlohmann::json& j, const ObservationHistory& h) {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : h.observations()) obs.push_back({o.x, o.y});
  j = nlohmann::json{{"a", h.a()}, {"b", h.b()}, {"obs", obs}};
}

ObservationHistory history_from_json(const nlohmann::json& j) {
  std::vector<Observation> obs;
  for (const auto& p : j.at("obs")) {
    obs.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return ObservationHistory(j.at("a").get<double>(), j.at("b").get<double>(), std::move(obs));
}

}  // namespace lsopt
