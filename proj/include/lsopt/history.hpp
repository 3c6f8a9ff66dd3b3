#pragma once

#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lsopt {

struct Observation {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Observation&) const = default;
};

using Gap = std::pair<Observation, Observation>;

/// A set of observations on [a, b], sorted by location, that always holds
/// both endpoint observations. Insertion returns a new history.
class ObservationHistory {
 public:
  /// Two-point history {(a, ya), (b, yb)}.
  ObservationHistory(double a, double b, double ya, double yb);

  /// Builds from arbitrary observations; they are sorted, and the endpoints
  /// a and b must be present. Throws std::invalid_argument on duplicates,
  /// locations outside [a, b], or missing endpoints.
  ObservationHistory(double a, double b, std::vector<Observation> obs);

  double a() const { return a_; }
  double b() const { return b_; }
  std::span<const Observation> observations() const { return obs_; }
  std::size_t size() const { return obs_.size(); }

  /// Adds o in sorted position. Re-measuring an existing location leaves
  /// the history unchanged. Throws std::out_of_range outside [a, b].
  ObservationHistory insert(Observation o) const;

  bool contains(double x) const;

  /// Consecutive observation pairs; their intervals tile [a, b].
  std::vector<Gap> gaps() const;

  /// Same observations shifted right by dx (interval shifted too).
  ObservationHistory translated(double dx) const;

  bool operator==(const ObservationHistory&) const = default;

 private:
  ObservationHistory() = default;

  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<Observation> obs_;
};

void to_json(nlohmann::json& j, const ObservationHistory& h);
ObservationHistory history_from_json(const nlohmann::json& j);

}  // namespace lsopt
