#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsopt/sim.hpp"

namespace lsopt {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Flat `key = value` experiment configuration. '#' starts a comment.
///
///   prior   brownian | cpp        mu      jump rate (cpp)
///   a, b    interval              m, n    lattice steps, y-grid points
///   k       threshold             yrange  y-grid half width (default 6 sd)
///   reward  indicator | clipped   C       clip bound
///   c       cost per sample       ya, yb  endpoint observations of H0
///   costs, budgets, reps, seed, lambda_lo, lambda_hi, lambda_tol
struct ExperimentConfig {
  ModelSpec model;
  double cost = 0.05;
  double ya = 0.0;
  double yb = 0.0;
  std::vector<double> costs{0.01, 0.02, 0.05, 0.1, 0.2};
  std::vector<double> budgets{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  long reps = 20000;
  std::uint64_t seed = 1;
  double lambda_lo = 1e-3;
  double lambda_hi = 2.0;
  double lambda_tol = 1e-3;

  ObservationHistory initial_history() const;
  Setup setup() const;
};

std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<double> parse_list(const std::string& field, const std::string& text);

}  // namespace lsopt
