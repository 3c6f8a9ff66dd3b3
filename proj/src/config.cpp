#include "lsopt/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace lsopt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
}

long to_long(const std::string& field, const std::string& text) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(field, "expected an integer, got '" + text + "'");
  }
  return v;
}

const std::set<std::string> kKnownKeys = {
    "prior", "mu", "a", "b", "m", "n", "k", "yrange", "reward", "C", "c", "ya", "yb",
    "costs", "budgets", "reps", "seed", "lambda_lo", "lambda_hi", "lambda_tol"};

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(field, item));
  }
  if (out.empty()) throw ConfigError(field, "list is empty");
  return out;
}

ExperimentConfig parse_config(std::istream& in) {
  const auto kv = parse_key_values(in);
  for (const auto& [key, value] : kv) {
    if (!kKnownKeys.count(key)) throw ConfigError(key, "unknown key");
  }
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  auto num = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : to_double(key, it->second);
  };

  PriorModel prior;
  const std::string prior_name = get("prior", "brownian");
  if (prior_name == "brownian") {
    prior = PriorModel::brownian();
  } else if (prior_name == "cpp") {
    const double mu = num("mu", 20.0);
    if (!(mu > 0.0)) throw ConfigError("mu", "jump rate must be positive");
    prior = PriorModel::compound_poisson(mu);
  } else {
    throw ConfigError("prior", "unknown prior '" + prior_name + "'");
  }

  const double a = num("a", 0.0);
  const double b = num("b", 1.0);
  if (!(a >= 0.0 && a < b)) throw ConfigError("b", "interval requires 0 <= a < b");
  const long m = kv.count("m") ? to_long("m", kv.at("m")) : 100;
  if (m < 1) throw ConfigError("m", "m must be at least 1");
  const long n = kv.count("n") ? to_long("n", kv.at("n")) : 81;
  if (n < 3) throw ConfigError("n", "n must be at least 3");
  const double k = num("k", 0.0);
  const double yrange = num("yrange", 6.0 * prior.increment_sd(b - a));
  if (!(yrange > 0.0)) throw ConfigError("yrange", "yrange must be positive");
  const Grid grid(a, b, static_cast<int>(m), k, static_cast<int>(n), yrange);

  RewardSpec reward;
  const std::string reward_name = get("reward", "indicator");
  if (reward_name == "indicator") {
    reward = RewardSpec::indicator(k);
  } else if (reward_name == "clipped") {
    const double clip = num("C", 1.0);
    if (!(clip > 0.0)) throw ConfigError("C", "clip bound must be positive");
    reward = RewardSpec::clipped_linear(k, clip);
  } else {
    throw ConfigError("reward", "unknown reward '" + reward_name + "'");
  }

  ExperimentConfig cfg{.model = {prior, grid, reward}};
  cfg.cost = num("c", cfg.cost);
  if (!(cfg.cost > 0.0)) throw ConfigError("c", "cost must be positive");
  cfg.ya = num("ya", k);
  cfg.yb = num("yb", k);
  if (!grid.y_index(cfg.ya)) throw ConfigError("ya", "value is not on the y-grid");
  if (!grid.y_index(cfg.yb)) throw ConfigError("yb", "value is not on the y-grid");
  if (kv.count("costs")) cfg.costs = parse_list("costs", kv.at("costs"));
  for (double c : cfg.costs) {
    if (!(c > 0.0)) throw ConfigError("costs", "cost must be positive");
  }
  if (kv.count("budgets")) cfg.budgets = parse_list("budgets", kv.at("budgets"));
  if (kv.count("reps")) cfg.reps = to_long("reps", kv.at("reps"));
  if (cfg.reps < 1) throw ConfigError("reps", "replications must be at least 1");
  if (kv.count("seed")) cfg.seed = static_cast<std::uint64_t>(to_long("seed", kv.at("seed")));
  cfg.lambda_lo = num("lambda_lo", cfg.lambda_lo);
  cfg.lambda_hi = num("lambda_hi", 2.0 * reward.bound());
  cfg.lambda_tol = num("lambda_tol", cfg.lambda_tol);
  if (!(cfg.lambda_lo > 0.0 && cfg.lambda_lo < cfg.lambda_hi)) {
    throw ConfigError("lambda_lo", "lambda bracket must satisfy 0 < lambda_lo < lambda_hi");
  }
  if (!(cfg.lambda_tol > 0.0)) throw ConfigError("lambda_tol", "tolerance must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  return parse_config(in);
}

ObservationHistory ExperimentConfig::initial_history() const {
  return ObservationHistory(model.grid.a(), model.grid.b(), ya, yb);
}

Setup ExperimentConfig::setup() const {
  return Setup{make_model(model), initial_history()};
}

}  // namespace lsopt
