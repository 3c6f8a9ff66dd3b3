#include "lsopt/model.hpp"

#include <stdexcept>

namespace lsopt {

Model::Model(ModelSpec spec)
    : spec_(std::move(spec)), kernel_(spec_.prior, spec_.grid), scores_(spec_.reward, spec_.grid) {
  if (spec_.reward.k != spec_.grid.k()) {
    throw std::invalid_argument("y-grid must be centred on the reward threshold k");
  }
}

std::shared_ptr<const Model> make_model(ModelSpec spec) {
  return std::make_shared<const Model>(std::move(spec));
}

nlohmann::json to_json(const ModelSpec& s) {
  return {
      {"prior", s.prior.name()},
      {"mu", s.prior.mu},
      {"a", s.grid.a()},
      {"b", s.grid.b()},
      {"m", s.grid.m()},
      {"n", s.grid.n()},
      {"yrange", s.grid.half_width()},
      {"reward", s.reward.name()},
      {"k", s.reward.k},
      {"C", s.reward.clip},
  };
}

ModelSpec model_spec_from_json(const nlohmann::json& j) {
  const auto prior_name = j.at("prior").get<std::string>();
  PriorModel prior = prior_name == "brownian" ? PriorModel::brownian()
                     : prior_name == "cpp"    ? PriorModel::compound_poisson(j.at("mu").get<double>())
                                              : throw std::invalid_argument("unknown prior " + prior_name);
  const double k = j.at("k").get<double>();
  Grid grid(j.at("a").get<double>(), j.at("b").get<double>(), j.at("m").get<int>(), k,
            j.at("n").get<int>(), j.at("yrange").get<double>());
  const auto reward_name = j.at("reward").get<std::string>();
  RewardSpec reward = reward_name == "indicator" ? RewardSpec::indicator(k)
                      : reward_name == "clipped"
                          ? RewardSpec::clipped_linear(k, j.at("C").get<double>())
                          : throw std::invalid_argument("unknown reward " + reward_name);
  return {prior, grid, reward};
}

}  // namespace lsopt
