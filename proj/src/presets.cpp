#include "envy/presets.hpp"

#include <cmath>
#include <string>

#include "envy/errors.hpp"

namespace envy {

namespace {

using nlohmann::json;

json threshold_policy(std::size_t k, double theta) {
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  return json{{"policy", "threshold"}, {"order", order}, {"theta", theta}};
}

}  // namespace

Preset make_preset(std::string_view name, std::size_t n_agents, std::size_t horizon) {
  Preset p;
  p.instance.n_agents = n_agents;
  p.instance.horizon = horizon;
  auto& arms = p.instance.arms;
  if (name == "example1") {
    arms.assign(2, ArmDistribution::uniform(0.0, 1.0));
    p.policy = threshold_policy(2, 0.5);
  } else if (name == "I_U") {
    arms.assign(4, ArmDistribution::uniform(0.0, 1.0));
    p.policy = threshold_policy(4, 0.75);
  } else if (name == "I_B") {
    arms = {ArmDistribution::bernoulli(0.6), ArmDistribution::bernoulli(0.4),
            ArmDistribution::bernoulli(0.2)};
    p.policy = json{{"policy", "pandora_bernoulli"}};
  } else if (name == "I_S") {
    const double q = 0.25 + 2.0 / std::sqrt(static_cast<double>(horizon));
    if (q > 1.0) throw ConfigError("I_S needs T >= 3 so that 1/4 + 2/sqrt(T) <= 1");
    arms = {ArmDistribution::discrete({0.25, 1.0}, {0.5, 0.5}), ArmDistribution::bernoulli(q)};
    p.policy = threshold_policy(2, 1.0);
  } else if (name == "prop_is") {
    arms = {ArmDistribution::discrete({0.55, 0.75}, {0.5, 0.5}), ArmDistribution::bernoulli(0.6)};
    p.policy = json{{"policy", "two_opt"}};
  } else {
    throw ConfigError("unknown instance preset '" + std::string(name) + "'");
  }
  return p;
}

std::vector<std::string> preset_names() { return {"example1", "I_U", "I_B", "I_S", "prop_is"}; }

}  // namespace envy
