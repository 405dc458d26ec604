#include "envy/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "envy/errors.hpp"
#include "envy/policies.hpp"
#include "envy/presets.hpp"

namespace envy {

using nlohmann::json;

SimConfig SimConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "instance", "policy", "arrival", "T", "N", "replications", "seed",
      "checkpoints", "n_checkpoints", "outputs"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  SimConfig c;
  try {
    if (j.contains("instance")) c.instance = j.at("instance");
    if (j.contains("policy")) c.policy = j.at("policy");
    if (j.contains("arrival")) c.arrival = j.at("arrival");
    c.horizon = j.value("T", c.horizon);
    c.n_agents = j.value("N", c.n_agents);
    c.replications = j.value("replications", c.replications);
    c.seed = j.value("seed", c.seed);
    if (j.contains("checkpoints")) c.checkpoints = j.at("checkpoints").get<std::vector<std::size_t>>();
    c.n_checkpoints = j.value("n_checkpoints", c.n_checkpoints);
    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      c.outputs.metrics_csv = o.value("metrics_csv", "");
      c.outputs.summary_json = o.value("summary_json", "");
      c.outputs.trajectory_csv = o.value("trajectory_csv", "");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

SimConfig SimConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return from_json(j);
}

json SimConfig::to_json() const {
  json j{{"instance", instance}, {"arrival", arrival},       {"T", horizon},
         {"N", n_agents},        {"replications", replications}, {"seed", seed}};
  if (!policy.is_null()) j["policy"] = policy;
  if (checkpoints.empty()) {
    j["n_checkpoints"] = n_checkpoints;
  } else {
    j["checkpoints"] = checkpoints;
  }
  json o = json::object();
  if (!outputs.metrics_csv.empty()) o["metrics_csv"] = outputs.metrics_csv;
  if (!outputs.summary_json.empty()) o["summary_json"] = outputs.summary_json;
  if (!outputs.trajectory_csv.empty()) o["trajectory_csv"] = outputs.trajectory_csv;
  if (!o.empty()) j["outputs"] = o;
  return j;
}

void SimConfig::validate() const {
  if (replications == 0) throw ConfigError("replications must be >= 1");
  if (horizon == 0) throw ConfigError("T must be >= 1");
  if (checkpoints.empty() && n_checkpoints == 0) throw ConfigError("n_checkpoints must be >= 1");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > horizon) {
      throw ConfigError("checkpoint " + std::to_string(checkpoints[i]) + " outside [1, T]");
    }
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw ConfigError("checkpoints must be strictly increasing");
    }
  }
  const Instance inst = build_instance();
  build_policy(inst);
  build_arrival();
}

Instance SimConfig::build_instance() const {
  Instance inst;
  try {
    if (instance.contains("preset")) {
      inst = make_preset(instance.at("preset").get<std::string>(), n_agents, horizon).instance;
    } else if (instance.contains("arms")) {
      for (const json& a : instance.at("arms")) inst.arms.push_back(distribution_from_json(a));
      inst.n_agents = n_agents;
      inst.horizon = horizon;
    } else {
      throw ConfigError("instance needs 'preset' or 'arms'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid arm: ") + e.what());
  }
  inst.validate();
  return inst;
}

std::shared_ptr<const Policy> SimConfig::build_policy(const Instance& inst) const {
  json spec = policy;
  if (spec.is_null()) {
    if (!instance.contains("preset")) throw ConfigError("config needs a policy");
    spec = make_preset(instance.at("preset").get<std::string>(), n_agents, horizon).policy;
  }
  try {
    return policy_from_json(spec, inst);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed policy: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid policy: ") + e.what());
  }
}

std::unique_ptr<ArrivalFunction> SimConfig::build_arrival() const {
  try {
    return arrival_from_json(arrival);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed arrival: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid arrival: ") + e.what());
  }
}

std::vector<std::size_t> SimConfig::resolved_checkpoints() const {
  if (!checkpoints.empty()) return checkpoints;
  const std::size_t n = std::min(n_checkpoints, horizon);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t t = (k * horizon + n - 1) / n;
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  return out;
}

}  // namespace envy
