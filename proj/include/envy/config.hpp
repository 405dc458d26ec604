#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "envy/arrival.hpp"
#include "envy/engine.hpp"
#include "envy/policy.hpp"

namespace envy {

struct OutputPaths {
  std::string metrics_csv;
  std::string summary_json;
  /// Per-session trace of replication 0.
  std::string trajectory_csv;
};

/// One Monte Carlo experiment.
///
/// JSON layout:
///   {"instance": {"preset": "I_U"} | {"arms": [<distribution>, ...]},
///    "policy": <policy spec>, "arrival": <arrival spec>,
///    "T": 10000, "N": 2, "replications": 1000, "seed": 0,
///    "checkpoints": [...] | "n_checkpoints": 100,
///    "outputs": {"metrics_csv": ..., "summary_json": ..., "trajectory_csv": ...}}
/// "policy" may be omitted with a preset; "arrival" defaults to uniform.
struct SimConfig {
  nlohmann::json instance = {{"preset", "I_U"}};
  nlohmann::json policy;
  nlohmann::json arrival = {{"arrival", "uniform"}};
  std::size_t horizon = 10000;
  std::size_t n_agents = 2;
  std::size_t replications = 1000;
  std::uint64_t seed = 0;
  /// Explicit checkpoints; when empty, n_checkpoints evenly spaced rounds
  /// ending at T are used.
  std::vector<std::size_t> checkpoints;
  std::size_t n_checkpoints = 100;
  OutputPaths outputs;

  static SimConfig from_json(const nlohmann::json& j);
  static SimConfig from_file(const std::string& path);
  nlohmann::json to_json() const;

  /// Throws ConfigError on replications == 0, unsorted or out-of-range
  /// checkpoints, or an invalid instance / policy / arrival spec.
  void validate() const;

  Instance build_instance() const;
  /// The explicit policy, else the preset's default.
  std::shared_ptr<const Policy> build_policy(const Instance& instance) const;
  std::unique_ptr<ArrivalFunction> build_arrival() const;
  std::vector<std::size_t> resolved_checkpoints() const;
};

}  // namespace envy
