#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "envy/engine.hpp"

namespace envy {

/// A named instance with the policy it is usually run with.
struct Preset {
  Instance instance;
  nlohmann::json policy;
};

/// Known names: example1, I_U, I_B, I_S, prop_is. I_S depends on the horizon.
/// Throws ConfigError for an unknown name.
Preset make_preset(std::string_view name, std::size_t n_agents, std::size_t horizon);

std::vector<std::string> preset_names();

}  // namespace envy
