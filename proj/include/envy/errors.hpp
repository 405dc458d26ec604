#pragma once

#include <stdexcept>
#include <string>

namespace envy {

/// A simulation was configured in a way the model does not allow (bad arm
/// index, unsupported instance shape for a policy, enumeration over its cap).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace envy
