#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "envy/distributions.hpp"

namespace envy {

/// Exact per-round welfare optimization over finite supports.
///
/// f(n, B, v) is the best expected welfare obtainable with n agents still to
/// serve, B the set of unopened arms (bitmask) and v the best reward revealed
/// so far. Either every remaining agent gets v, or some arm a in B is opened:
///
///   f(n, B, v) = max{ v n, max_a E[X_a + f(n - 1, B \ {a}, max(v, X_a))] }
///
/// with f(0, B, v) = 0 and f(n, {}, v) = v n. v ranges over the sorted union
/// of {0} and every arm's support.
class DpOptimal {
 public:
  /// Sentinel for "serve the best revealed reward to this agent".
  static constexpr std::size_t kStop = static_cast<std::size_t>(-1);

  /// Throws ConfigError for a continuous arm, K > 20, or a table that would
  /// exceed the memory cap.
  static DpOptimal solve(const std::vector<ArmDistribution>& arms, std::size_t n_agents);

  /// f(N, all arms, 0).
  double optimal_value() const { return value(n_agents_, full_mask(), 0.0); }

  /// v must be a grid value (0 or a support point of some arm).
  double value(std::size_t n, std::uint32_t unopened, double v) const;
  /// kStop or the arm to open; ties prefer stopping, then the lowest index.
  std::size_t action(std::size_t n, std::uint32_t unopened, double v) const;

  std::size_t n_agents() const { return n_agents_; }
  std::size_t n_arms() const { return n_arms_; }
  const std::vector<double>& value_grid() const { return grid_; }
  std::uint32_t full_mask() const { return static_cast<std::uint32_t>((1ULL << n_arms_) - 1); }

  /// States evaluated by the memoized recursion from (N, all, 0).
  std::size_t visited_states() const { return visited_; }
  /// |V| (N + 1) 2^K.
  std::size_t state_bound() const { return grid_.size() * (n_agents_ + 1) * (1ULL << n_arms_); }

  std::size_t grid_index(double v) const;

 private:
  DpOptimal() = default;
  std::size_t slot(std::size_t n, std::uint32_t mask, std::size_t vi) const {
    return (n * (1ULL << n_arms_) + mask) * grid_.size() + vi;
  }
  double evaluate(std::size_t n, std::uint32_t mask, std::size_t vi);

  std::size_t n_agents_ = 0;
  std::size_t n_arms_ = 0;
  std::vector<double> grid_;
  // Per arm: support points mapped to grid indices, with their probabilities.
  std::vector<std::vector<std::size_t>> support_index_;
  std::vector<std::vector<double>> support_prob_;
  std::vector<double> values_;
  std::vector<std::size_t> actions_;
  std::vector<std::uint8_t> done_;
  std::size_t visited_ = 0;
};

}  // namespace envy
