#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace envy {

/// One (pulled arm, realized reward) pair. Carries no agent identity.
struct Pull {
  std::size_t arm;
  double reward;
};

/// Everything an anonymous policy may look at when choosing an arm: earlier
/// sessions of the current round and, when the engine records it, the
/// anonymous log of earlier rounds.
struct AnonymousView {
  std::size_t round = 1;    // 1-based
  std::size_t session = 0;  // 0-based session index q - 1
  std::size_t n_agents = 0;
  std::size_t n_arms = 0;
  std::span<const Pull> current_round;
  std::span<const Pull> past;

  std::size_t remaining_agents() const { return n_agents - session; }
  std::optional<double> revealed_reward(std::size_t arm) const;
  /// Arm with the largest revealed reward this round; ties go to the arm
  /// revealed first.
  std::optional<std::size_t> best_revealed() const;
};

/// Identity-aware view: the anonymous view plus who is being served and the
/// cumulative rewards R^{t-1} of every agent.
struct IdentityView {
  AnonymousView anonymous;
  std::size_t agent = 0;
  std::span<const std::size_t> earlier_agents;  // agents served earlier this round
  std::span<const double> cumulative_before_round;
};

enum class Capability { kAnonymous, kIdentityAware };

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Capability capability() const = 0;
  virtual std::string name() const = 0;
  /// True when the per-round pull sequence is explore-first by construction.
  virtual bool explore_first() const { return true; }
};

/// Policies are immutable once built: all per-round state is recomputed from
/// the view, so one instance can serve concurrent trajectories.
class AnonymousPolicy : public Policy {
 public:
  Capability capability() const final { return Capability::kAnonymous; }
  virtual std::size_t choose(const AnonymousView& view) const = 0;
};

class IdentityAwarePolicy : public Policy {
 public:
  Capability capability() const final { return Capability::kIdentityAware; }
  virtual std::size_t choose(const IdentityView& view) const = 0;
};

}  // namespace envy
