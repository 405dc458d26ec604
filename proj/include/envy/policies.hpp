#pragma once

#include <memory>
#include <vector>

#include "envy/distributions.hpp"
#include "envy/dp_optimal.hpp"
#include "envy/engine.hpp"
#include "envy/policy.hpp"
#include "json.hpp"

namespace envy {

/// Pulls the same arm in every session.
class FixedArmPolicy final : public AnonymousPolicy {
 public:
  explicit FixedArmPolicy(std::size_t arm) : arm_(arm) {}
  std::size_t choose(const AnonymousView&) const override { return arm_; }
  std::string name() const override { return "fixed"; }
  std::size_t arm() const { return arm_; }

 private:
  std::size_t arm_;
};

/// No Envy: everyone gets the arm with the highest mean (lowest index on ties),
/// so no discrepancy ever arises.
class NoEnvyPolicy final : public AnonymousPolicy {
 public:
  explicit NoEnvyPolicy(const std::vector<ArmDistribution>& arms);
  std::size_t choose(const AnonymousView&) const override { return arm_; }
  std::string name() const override { return "ne"; }

 private:
  std::size_t arm_;
};

/// Opens arms in a fixed order until one reveals a reward >= theta, then
/// serves that arm to the rest of the round. If the order runs out first, the
/// best revealed arm is served.
class ThresholdExploreFirst final : public AnonymousPolicy {
 public:
  ThresholdExploreFirst(std::vector<std::size_t> order, double theta);
  std::size_t choose(const AnonymousView& view) const override;
  std::string name() const override { return "threshold"; }
  const std::vector<std::size_t>& order() const { return order_; }
  double theta() const { return theta_; }

 private:
  std::vector<std::size_t> order_;
  double theta_;
};

/// Two-agent Bayesian optimum: scout arm i*, fall back to j* when the scout's
/// reward is below mu_{j*}.
class TwoOptPolicy final : public AnonymousPolicy {
 public:
  struct PairScore {
    std::size_t scout;
    std::size_t fallback;
    double score;  // mu_i + E[max(X_i, mu_j)]
  };

  /// Requires N = 2. Ties between pairs go to the lexicographically first.
  TwoOptPolicy(const std::vector<ArmDistribution>& arms, std::size_t n_agents);

  static std::vector<PairScore> score_pairs(const std::vector<ArmDistribution>& arms);

  std::size_t choose(const AnonymousView& view) const override;
  std::string name() const override { return "two_opt"; }
  std::size_t scout() const { return scout_; }
  std::size_t fallback() const { return fallback_; }
  double threshold() const { return threshold_; }
  double score() const { return score_; }

 private:
  std::size_t scout_ = 0;
  std::size_t fallback_ = 1;
  double threshold_ = 0.0;
  double score_ = 0.0;
};

/// All-Bernoulli instances: open arms by descending p (ties by index) until a
/// 1 appears, then serve it. If everything revealed is 0, the last opened arm
/// is served.
class PandoraBernoulliPolicy final : public AnonymousPolicy {
 public:
  explicit PandoraBernoulliPolicy(const std::vector<ArmDistribution>& arms);
  std::size_t choose(const AnonymousView& view) const override;
  std::string name() const override { return "pandora_bernoulli"; }
  const std::vector<std::size_t>& order() const { return order_; }

 private:
  std::vector<std::size_t> order_;
};

/// Plays the argmax of the finite-support dynamic program.
class DpOptimalPolicy final : public AnonymousPolicy {
 public:
  DpOptimalPolicy(const std::vector<ArmDistribution>& arms, std::size_t n_agents);
  explicit DpOptimalPolicy(std::shared_ptr<const DpOptimal> table);
  std::size_t choose(const AnonymousView& view) const override;
  std::string name() const override { return "dp_optimal"; }
  bool explore_first() const override { return false; }
  const DpOptimal& table() const { return *table_; }

 private:
  std::shared_ptr<const DpOptimal> table_;
};

/// Envy-freeness up to C for two agents and two arms. Opens arm 0; repeats it
/// when its reward exceeds 1/2; otherwise opens arm 1 only if no reward in
/// [0, 1] for the second agent could push |R_(1) - R_(2)| above C.
class EfcPolicy final : public IdentityAwarePolicy {
 public:
  EfcPolicy(double budget, std::size_t n_agents, std::size_t n_arms);
  std::size_t choose(const IdentityView& view) const override;
  std::string name() const override { return "efc"; }
  bool explore_first() const override { return false; }
  double budget() const { return budget_; }

 private:
  double budget_;
};

/// Builds a policy from its JSON spec for the given instance:
/// {"policy":"threshold","order":[0,1,2,3],"theta":0.75} | {"policy":"efc","c":1} |
/// {"policy":"two_opt"} | {"policy":"dp_optimal"} | {"policy":"pandora_bernoulli"} |
/// {"policy":"ne"} | {"policy":"fixed","arm":0}
std::shared_ptr<const Policy> policy_from_json(const nlohmann::json& spec,
                                               const Instance& instance);

}  // namespace envy
