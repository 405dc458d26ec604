#include "envy/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "envy/errors.hpp"

namespace envy {

NoEnvyPolicy::NoEnvyPolicy(const std::vector<ArmDistribution>& arms) : arm_(0) {
  for (std::size_t a = 1; a < arms.size(); ++a) {
    if (arms[a].mean() > arms[arm_].mean()) arm_ = a;
  }
}

ThresholdExploreFirst::ThresholdExploreFirst(std::vector<std::size_t> order, double theta)
    : order_(std::move(order)), theta_(theta) {
  if (order_.empty()) throw ConfigError("threshold policy needs a non-empty arm order");
  std::vector<std::size_t> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("threshold policy order repeats an arm");
  }
}

std::size_t ThresholdExploreFirst::choose(const AnonymousView& view) const {
  for (const Pull& p : view.current_round) {
    if (p.reward >= theta_) return p.arm;
  }
  for (std::size_t arm : order_) {
    if (!view.revealed_reward(arm)) return arm;
  }
  return *view.best_revealed();
}

TwoOptPolicy::TwoOptPolicy(const std::vector<ArmDistribution>& arms, std::size_t n_agents) {
  if (n_agents != 2) {
    throw ConfigError("two_opt is defined for N = 2, got N = " + std::to_string(n_agents));
  }
  const auto scores = score_pairs(arms);
  const PairScore* best = &scores.front();
  for (const auto& s : scores) {
    if (s.score > best->score) best = &s;
  }
  scout_ = best->scout;
  fallback_ = best->fallback;
  threshold_ = arms[fallback_].mean();
  score_ = best->score;
}

std::vector<TwoOptPolicy::PairScore> TwoOptPolicy::score_pairs(
    const std::vector<ArmDistribution>& arms) {
  if (arms.size() < 2) throw ConfigError("two_opt needs at least two arms");
  std::vector<PairScore> out;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    for (std::size_t j = 0; j < arms.size(); ++j) {
      if (i == j) continue;
      out.push_back({i, j, arms[i].mean() + arms[i].expected_max_with_constant(arms[j].mean())});
    }
  }
  return out;
}

std::size_t TwoOptPolicy::choose(const AnonymousView& view) const {
  const auto scouted = view.revealed_reward(scout_);
  if (!scouted) return scout_;
  return *scouted >= threshold_ ? scout_ : fallback_;
}

PandoraBernoulliPolicy::PandoraBernoulliPolicy(const std::vector<ArmDistribution>& arms) {
  for (std::size_t a = 0; a < arms.size(); ++a) {
    if (!arms[a].is_bernoulli()) {
      throw ConfigError("pandora_bernoulli needs Bernoulli arms; arm " + std::to_string(a) +
                        " is " + arms[a].describe());
    }
  }
  order_.resize(arms.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return arms[a].mean() > arms[b].mean();
  });
}

std::size_t PandoraBernoulliPolicy::choose(const AnonymousView& view) const {
  for (const Pull& p : view.current_round) {
    if (p.reward == 1.0) return p.arm;
  }
  for (std::size_t arm : order_) {
    if (!view.revealed_reward(arm)) return arm;
  }
  return view.current_round.back().arm;
}

DpOptimalPolicy::DpOptimalPolicy(const std::vector<ArmDistribution>& arms,
                                 std::size_t n_agents)
    : table_(std::make_shared<const DpOptimal>(DpOptimal::solve(arms, n_agents))) {}

DpOptimalPolicy::DpOptimalPolicy(std::shared_ptr<const DpOptimal> table)
    : table_(std::move(table)) {}

std::size_t DpOptimalPolicy::choose(const AnonymousView& view) const {
  std::uint32_t unopened = table_->full_mask();
  for (const Pull& p : view.current_round) unopened &= ~(1u << p.arm);
  const auto best = view.best_revealed();
  const double v = best ? *view.revealed_reward(*best) : 0.0;
  const std::size_t act = table_->action(view.remaining_agents(), unopened, v);
  if (act != DpOptimal::kStop) return act;
  if (best) return *best;
  // Nothing revealed and nothing worth opening: every arm is worth 0.
  return static_cast<std::size_t>(std::countr_zero(unopened));
}

EfcPolicy::EfcPolicy(double budget, std::size_t n_agents, std::size_t n_arms)
    : budget_(budget) {
  if (!(budget >= 0.0)) throw ConfigError("efc envy budget C must be >= 0");
  if (n_agents != 2 || n_arms != 2) {
    throw ConfigError("efc is defined for N = 2 agents and K = 2 arms");
  }
}

std::size_t EfcPolicy::choose(const IdentityView& view) const {
  const AnonymousView& a = view.anonymous;
  if (a.session == 0) return 0;
  const double first = a.current_round.front().reward;
  if (first > 0.5) return 0;
  const std::size_t first_agent = view.earlier_agents.front();
  const double gap = view.cumulative_before_round[first_agent] -
                     view.cumulative_before_round[view.agent] + first;
  // |gap - r| over r in [0, 1] peaks at an endpoint.
  const double worst = std::max(std::abs(gap), std::abs(gap - 1.0));
  return worst > budget_ ? 0 : 1;
}

std::shared_ptr<const Policy> policy_from_json(const nlohmann::json& spec,
                                               const Instance& instance) {
  const auto kind = spec.at("policy").get<std::string>();
  const auto& arms = instance.arms;
  if (kind == "fixed") {
    const auto arm = spec.value("arm", std::size_t{0});
    if (arm >= arms.size()) throw ConfigError("fixed policy arm out of range");
    return std::make_shared<FixedArmPolicy>(arm);
  }
  if (kind == "ne") return std::make_shared<NoEnvyPolicy>(arms);
  if (kind == "threshold") {
    std::vector<std::size_t> order;
    if (spec.contains("order")) {
      order = spec.at("order").get<std::vector<std::size_t>>();
    } else {
      order.resize(arms.size());
      std::iota(order.begin(), order.end(), 0);
    }
    for (std::size_t a : order) {
      if (a >= arms.size()) throw ConfigError("threshold order names a missing arm");
    }
    return std::make_shared<ThresholdExploreFirst>(std::move(order), spec.at("theta").get<double>());
  }
  if (kind == "two_opt") return std::make_shared<TwoOptPolicy>(arms, instance.n_agents);
  if (kind == "pandora_bernoulli") return std::make_shared<PandoraBernoulliPolicy>(arms);
  if (kind == "dp_optimal") return std::make_shared<DpOptimalPolicy>(arms, instance.n_agents);
  if (kind == "efc") {
    return std::make_shared<EfcPolicy>(spec.value("c", 1.0), instance.n_agents, arms.size());
  }
  throw ConfigError("unknown policy: " + kind);
}

}  // namespace envy
