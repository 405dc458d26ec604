#include "envy/engine.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "envy/csv.hpp"
#include "envy/errors.hpp"

namespace envy {

std::optional<double> AnonymousView::revealed_reward(std::size_t arm) const {
  for (const Pull& p : current_round) {
    if (p.arm == arm) return p.reward;
  }
  return std::nullopt;
}

std::optional<std::size_t> AnonymousView::best_revealed() const {
  std::optional<std::size_t> best;
  double best_reward = 0.0;
  for (const Pull& p : current_round) {
    if (!best || p.reward > best_reward) {
      best = p.arm;
      best_reward = p.reward;
    }
  }
  return best;
}

const std::vector<ArmDistribution>& Instance::arms_at(std::size_t round) const {
  if (round >= 1 && round <= schedule.size()) return schedule[round - 1];
  return arms;
}

void Instance::validate() const {
  if (arms.size() < 2) throw ConfigError("instance needs K >= 2 arms");
  if (n_agents < 2) throw ConfigError("instance needs N >= 2 agents");
  if (horizon < 1) throw ConfigError("instance needs horizon T >= 1");
  for (std::size_t t = 0; t < schedule.size(); ++t) {
    if (schedule[t].size() != arms.size()) {
      throw ConfigError("schedule entry for round " + std::to_string(t + 1) +
                        " has the wrong number of arms");
    }
  }
}

RoundRealization realize_round(const Instance& instance, std::size_t round, Rng& rng) {
  const auto& arms = instance.arms_at(round);
  RoundRealization r;
  r.round = round;
  r.rewards.resize(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) r.rewards[i] = arms[i].sample(rng);
  r.revealed.assign(arms.size(), false);
  return r;
}

RoundRealization inject_realization(const Instance& instance, std::size_t round,
                                    std::vector<double> rewards) {
  if (rewards.size() != instance.n_arms()) {
    throw ConfigError("injected realization has " + std::to_string(rewards.size()) +
                      " rewards for " + std::to_string(instance.n_arms()) + " arms");
  }
  RoundRealization r;
  r.round = round;
  r.rewards = std::move(rewards);
  r.revealed.assign(r.rewards.size(), false);
  return r;
}

Simulator::Simulator(const Instance& instance, const Policy& policy, SimulatorOptions options)
    : instance_(instance), policy_(policy), options_(options), ledger_(instance.n_agents) {
  instance_.validate();
  outcome_.arms.resize(instance.n_agents);
  outcome_.session_rewards.resize(instance.n_agents);
  outcome_.agent_rewards.resize(instance.n_agents);
  current_.reserve(instance.n_agents);
  earlier_agents_.reserve(instance.n_agents);
  cumulative_before_.resize(instance.n_agents);
}

const RoundOutcome& Simulator::run_round(RoundRealization& realization,
                                         const ArrivalOrder& order) {
  const std::size_t n = instance_.n_agents;
  const std::size_t k = instance_.n_arms();
  const std::size_t round = rounds_played() + 1;
  if (order.size() != n) throw ConfigError("arrival order length does not match N");
  if (realization.rewards.size() != k) throw ConfigError("realization has wrong arm count");
  realization.round = round;
  realization.revealed.assign(k, false);

  current_.clear();
  earlier_agents_.clear();
  const auto cumulative = ledger_.cumulative();
  std::copy(cumulative.begin(), cumulative.end(), cumulative_before_.begin());

  for (std::size_t q = 0; q < n; ++q) {
    AnonymousView view{round, q, n, k, current_, anonymous_log_};
    const std::size_t agent = order.agent_at(q);
    std::size_t arm = 0;
    if (policy_.capability() == Capability::kAnonymous) {
      arm = static_cast<const AnonymousPolicy&>(policy_).choose(view);
    } else {
      IdentityView iview{view, agent, earlier_agents_, cumulative_before_};
      arm = static_cast<const IdentityAwarePolicy&>(policy_).choose(iview);
    }
    if (arm >= k) {
      throw ConfigError("policy " + policy_.name() + " chose arm " + std::to_string(arm) +
                        " but the instance has " + std::to_string(k) + " arms");
    }
    // Reward consistency: every pull of this arm in this round sees the same value.
    const double reward = realization.rewards[arm];
    realization.revealed[arm] = true;
    current_.push_back({arm, reward});
    earlier_agents_.push_back(agent);
    outcome_.arms[q] = arm;
    outcome_.session_rewards[q] = reward;
    outcome_.agent_rewards[agent] = reward;
    if (options_.record_history) history_.push_back({round, q, agent, arm, reward});
  }
  if (options_.record_history) {
    anonymous_log_.insert(anonymous_log_.end(), current_.begin(), current_.end());
  }
  ledger_.record_round(outcome_.agent_rewards);
  return outcome_;
}

TrajectoryResult run_simulation(const Instance& instance, const Policy& policy,
                                const ArrivalFunction& arrival, TrajectoryStreams& streams,
                                SimulatorOptions options, const RoundObserver& observer) {
  Simulator sim(instance, policy, options);
  for (std::size_t t = 1; t <= instance.horizon; ++t) {
    RoundRealization realization = realize_round(instance, t, streams.rewards);
    const ArrivalOrder order = arrival.next(sim.ledger().cumulative(), streams.arrivals);
    const RoundOutcome& outcome = sim.run_round(realization, order);
    if (observer) observer(realization, order, outcome);
  }
  return {sim.ledger(), sim.history()};
}

void write_trajectory_csv(std::ostream& out, const TrajectoryResult& trajectory) {
  CsvWriter csv(out, {"round", "session", "agent", "arm", "reward", "R_agent", "max_envy",
                      "avg_envy"});
  const std::size_t n = trajectory.ledger.n_agents();
  std::vector<double> cumulative(n, 0.0);
  for (const HistoryEvent& e : trajectory.history) {
    cumulative[e.agent] += e.reward;
    csv.row({static_cast<double>(e.round), static_cast<double>(e.session + 1),
             static_cast<double>(e.agent), static_cast<double>(e.arm), e.reward,
             cumulative[e.agent], trajectory.ledger.max_envy(e.round),
             trajectory.ledger.avg_envy(e.round)});
  }
}

bool is_explore_first(std::span<const std::size_t> arms_per_session) {
  std::vector<std::size_t> seen;
  std::size_t q = 0;
  for (; q < arms_per_session.size(); ++q) {
    const std::size_t a = arms_per_session[q];
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) break;
    seen.push_back(a);
  }
  if (q == arms_per_session.size()) return true;
  const std::size_t committed = arms_per_session[q];
  for (; q < arms_per_session.size(); ++q) {
    if (arms_per_session[q] != committed) return false;
  }
  return true;
}

}  // namespace envy
