#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "envy/arrival.hpp"
#include "envy/distributions.hpp"
#include "envy/metrics.hpp"
#include "envy/policy.hpp"
#include "envy/rng.hpp"

namespace envy {

/// K arms, N agents, horizon T. Rewards are stationary unless `schedule`
/// overrides the arms of round t with schedule[t - 1].
struct Instance {
  std::vector<ArmDistribution> arms;
  std::size_t n_agents = 2;
  std::size_t horizon = 1;
  std::vector<std::vector<ArmDistribution>> schedule;

  std::size_t n_arms() const { return arms.size(); }
  const std::vector<ArmDistribution>& arms_at(std::size_t round) const;
  /// Throws ConfigError when K < 2, N < 2, T < 1 or the schedule is ragged.
  void validate() const;
};

/// All K rewards of one round, drawn once. `revealed` tracks which arms have
/// been pulled in earlier sessions of this round.
struct RoundRealization {
  std::size_t round = 1;
  std::vector<double> rewards;
  std::vector<bool> revealed;
};

RoundRealization realize_round(const Instance& instance, std::size_t round, Rng& rng);

/// Test hook: a realization with fixed rewards, e.g. for replaying a table.
RoundRealization inject_realization(const Instance& instance, std::size_t round,
                                    std::vector<double> rewards);

struct HistoryEvent {
  std::size_t round;
  std::size_t session;
  std::size_t agent;
  std::size_t arm;
  double reward;
};

/// What happened in one round, indexed by session and by agent.
struct RoundOutcome {
  std::vector<std::size_t> arms;        // arm pulled in session q
  std::vector<double> session_rewards;  // r_(q)
  std::vector<double> agent_rewards;    // r_i
};

struct SimulatorOptions {
  /// Keeps the identity-aware event list and the anonymous log policies see.
  bool record_history = false;
};

/// Runs rounds of N sessions with reward consistency for one trajectory.
class Simulator {
 public:
  Simulator(const Instance& instance, const Policy& policy, SimulatorOptions options = {});

  /// Plays round rounds_played() + 1. Throws ConfigError when the policy
  /// returns an arm index outside [0, K).
  const RoundOutcome& run_round(RoundRealization& realization, const ArrivalOrder& order);

  std::size_t rounds_played() const { return ledger_.rounds(); }
  const EnvyLedger& ledger() const { return ledger_; }
  const std::vector<HistoryEvent>& history() const { return history_; }
  const std::vector<Pull>& anonymous_log() const { return anonymous_log_; }

 private:
  const Instance& instance_;
  const Policy& policy_;
  SimulatorOptions options_;
  EnvyLedger ledger_;
  RoundOutcome outcome_;
  std::vector<Pull> current_;
  std::vector<std::size_t> earlier_agents_;
  std::vector<double> cumulative_before_;
  std::vector<HistoryEvent> history_;
  std::vector<Pull> anonymous_log_;
};

using RoundObserver = std::function<void(const RoundRealization&, const ArrivalOrder&,
                                         const RoundOutcome&)>;

struct TrajectoryResult {
  EnvyLedger ledger;
  std::vector<HistoryEvent> history;
};

/// Plays instance.horizon rounds: realization from streams.rewards, order from
/// the arrival function fed by streams.arrivals.
TrajectoryResult run_simulation(const Instance& instance, const Policy& policy,
                                const ArrivalFunction& arrival, TrajectoryStreams& streams,
                                SimulatorOptions options = {},
                                const RoundObserver& observer = {});

/// One row per session: round, session, agent, arm, reward, R_agent,
/// max_envy, avg_envy. Round and session are 1-based, agent and arm 0-based;
/// envy values are end-of-round.
void write_trajectory_csv(std::ostream& out, const TrajectoryResult& trajectory);

/// Definition check: within a round, pulls are distinct until the first
/// repeat, and every later pull repeats that one observed arm.
bool is_explore_first(std::span<const std::size_t> arms_per_session);

}  // namespace envy
