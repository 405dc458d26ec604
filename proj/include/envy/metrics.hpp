#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace envy {

/// max_i R_i - min_i R_i.
double max_envy(std::span<const double> cumulative);

/// Mean of |R_i - R_j| over all unordered pairs.
double avg_envy(std::span<const double> cumulative);

/// Cumulative rewards per agent and per-round envy traces.
class EnvyLedger {
 public:
  explicit EnvyLedger(std::size_t n_agents);

  /// Adds one round's agent rewards r_i^t and appends to every trace.
  void record_round(std::span<const double> agent_rewards);

  std::size_t n_agents() const { return cumulative_.size(); }
  std::size_t rounds() const { return max_envy_.size(); }

  std::span<const double> cumulative() const { return cumulative_; }
  std::span<const double> round_rewards() const { return round_rewards_; }

  /// Trace accessors take a 1-based round t <= rounds().
  double max_envy(std::size_t t) const;
  double avg_envy(std::size_t t) const;
  double running_max_envy(std::size_t t) const;
  double round_welfare(std::size_t t) const;
  double total_welfare(std::size_t t) const;
  /// r_0^t - r_{N-1}^t, the per-round discrepancy of the designated pair.
  double pair_discrepancy(std::size_t t) const;
  /// R_0^t - R_{N-1}^t.
  double pair_envy(std::size_t t) const;

  std::span<const double> max_envy_trace() const { return max_envy_; }
  std::span<const double> avg_envy_trace() const { return avg_envy_; }

 private:
  std::size_t checked(std::size_t t) const;

  std::vector<double> cumulative_;
  std::vector<double> round_rewards_;
  std::vector<double> max_envy_;
  std::vector<double> avg_envy_;
  std::vector<double> running_max_;
  std::vector<double> round_welfare_;
  std::vector<double> total_welfare_;
  std::vector<double> pair_discrepancy_;
  std::vector<double> pair_envy_;
  std::vector<double> scratch_;
};

/// Unbiased sample variance of the discrepancy samples. Throws
/// std::invalid_argument with fewer than two samples.
double estimate_var_delta(std::span<const double> samples);

struct SufficientRandomness {
  bool sufficient;
  double margin;  // sum of variances minus sqrt(T)
};

/// Sum over t of Var(Delta^t) >= sqrt(T), with T the number of estimates.
SufficientRandomness sufficiently_random(std::span<const double> var_per_round);

/// 2 sqrt(ln N * sum_t Var(Delta^t)).
double bound_uniform_upper(std::size_t n_agents, double var_sum);

/// min{1, (2N-K)(K-1) / (N(N-1))} with K capped at N.
double bound_explore_first_var(std::size_t n_agents, std::size_t n_arms);

/// (N-1)(2 + 128 / (15 delta tilde_delta)). Throws std::domain_error when
/// delta * tilde_delta is not positive.
double bound_nudged(std::size_t n_agents, double delta, double tilde_delta);

/// tilde_delta * T.
double bound_adversarial(double tilde_delta, std::size_t horizon);

}  // namespace envy
