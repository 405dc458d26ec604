#include "envy/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace envy {
namespace {

// Sum over i<j of |x_i - x_j| for sorted x is sum_k (2k - N + 1) x_k.
double pairwise_abs_sum_sorted(std::span<const double> sorted) {
  const double n = static_cast<double>(sorted.size());
  double s = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    s += (2.0 * static_cast<double>(k) - n + 1.0) * sorted[k];
  }
  return s;
}

}  // namespace

double max_envy(std::span<const double> cumulative) {
  if (cumulative.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(cumulative.begin(), cumulative.end());
  return *hi - *lo;
}

double avg_envy(std::span<const double> cumulative) {
  if (cumulative.size() < 2) return 0.0;
  std::vector<double> sorted(cumulative.begin(), cumulative.end());
  std::sort(sorted.begin(), sorted.end());
  const double pairs = 0.5 * static_cast<double>(sorted.size() * (sorted.size() - 1));
  return pairwise_abs_sum_sorted(sorted) / pairs;
}

EnvyLedger::EnvyLedger(std::size_t n_agents)
    : cumulative_(n_agents, 0.0), round_rewards_(n_agents, 0.0), scratch_(n_agents, 0.0) {
  if (n_agents == 0) throw std::invalid_argument("EnvyLedger needs at least one agent");
}

void EnvyLedger::record_round(std::span<const double> agent_rewards) {
  if (agent_rewards.size() != cumulative_.size()) {
    throw std::invalid_argument("record_round: reward vector has wrong length");
  }
  double welfare = 0.0;
  for (std::size_t i = 0; i < cumulative_.size(); ++i) {
    round_rewards_[i] = agent_rewards[i];
    cumulative_[i] += agent_rewards[i];
    welfare += agent_rewards[i];
  }
  std::copy(cumulative_.begin(), cumulative_.end(), scratch_.begin());
  std::sort(scratch_.begin(), scratch_.end());
  const std::size_t n = scratch_.size();
  const double range = scratch_.back() - scratch_.front();
  const double avg =
      n < 2 ? 0.0
            : pairwise_abs_sum_sorted(scratch_) / (0.5 * static_cast<double>(n * (n - 1)));

  max_envy_.push_back(range);
  avg_envy_.push_back(std::min(avg, range));
  running_max_.push_back(running_max_.empty() ? range : std::max(running_max_.back(), range));
  round_welfare_.push_back(welfare);
  total_welfare_.push_back(total_welfare_.empty() ? welfare : total_welfare_.back() + welfare);
  pair_discrepancy_.push_back(agent_rewards.front() - agent_rewards.back());
  pair_envy_.push_back(cumulative_.front() - cumulative_.back());
}

std::size_t EnvyLedger::checked(std::size_t t) const {
  if (t == 0 || t > rounds()) {
    throw std::out_of_range("round " + std::to_string(t) + " outside [1, " +
                            std::to_string(rounds()) + "]");
  }
  return t - 1;
}

double EnvyLedger::max_envy(std::size_t t) const { return max_envy_[checked(t)]; }
double EnvyLedger::avg_envy(std::size_t t) const { return avg_envy_[checked(t)]; }
double EnvyLedger::running_max_envy(std::size_t t) const { return running_max_[checked(t)]; }
double EnvyLedger::round_welfare(std::size_t t) const { return round_welfare_[checked(t)]; }
double EnvyLedger::total_welfare(std::size_t t) const { return total_welfare_[checked(t)]; }
double EnvyLedger::pair_discrepancy(std::size_t t) const {
  return pair_discrepancy_[checked(t)];
}
double EnvyLedger::pair_envy(std::size_t t) const { return pair_envy_[checked(t)]; }

double estimate_var_delta(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("estimate_var_delta needs at least two samples");
  }
  // Welford keeps the estimate stable for 10^6-sample runs.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : samples) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  return m2 / static_cast<double>(n - 1);
}

SufficientRandomness sufficiently_random(std::span<const double> var_per_round) {
  double sum = 0.0;
  for (double v : var_per_round) sum += v;
  const double margin = sum - std::sqrt(static_cast<double>(var_per_round.size()));
  return {margin >= 0.0, margin};
}

double bound_uniform_upper(std::size_t n_agents, double var_sum) {
  return 2.0 * std::sqrt(std::log(static_cast<double>(n_agents)) * var_sum);
}

double bound_explore_first_var(std::size_t n_agents, std::size_t n_arms) {
  if (n_agents < 2) throw std::invalid_argument("explore-first bound needs N >= 2");
  // At most N distinct arms can be opened in a round of N sessions.
  const double k = static_cast<double>(std::min(n_arms, n_agents));
  const double n = static_cast<double>(n_agents);
  return std::min(1.0, (2.0 * n - k) * (k - 1.0) / (n * (n - 1.0)));
}

double bound_nudged(std::size_t n_agents, double delta, double tilde_delta) {
  if (!(delta * tilde_delta > 0.0)) {
    throw std::domain_error("nudged envy bound undefined: delta * tilde_delta must be positive");
  }
  return static_cast<double>(n_agents - 1) * (2.0 + 128.0 / (15.0 * delta * tilde_delta));
}

double bound_adversarial(double tilde_delta, std::size_t horizon) {
  return tilde_delta * static_cast<double>(horizon);
}

}  // namespace envy
