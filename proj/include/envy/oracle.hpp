#pragma once

#include <cstddef>
#include <vector>

#include "envy/arrival.hpp"
#include "envy/engine.hpp"
#include "envy/policy.hpp"

namespace envy::oracle {

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Every joint reward outcome of one round with its probability, optionally
/// crossed with all N! arrival orders.
struct OutcomeEnumeration {
  std::vector<std::vector<double>> rewards;
  std::vector<double> probs;
  std::vector<ArrivalOrder> orders;

  /// Throws ConfigError for a continuous arm or when outcomes x orders
  /// exceeds `cap`.
  static OutcomeEnumeration build(const Instance& instance, bool all_orders,
                                  std::size_t cap = kDefaultEnumerationCap);
};

/// Expected per-round welfare of a deterministic anonymous policy.
double exact_round_welfare(const Instance& instance, const AnonymousPolicy& policy,
                           std::size_t cap = kDefaultEnumerationCap);

struct ExactDiscrepancy {
  double mean;
  double variance;
  /// E[Delta^2 ; Z = q] for q = 0..K, where Z counts opened arms that
  /// revealed reward 0. Sums to E[Delta^2].
  std::vector<double> second_moment_by_zero_count;
};

/// Exact law of Delta_{i,j} = r_i - r_j in one round under uniform arrival.
ExactDiscrepancy exact_var_delta(const Instance& instance, const AnonymousPolicy& policy,
                                 std::size_t agent_i, std::size_t agent_j,
                                 std::size_t cap = kDefaultEnumerationCap);

/// Per-q terms 2 p (1-p)^q q (N-q) / (N(N-1)), q = 1..K, of the closed-form
/// variance series for K i.i.d. Bernoulli(p) arms under Pandora play. Index 0
/// of the result is q = 1.
std::vector<double> iid_bernoulli_var_series_terms(double p, std::size_t n_arms,
                                                   std::size_t n_agents);

/// Best expected per-round welfare by plain recursion over (agents left,
/// unopened arms, best revealed value), without memoization.
double optimal_policy_value(const std::vector<ArmDistribution>& arms, std::size_t n_agents);

}  // namespace envy::oracle
