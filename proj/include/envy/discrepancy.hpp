#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "envy/engine.hpp"
#include "envy/policy.hpp"
#include "envy/rng.hpp"

namespace envy {

/// Monte Carlo statistics of Delta_(j),(i) = r_(j) - r_(i) for one pair of
/// sessions i < j (0-based).
struct SessionPairStat {
  std::size_t earlier;
  std::size_t later;
  double mean;              // E[Delta]
  double prob_nonzero;      // P(|Delta| > 1e-12)
  std::optional<double> conditional_mean;  // E[Delta | Delta != 0]
};

struct TildeDeltaEstimate {
  /// min over pairs with nonzero discrepancy of E[Delta | Delta != 0];
  /// nullopt when no pair ever differs.
  std::optional<double> conditional;
  /// The same minimum without conditioning, over the same pairs.
  std::optional<double> unconditional;
  std::vector<SessionPairStat> pairs;
};

/// Samples independent rounds (stationary arms, anonymous policy) and
/// estimates the smallest conditional expected discrepancy between sessions.
TildeDeltaEstimate estimate_tilde_delta(const Instance& instance, const AnonymousPolicy& policy,
                                        std::size_t n_samples, Rng& rng);

struct SessionRewardStat {
  double mean;
  double std_error;
};

/// E[r_(q)] per session with its standard error, from n_samples rounds.
std::vector<SessionRewardStat> session_reward_means(const Instance& instance,
                                                    const AnonymousPolicy& policy,
                                                    std::size_t n_samples, Rng& rng);

}  // namespace envy
