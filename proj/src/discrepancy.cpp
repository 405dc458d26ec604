#include "envy/discrepancy.hpp"

#include <algorithm>
#include <cmath>

namespace envy {
namespace {

constexpr double kNonzero = 1e-12;

// Plays independent single rounds. Session rewards do not depend on who
// arrives, so the identity order is used throughout.
template <class Fn>
void for_each_round(const Instance& instance, const AnonymousPolicy& policy,
                    std::size_t n_samples, Rng& rng, Fn&& fn) {
  Instance one_round = instance;
  one_round.horizon = 1;
  const ArrivalOrder order = ArrivalOrder::identity(instance.n_agents);
  for (std::size_t s = 0; s < n_samples; ++s) {
    Simulator sim(one_round, policy);
    RoundRealization realization = realize_round(one_round, 1, rng);
    fn(sim.run_round(realization, order).session_rewards);
  }
}

}  // namespace

TildeDeltaEstimate estimate_tilde_delta(const Instance& instance, const AnonymousPolicy& policy,
                                        std::size_t n_samples, Rng& rng) {
  const std::size_t n = instance.n_agents;
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> sum(pairs, 0.0), sum_nonzero(pairs, 0.0);
  std::vector<std::size_t> count_nonzero(pairs, 0);
  for_each_round(instance, policy, n_samples, rng, [&](const std::vector<double>& r) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        const double d = r[j] - r[i];
        sum[k] += d;
        if (std::abs(d) > kNonzero) {
          sum_nonzero[k] += d;
          ++count_nonzero[k];
        }
      }
    }
  });

  TildeDeltaEstimate est;
  std::size_t k = 0;
  const double total = static_cast<double>(n_samples);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      SessionPairStat stat{i, j, sum[k] / total, static_cast<double>(count_nonzero[k]) / total,
                           std::nullopt};
      if (count_nonzero[k] > 0) {
        stat.conditional_mean = sum_nonzero[k] / static_cast<double>(count_nonzero[k]);
        est.conditional = est.conditional ? std::min(*est.conditional, *stat.conditional_mean)
                                          : *stat.conditional_mean;
        est.unconditional =
            est.unconditional ? std::min(*est.unconditional, stat.mean) : stat.mean;
      }
      est.pairs.push_back(stat);
    }
  }
  return est;
}

std::vector<SessionRewardStat> session_reward_means(const Instance& instance,
                                                    const AnonymousPolicy& policy,
                                                    std::size_t n_samples, Rng& rng) {
  const std::size_t n = instance.n_agents;
  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
  for_each_round(instance, policy, n_samples, rng, [&](const std::vector<double>& r) {
    for (std::size_t q = 0; q < n; ++q) {
      sum[q] += r[q];
      sum_sq[q] += r[q] * r[q];
    }
  });
  std::vector<SessionRewardStat> out;
  const double m = static_cast<double>(n_samples);
  for (std::size_t q = 0; q < n; ++q) {
    const double mean = sum[q] / m;
    const double var = std::max(0.0, (sum_sq[q] - m * mean * mean) / (m - 1.0));
    out.push_back({mean, std::sqrt(var / m)});
  }
  return out;
}

}  // namespace envy
