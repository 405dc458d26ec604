#include "envy/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "envy/errors.hpp"

namespace envy::oracle {

OutcomeEnumeration OutcomeEnumeration::build(const Instance& instance, bool all_orders,
                                             std::size_t cap) {
  std::vector<std::vector<double>> supports;
  std::vector<std::vector<double>> masses;
  double outcomes = 1.0;
  for (std::size_t a = 0; a < instance.arms.size(); ++a) {
    auto s = instance.arms[a].support();
    if (!s) throw ConfigError("oracle needs finite supports; arm " + std::to_string(a) + " is continuous");
    outcomes *= static_cast<double>(s->size());
    supports.push_back(*s);
    masses.push_back(*instance.arms[a].support_probs());
  }
  double orders = 1.0;
  if (all_orders) {
    for (std::size_t k = 2; k <= instance.n_agents; ++k) orders *= static_cast<double>(k);
  }
  if (outcomes * orders > static_cast<double>(cap)) {
    throw ConfigError("enumeration of " + std::to_string(outcomes * orders) +
                      " cases exceeds the cap of " + std::to_string(cap));
  }

  OutcomeEnumeration e;
  std::vector<std::size_t> digit(supports.size(), 0);
  for (;;) {
    std::vector<double> r(supports.size());
    double p = 1.0;
    for (std::size_t a = 0; a < supports.size(); ++a) {
      r[a] = supports[a][digit[a]];
      p *= masses[a][digit[a]];
    }
    e.rewards.push_back(std::move(r));
    e.probs.push_back(p);
    std::size_t a = 0;
    while (a < digit.size() && ++digit[a] == supports[a].size()) digit[a++] = 0;
    if (a == digit.size()) break;
  }

  Permutation perm(instance.n_agents);
  std::iota(perm.begin(), perm.end(), 0);
  if (all_orders) {
    do {
      e.orders.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    e.orders.emplace_back(perm);
  }
  return e;
}

namespace {

Instance single_round(const Instance& instance) {
  Instance one = instance;
  one.horizon = 1;
  one.schedule.clear();
  return one;
}

}  // namespace

double exact_round_welfare(const Instance& instance, const AnonymousPolicy& policy,
                           std::size_t cap) {
  const Instance one = single_round(instance);
  const auto e = OutcomeEnumeration::build(one, false, cap);
  double welfare = 0.0;
  for (std::size_t o = 0; o < e.rewards.size(); ++o) {
    Simulator sim(one, policy);
    RoundRealization r = inject_realization(one, 1, e.rewards[o]);
    const auto& out = sim.run_round(r, e.orders.front());
    double w = 0.0;
    for (double x : out.agent_rewards) w += x;
    welfare += e.probs[o] * w;
  }
  return welfare;
}

ExactDiscrepancy exact_var_delta(const Instance& instance, const AnonymousPolicy& policy,
                                 std::size_t agent_i, std::size_t agent_j, std::size_t cap) {
  const Instance one = single_round(instance);
  if (agent_i >= one.n_agents || agent_j >= one.n_agents) {
    throw ConfigError("exact_var_delta: agent index out of range");
  }
  const auto e = OutcomeEnumeration::build(one, true, cap);
  const double order_weight = 1.0 / static_cast<double>(e.orders.size());
  ExactDiscrepancy out{0.0, 0.0, std::vector<double>(one.n_arms() + 1, 0.0)};
  double second = 0.0;
  for (std::size_t o = 0; o < e.rewards.size(); ++o) {
    for (const ArrivalOrder& order : e.orders) {
      Simulator sim(one, policy);
      RoundRealization r = inject_realization(one, 1, e.rewards[o]);
      const auto& res = sim.run_round(r, order);
      const double d = res.agent_rewards[agent_i] - res.agent_rewards[agent_j];
      const double w = e.probs[o] * order_weight;
      std::size_t zeros = 0;
      for (std::size_t a = 0; a < one.n_arms(); ++a) {
        if (r.revealed[a] && r.rewards[a] == 0.0) ++zeros;
      }
      out.mean += w * d;
      second += w * d * d;
      out.second_moment_by_zero_count[zeros] += w * d * d;
    }
  }
  out.variance = second - out.mean * out.mean;
  return out;
}

std::vector<double> iid_bernoulli_var_series_terms(double p, std::size_t n_arms,
                                                   std::size_t n_agents) {
  std::vector<double> terms;
  const double n = static_cast<double>(n_agents);
  double tail = 1.0;
  for (std::size_t q = 1; q <= n_arms; ++q) {
    tail *= 1.0 - p;
    const double qd = static_cast<double>(q);
    terms.push_back(2.0 * p * tail * qd * (n - qd) / (n * (n - 1.0)));
  }
  return terms;
}

namespace {

double best_welfare(const std::vector<std::vector<double>>& values,
                    const std::vector<std::vector<double>>& probs, std::vector<bool>& unopened,
                    std::size_t agents_left, double best_seen) {
  double best = best_seen * static_cast<double>(agents_left);
  if (agents_left == 0) return best;
  for (std::size_t a = 0; a < unopened.size(); ++a) {
    if (!unopened[a]) continue;
    unopened[a] = false;
    double expect = 0.0;
    for (std::size_t k = 0; k < values[a].size(); ++k) {
      const double x = values[a][k];
      expect += probs[a][k] *
                (x + best_welfare(values, probs, unopened, agents_left - 1, std::max(best_seen, x)));
    }
    unopened[a] = true;
    best = std::max(best, expect);
  }
  return best;
}

}  // namespace

double optimal_policy_value(const std::vector<ArmDistribution>& arms, std::size_t n_agents) {
  std::vector<std::vector<double>> values, probs;
  for (const auto& arm : arms) {
    const auto s = arm.support();
    if (!s) throw ConfigError("optimal_policy_value needs finite supports");
    values.push_back(*s);
    probs.push_back(*arm.support_probs());
  }
  std::vector<bool> unopened(arms.size(), true);
  return best_welfare(values, probs, unopened, n_agents, 0.0);
}

}  // namespace envy::oracle
