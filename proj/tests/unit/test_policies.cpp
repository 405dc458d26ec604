#include "doctest.h"

#include <cmath>

#include "envy/discrepancy.hpp"
#include "envy/dp_optimal.hpp"
#include "envy/engine.hpp"
#include "envy/errors.hpp"
#include "envy/oracle.hpp"
#include "envy/policies.hpp"
#include "envy/presets.hpp"
#include "generators.hpp"

using namespace envy;

namespace {

AnonymousView view_after(const std::vector<Pull>& pulls, std::size_t n_agents, std::size_t n_arms) {
  return AnonymousView{1, pulls.size(), n_agents, n_arms, pulls, {}};
}

std::size_t efc_second(const EfcPolicy& efc, double r_first_agent, double r_current, double x1) {
  const std::vector<Pull> pulls{{0, x1}};
  const std::vector<std::size_t> earlier{0};
  const std::vector<double> cumulative{r_first_agent, r_current};
  return efc.choose(IdentityView{view_after(pulls, 2, 2), 1, earlier, cumulative});
}

}  // namespace

TEST_CASE("threshold explore-first examples") {
  const ThresholdExploreFirst alg1({0, 1}, 0.5);
  CHECK(alg1.choose(view_after({}, 2, 2)) == 0);
  CHECK(alg1.choose(view_after({{0, 0.6}}, 2, 2)) == 0);
  CHECK(alg1.choose(view_after({{0, 0.48}}, 2, 2)) == 1);
  CHECK(alg1.choose(view_after({{0, 0.5}}, 2, 2)) == 0);
  const ThresholdExploreFirst iu({0, 1, 2, 3}, 0.75);
  CHECK(iu.choose(view_after({{0, 0.1}, {1, 0.2}, {2, 0.3}, {3, 0.4}}, 6, 4)) == 3);
  CHECK(iu.choose(view_after({{0, 0.1}, {1, 0.8}}, 6, 4)) == 1);
  CHECK_THROWS_AS(ThresholdExploreFirst({0, 0}, 0.5), ConfigError);
}

TEST_CASE("two_opt precompute examples") {
  const Preset p = make_preset("prop_is", 2, 1);
  const TwoOptPolicy t(p.instance.arms, 2);
  CHECK(t.scout() == 1);
  CHECK(t.fallback() == 0);
  CHECK(std::abs(t.score() - 1.46) < 1e-12);
  CHECK(std::abs(t.threshold() - 0.65) < 1e-12);

  const std::vector<ArmDistribution> two_u(2, ArmDistribution::uniform(0, 1));
  const TwoOptPolicy u(two_u, 2);
  CHECK(u.scout() == 0);
  CHECK(u.fallback() == 1);
  CHECK(std::abs(u.score() - 1.125) < 1e-12);

  const TwoOptPolicy b({ArmDistribution::bernoulli(1), ArmDistribution::bernoulli(0.2)}, 2);
  CHECK(b.scout() == 0);
  CHECK(std::abs(b.score() - 2.0) < 1e-12);
  CHECK_THROWS_AS(TwoOptPolicy(two_u, 3), ConfigError);
}

TEST_CASE("two_opt keeps the scout on a tie with the threshold") {
  const Preset p = make_preset("prop_is", 2, 1);
  const TwoOptPolicy t(p.instance.arms, 2);
  CHECK(t.choose(view_after({{1, 0.65}}, 2, 2)) == 1);
  CHECK(t.choose(view_after({{1, 0.0}}, 2, 2)) == 0);
}

TEST_CASE("property: two_opt on two uniform arms chooses like the threshold-1/2 policy") {
  const std::vector<ArmDistribution> arms(2, ArmDistribution::uniform(0, 1));
  const TwoOptPolicy t(arms, 2);
  const ThresholdExploreFirst alg1({0, 1}, 0.5);
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double x = i % 10 == 0 ? 0.5 : rng.uniform();
    CHECK(t.choose(view_after({}, 2, 2)) == alg1.choose(view_after({}, 2, 2)));
    CHECK(t.choose(view_after({{0, x}}, 2, 2)) == alg1.choose(view_after({{0, x}}, 2, 2)));
  }
}

TEST_CASE("pandora examples") {
  const Preset ib = make_preset("I_B", 5, 1);
  const PandoraBernoulliPolicy p(ib.instance.arms);
  CHECK(p.order() == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.choose(view_after({{0, 1}}, 5, 3)) == 0);
  CHECK(p.choose(view_after({{0, 0}}, 5, 3)) == 1);
  CHECK(p.choose(view_after({{0, 0}, {1, 0}, {2, 0}}, 5, 3)) == 2);
  const PandoraBernoulliPolicy rev({ArmDistribution::bernoulli(0.2), ArmDistribution::bernoulli(0.7)});
  CHECK(rev.order() == std::vector<std::size_t>{1, 0});
  CHECK_THROWS_AS(PandoraBernoulliPolicy({ArmDistribution::uniform(0, 1), ArmDistribution::bernoulli(0.5)}),
                  ConfigError);
}

TEST_CASE("dp table base cases and hand values") {
  const auto dp = DpOptimal::solve({ArmDistribution::bernoulli(0.5), ArmDistribution::bernoulli(0.3)}, 2);
  for (std::uint32_t mask = 0; mask <= dp.full_mask(); ++mask) {
    for (double v : dp.value_grid()) CHECK(dp.value(0, mask, v) == 0.0);
  }
  const auto g = DpOptimal::solve({ArmDistribution::discrete({0.3, 0.9}, {0.5, 0.5}), ArmDistribution::bernoulli(0.5)}, 2);
  CHECK(std::abs(g.value(2, 0, 0.3) - 0.6) < 1e-12);

  for (double p : {0.0, 0.25, 0.6, 1.0}) {
    const auto one = DpOptimal::solve({ArmDistribution::bernoulli(p)}, 2);
    CHECK(std::abs(one.optimal_value() - 2 * p) < 1e-12);
    CHECK(std::abs(oracle::optimal_policy_value({ArmDistribution::bernoulli(p)}, 2) - 2 * p) < 1e-12);
  }
  CHECK(std::abs(oracle::optimal_policy_value({ArmDistribution::bernoulli(0.3)}, 1) - 0.3) < 1e-12);

  const auto h = DpOptimal::solve({ArmDistribution::bernoulli(0.5), ArmDistribution::discrete({0.4}, {1.0})}, 2);
  CHECK(h.action(1, 0b01, 0.4) == 0);
  // The last agent gets X itself: 0.5 from opening beats 0.4 from stopping.
  CHECK(std::abs(h.value(1, 0b01, 0.4) - 0.5) < 1e-12);
  CHECK(h.action(2, 0b01, 1.0) == DpOptimal::kStop);
  CHECK_THROWS_AS(DpOptimal::solve({ArmDistribution::uniform(0, 1), ArmDistribution::bernoulli(0.5)}, 2),
                  ConfigError);
}

TEST_CASE("dp extraction on I_B opens arms in descending p") {
  const Preset ib = make_preset("I_B", 4, 1);
  const DpOptimalPolicy dp(ib.instance.arms, 4);
  std::vector<Pull> pulls;
  for (int s = 0; s < 3; ++s) {
    const std::size_t a = dp.choose(view_after(pulls, 4, 3));
    CHECK(a == static_cast<std::size_t>(s));
    pulls.push_back({a, 0.0});
  }
}

TEST_CASE("property: dp value dominates every other policy's exact welfare") {
  Rng rng(31);
  for (int c = 0; c < 60; ++c) {
    const std::size_t k = gen::size_in(rng, 2, 4), n = gen::size_in(rng, 2, 4);
    Instance inst{gen::finite_arms(rng, k), n, 1, {}};
    const double best = DpOptimal::solve(inst.arms, n).optimal_value();
    CHECK(oracle::exact_round_welfare(inst, NoEnvyPolicy(inst.arms)) <= best + 1e-12);
    CHECK(oracle::exact_round_welfare(inst, ThresholdExploreFirst(gen::permutation(rng, k), rng.uniform())) <=
          best + 1e-12);
    if (n == 2) CHECK(oracle::exact_round_welfare(inst, TwoOptPolicy(inst.arms, 2)) <= best + 1e-12);
  }
}

TEST_CASE("efc endpoint rule") {
  const EfcPolicy efc(1.0, 2, 2);
  CHECK(efc_second(efc, 0.0, 0.0, 0.3) == 1);
  CHECK(efc_second(efc, 0.9, 0.0, 0.4) == 0);
  CHECK(efc_second(efc, 0.0, 5.0, 0.6) == 0);
  CHECK(efc_second(efc, 0.0, 0.0, 0.5) == 1);  // strict > 1/2
  CHECK_THROWS_AS(EfcPolicy(1.0, 3, 2), ConfigError);
  CHECK_THROWS_AS(EfcPolicy(-1.0, 2, 2), ConfigError);
}

TEST_CASE("efc with zero budget never creates envy") {
  const Instance inst = make_preset("example1", 2, 500).instance;
  const EfcPolicy efc(0.0, 2, 2);
  TrajectoryStreams streams(3, 0);
  const auto res = run_simulation(inst, efc, UniformArrival{}, streams);
  for (std::size_t t = 1; t <= 500; ++t) CHECK(res.ledger.max_envy(t) == 0.0);
}

TEST_CASE("policy json covers every kind") {
  const Instance ib = make_preset("I_B", 2, 1).instance;
  CHECK(policy_from_json({{"policy", "fixed"}, {"arm", 2}}, ib)->name() == "fixed");
  CHECK(policy_from_json({{"policy", "ne"}}, ib)->name() == "ne");
  CHECK(policy_from_json({{"policy", "threshold"}, {"order", {2, 0}}, {"theta", 1}}, ib)->name() == "threshold");
  CHECK(policy_from_json({{"policy", "two_opt"}}, ib)->name() == "two_opt");
  CHECK(policy_from_json({{"policy", "pandora_bernoulli"}}, ib)->name() == "pandora_bernoulli");
  CHECK(policy_from_json({{"policy", "dp_optimal"}}, ib)->name() == "dp_optimal");
  const Instance e1 = make_preset("example1", 2, 1).instance;
  CHECK(policy_from_json({{"policy", "efc"}, {"c", 2}}, e1)->capability() == Capability::kIdentityAware);
  CHECK_THROWS_AS(policy_from_json({{"policy", "fixed"}, {"arm", 7}}, ib), ConfigError);
  CHECK_THROWS_AS(policy_from_json({{"policy", "ucb"}}, ib), ConfigError);
  CHECK_THROWS_AS(policy_from_json({{"policy", "efc"}}, ib), ConfigError);
}

TEST_CASE("session rewards are nondecreasing for the experiment policies (3 sigma)") {
  Rng rng(41);
  for (const char* name : {"I_U", "I_B", "I_S", "example1"}) {
    const Preset p = make_preset(name, 4, 10000);
    const auto policy = policy_from_json(p.policy, p.instance);
    const auto& anon = dynamic_cast<const AnonymousPolicy&>(*policy);
    const auto stats = session_reward_means(p.instance, anon, 100000, rng);
    for (std::size_t q = 1; q < stats.size(); ++q) {
      CAPTURE(name);
      CAPTURE(q);
      const double sigma = std::hypot(stats[q].std_error, stats[q - 1].std_error);
      CHECK(stats[q].mean >= stats[q - 1].mean - 3 * sigma);
    }
  }
}
