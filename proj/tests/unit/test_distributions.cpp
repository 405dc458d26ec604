#include "doctest.h"

#include <cmath>

#include "envy/distributions.hpp"
#include "envy/rng.hpp"
#include "generators.hpp"

using namespace envy;

TEST_CASE("mean of each law") {
  CHECK(ArmDistribution::bernoulli(0.6).mean() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(ArmDistribution::uniform(0, 1).mean() == 0.5);
  CHECK(std::abs(ArmDistribution::discrete({0.55, 0.75}, {0.5, 0.5}).mean() - 0.65) < 1e-12);
}

TEST_CASE("prob_below is strict") {
  CHECK(std::abs(ArmDistribution::discrete({0, 1}, {0.4, 0.6}).prob_below(0.65) - 0.4) < 1e-12);
  CHECK(ArmDistribution::uniform(0, 1).prob_below(0.5) == doctest::Approx(0.5));
  CHECK(ArmDistribution::bernoulli(0.3).prob_below(0.0) == 0.0);
  CHECK(ArmDistribution::bernoulli(0.3).prob_below(1.0) == doctest::Approx(0.7));
}

TEST_CASE("expected_max_with_constant examples") {
  CHECK(std::abs(ArmDistribution::uniform(0, 1).expected_max_with_constant(0.5) - 0.625) < 1e-12);
  CHECK(std::abs(ArmDistribution::bernoulli(0.6).expected_max_with_constant(0.65) - 0.86) < 1e-12);
  CHECK(ArmDistribution::uniform(0, 1).expected_max_with_constant(1.0) == doctest::Approx(1.0));
  CHECK(ArmDistribution::bernoulli(0.4).expected_max_with_constant(1.0) == doctest::Approx(1.0));
  // Ties count toward X: X == c contributes c either way, value unchanged.
  CHECK(std::abs(ArmDistribution::discrete({0.5, 1}, {0.5, 0.5}).expected_max_with_constant(0.5) - 0.75) < 1e-12);
}

TEST_CASE("sampling degenerate Bernoulli") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(ArmDistribution::bernoulli(1.0).sample(rng) == 1.0);
    CHECK(ArmDistribution::bernoulli(0.0).sample(rng) == 0.0);
  }
}

TEST_CASE("uniform sample mean over 10^6 draws") {
  Rng rng(7);
  const auto u = ArmDistribution::uniform(0, 1);
  double s = 0.0;
  for (int i = 0; i < 1'000'000; ++i) s += u.sample(rng);
  CHECK(std::abs(s / 1e6 - 0.5) < 0.002);
}

TEST_CASE("support queries") {
  CHECK(*ArmDistribution::bernoulli(0.3).support() == std::vector<double>{0, 1});
  CHECK(*ArmDistribution::discrete({1, 0.25}, {0.5, 0.5}).support() == std::vector<double>{0.25, 1});
  CHECK_FALSE(ArmDistribution::uniform(0, 1).support().has_value());
}

TEST_CASE("discrete merges repeated values and rejects bad input") {
  const auto d = ArmDistribution::discrete({0.5, 0.2, 0.5}, {0.25, 0.5, 0.25});
  CHECK(*d.support() == std::vector<double>{0.2, 0.5});
  CHECK((*d.support_probs())[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(ArmDistribution::discrete({0.1, 0.2}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ArmDistribution::discrete({0.1, 1.2}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(ArmDistribution::bernoulli(1.5), std::invalid_argument);
  CHECK_THROWS_AS(ArmDistribution::uniform(0.6, 0.4), std::invalid_argument);
}

TEST_CASE("json round trip") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto d = gen::any_arm(rng);
    CHECK(distribution_from_json(to_json(d)) == d);
  }
  CHECK(distribution_from_json({{"kind", "bernoulli"}, {"p", 0.6}}) == ArmDistribution::bernoulli(0.6));
}

TEST_CASE("property: E[max(X, c)] >= max(mean, c), equality iff support one-sided") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto d = gen::finite_arm(rng);
    const double c = gen::grid_reward(rng, 20);
    const double e = d.expected_max_with_constant(c);
    CHECK(e >= std::max(d.mean(), c) - 1e-12);
    const auto s = *d.support();
    const auto p = *d.support_probs();
    double lo = 2.0, hi = -1.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (p[k] > 0.0) lo = std::min(lo, s[k]), hi = std::max(hi, s[k]);
    }
    const bool one_sided = lo >= c || hi <= c;
    CHECK((std::abs(e - std::max(d.mean(), c)) < 1e-12) == one_sided);
  }
}

TEST_CASE("property: expected_max_with_constant equals an explicit support sum") {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto d = gen::finite_arm(rng);
    const double c = rng.uniform();
    const auto s = *d.support();
    const auto p = *d.support_probs();
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) sum += p[k] * (s[k] >= c ? s[k] : c);
    CHECK(std::abs(d.expected_max_with_constant(c) - sum) < 1e-12);
  }
}

TEST_CASE("property: prob_below monotone with 0 and 1 at the ends") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen::any_arm(rng);
    double prev = -1.0;
    for (int k = -2; k <= 22; ++k) {
      const double p = d.prob_below(k / 20.0);
      CHECK(p >= prev - 1e-15);
      prev = p;
    }
    CHECK(d.prob_below(-0.01) == 0.0);
    CHECK(d.prob_below(1.01) == doctest::Approx(1.0));
  }
}

TEST_CASE("property: sample moments converge (5 sigma)") {
  Rng gen_rng(14);
  Rng rng(15);
  const int n = 1'000'000;
  for (int i = 0; i < 4; ++i) {
    const auto d = gen::any_arm(gen_rng);
    double s = 0.0, s2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = d.sample(rng);
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    const double sd = std::sqrt(d.variance());
    CHECK(std::abs(mean - d.mean()) <= 5 * sd / std::sqrt(n) + 1e-12);
    // Var of the sample variance is bounded by E[(X - mu)^4] / n <= sd^2 / n on [0, 1].
    CHECK(std::abs(var - d.variance()) <= 5 * sd / std::sqrt(n) + 1e-12);
  }
}
