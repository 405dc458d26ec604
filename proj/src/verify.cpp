#include "envy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>
#include <tuple>

#include "envy/dp_optimal.hpp"
#include "envy/engine.hpp"
#include "envy/fit.hpp"
#include "envy/metrics.hpp"
#include "envy/oracle.hpp"
#include "envy/policies.hpp"
#include "envy/presets.hpp"
#include "envy/rng.hpp"

namespace envy {

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(15);
  s << x;
  return s.str();
}

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

ArmDistribution random_arm(Rng& rng, bool bernoulli_only) {
  if (bernoulli_only || rng.below(3) == 0) {
    return ArmDistribution::bernoulli(0.05 * static_cast<double>(1 + rng.below(19)));
  }
  const std::size_t n = 1 + rng.below(3);
  std::vector<double> values;
  while (values.size() < n) {
    const double v = 0.05 * static_cast<double>(rng.below(21));
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  std::vector<double> weights(n);
  double total = 0.0;
  for (double& w : weights) total += (w = static_cast<double>(1 + rng.below(9)));
  std::vector<double> probs(n);
  double assigned = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) assigned += (probs[i] = weights[i] / total);
  probs[n - 1] = 1.0 - assigned;
  return ArmDistribution::discrete(values, probs);
}

CheckResult check_gold_replay() {
  const ReplayResult r = replay_gold();
  const bool ok = close(r.r1, 1.88) && close(r.r2, 0.85) && close(r.envy, 1.03);
  return {"gold_replay", ok, true,
          "R = (" + fmt(r.r1) + ", " + fmt(r.r2) + "), E^3 = " + fmt(r.envy)};
}

CheckResult check_example1_exact() {
  const auto u = ArmDistribution::uniform(0.0, 1.0);
  const double second = u.expected_max_with_constant(0.5);
  const double welfare = u.mean() + second;
  return {"example1_second_session_value", close(second, 0.625) && close(welfare, 1.125), true,
          "E[r_(2)] = " + fmt(second) + ", welfare = " + fmt(welfare)};
}

CheckResult check_sufficiently_random() {
  bool ok = true;
  for (std::size_t t : {100u, 143u, 144u, 145u, 1000u}) {
    const std::vector<double> v(t, 1.0 / 12.0);
    const bool expect = t >= 144;
    ok = ok && sufficiently_random(v).sufficient == expect;
  }
  return {"sufficiently_random_threshold_144", ok, true, "Var = 1/12 per round"};
}

CheckResult check_two_opt() {
  const Preset p = make_preset("prop_is", 2, 1);
  const auto pairs = TwoOptPolicy::score_pairs(p.instance.arms);
  const TwoOptPolicy policy(p.instance.arms, 2);
  double s12 = NAN, s21 = NAN;
  for (const auto& ps : pairs) {
    if (ps.scout == 0 && ps.fallback == 1) s12 = ps.score;
    if (ps.scout == 1 && ps.fallback == 0) s21 = ps.score;
  }
  const double exact = oracle::exact_round_welfare(p.instance, policy);
  const bool ok = close(s12, 1.325) && close(s21, 1.46) && policy.scout() == 1 &&
                  policy.fallback() == 0 && close(exact, 1.46);
  return {"two_opt_scores", ok, true,
          "scores (1,2) = " + fmt(s12) + ", (2,1) = " + fmt(s21) + ", exact welfare = " + fmt(exact)};
}

CheckResult check_dp_grid() {
  const auto grid = small_instance_grid();
  std::size_t bad = 0, bad_self = 0, bad_states = 0;
  double worst = 0.0;
  for (const auto& g : grid) {
    auto table = std::make_shared<const DpOptimal>(DpOptimal::solve(g.arms, g.n_agents));
    const double oracle_value = oracle::optimal_policy_value(g.arms, g.n_agents);
    worst = std::max(worst, std::abs(table->optimal_value() - oracle_value));
    if (!close(table->optimal_value(), oracle_value)) ++bad;
    Instance inst{g.arms, g.n_agents, 1, {}};
    const DpOptimalPolicy policy(table);
    if (!close(oracle::exact_round_welfare(inst, policy), table->optimal_value())) ++bad_self;
    if (table->visited_states() > table->state_bound()) ++bad_states;
  }
  return {"dp_matches_oracle", bad == 0 && bad_self == 0 && bad_states == 0 && grid.size() >= 50, true,
          std::to_string(grid.size()) + " instances, worst gap " + fmt(worst) + ", self-value misses " +
              std::to_string(bad_self) + ", state-bound misses " + std::to_string(bad_states)};
}

CheckResult check_pandora() {
  const auto grid = small_instance_grid(true);
  std::size_t bad = 0;
  for (const auto& g : grid) {
    Instance inst{g.arms, g.n_agents, 1, {}};
    const PandoraBernoulliPolicy policy(g.arms);
    const double dp = DpOptimal::solve(g.arms, g.n_agents).optimal_value();
    if (!close(dp, oracle::exact_round_welfare(inst, policy))) ++bad;
  }
  return {"pandora_is_optimal_on_bernoulli", bad == 0, true,
          std::to_string(grid.size()) + " instances, " + std::to_string(bad) + " mismatches"};
}

CheckResult check_ne_welfare() {
  const Preset p = make_preset("I_B", 3, 1);
  const NoEnvyPolicy ne(p.instance.arms);
  const double w = oracle::exact_round_welfare(p.instance, ne);
  return {"ne_welfare_is_n_times_best_mean", close(w, 3 * 0.6), true, "welfare = " + fmt(w)};
}

CheckResult check_bernoulli_series() {
  // Oracle vs the closed-form per-q series for K i.i.d. Bernoulli arms.
  std::ostringstream detail;
  bool all_match = true;
  for (const auto& [n, k, p] : {std::tuple{2u, 2u, 0.5}, std::tuple{3u, 2u, 0.5}, std::tuple{3u, 3u, 0.4}}) {
    Instance inst{std::vector<ArmDistribution>(k, ArmDistribution::bernoulli(p)), n, 1, {}};
    const PandoraBernoulliPolicy policy(inst.arms);
    const auto exact = oracle::exact_var_delta(inst, policy, 0, n - 1);
    const auto terms = oracle::iid_bernoulli_var_series_terms(p, k, n);
    double series = 0.0;
    for (double x : terms) series += x;
    detail << "N=" << n << " K=" << k << " p=" << p << ": oracle " << fmt(exact.variance) << ", series "
           << fmt(series) << " [";
    for (std::size_t q = 1; q <= k; ++q) {
      const double o = exact.second_moment_by_zero_count[q];
      detail << (q > 1 ? " " : "") << "q" << q << ":" << fmt(o) << "/" << fmt(terms[q - 1]);
      all_match = all_match && close(o, terms[q - 1]);
    }
    detail << "]; ";
  }
  return {"bernoulli_variance_series_vs_oracle", all_match, false, detail.str()};
}

CheckResult check_exact_var_small() {
  Instance inst{{ArmDistribution::bernoulli(0.5), ArmDistribution::bernoulli(0.5)}, 2, 1, {}};
  const PandoraBernoulliPolicy policy(inst.arms);
  const auto e = oracle::exact_var_delta(inst, policy, 0, 1);
  // Delta is nonzero only when the first arm shows 0 and the second 1.
  return {"exact_var_delta_two_bernoulli", close(e.variance, 0.25) && close(e.mean, 0.0), true,
          "Var = " + fmt(e.variance)};
}

CheckResult check_bounds() {
  const double t = 10000.0;
  bool ok = close(bound_explore_first_var(2, 2), 1.0) &&
            close(bound_nudged(2, 0.5, 0.25), 2.0 + 128.0 / (15.0 * 0.125), 1e-9) &&
            close(bound_adversarial(1.0 / std::sqrt(t), 10000), std::sqrt(t), 1e-9) &&
            close(bound_uniform_upper(2, 1.0), 2.0 * std::sqrt(std::log(2.0)));
  try {
    bound_nudged(2, 0.5, 0.0);
    ok = false;
  } catch (const std::domain_error&) {
  }
  return {"bound_formulas", ok, true, "bound_nudged(2, 0.5, 0.25) = " + fmt(bound_nudged(2, 0.5, 0.25))};
}

CheckResult check_fits() {
  std::vector<double> t, lin, sq;
  for (int i = 1; i <= 100; ++i) {
    t.push_back(i);
    lin.push_back(2.0 * i);
    sq.push_back(3.0 * std::sqrt(static_cast<double>(i)));
  }
  const auto a = fit_growth(t, lin, GrowthModel::kLinear);
  const auto b = fit_growth(t, sq, GrowthModel::kSqrt);
  const auto c = compare_models(t, std::vector<double>(t.begin(), t.end()));
  const bool ok = close(a.c, 2.0) && a.residual < 1e-12 && close(b.c, 3.0) && b.residual < 1e-12 &&
                  c.preferred == GrowthModel::kLinear;
  return {"growth_fits", ok, true, "linear c = " + fmt(a.c) + ", sqrt c = " + fmt(b.c)};
}

}  // namespace

std::vector<SmallInstance> small_instance_grid(bool bernoulli_only) {
  Rng rng(bernoulli_only ? 0xB0u : 0xD9u);
  std::vector<SmallInstance> out;
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 2; k <= 4; ++k) {
      for (int rep = 0; rep < 6; ++rep) {
        SmallInstance g{{}, n};
        for (std::size_t a = 0; a < k; ++a) g.arms.push_back(random_arm(rng, bernoulli_only));
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

ReplayResult replay_gold() {
  const Preset p = make_preset("example1", 2, 3);
  const ThresholdExploreFirst policy({0, 1}, 0.5);
  Simulator sim(p.instance, policy);
  const double rewards[3][2] = {{0.6, 0.92}, {0.48, 0.1}, {0.15, 0.8}};
  const ArrivalOrder orders[3] = {ArrivalOrder({1, 0}), ArrivalOrder({0, 1}), ArrivalOrder({1, 0})};
  for (std::size_t t = 0; t < 3; ++t) {
    RoundRealization r = inject_realization(p.instance, t + 1, {rewards[t][0], rewards[t][1]});
    sim.run_round(r, orders[t]);
  }
  const auto& ledger = sim.ledger();
  return {ledger.cumulative()[0], ledger.cumulative()[1], ledger.max_envy(3)};
}

std::vector<CheckResult> run_verify_suite() {
  return {check_gold_replay(),          check_example1_exact(), check_sufficiently_random(),
          check_two_opt(),         check_dp_grid(),        check_pandora(),
          check_ne_welfare(),      check_exact_var_small(), check_bernoulli_series(),
          check_bounds(),          check_fits()};
}

bool print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS" : "FAIL") << (c.gating ? "" : " (informational)") << "  " << c.name
        << "  " << c.detail << '\n';
    if (c.gating && !c.passed) ok = false;
  }
  return ok;
}

}  // namespace envy
