// Acceptance suite: one PASS/FAIL line per criterion. Criterion 13 is
// reported but does not affect the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "envy/arrival.hpp"
#include "envy/distributions.hpp"
#include "envy/engine.hpp"
#include "envy/harness.hpp"
#include "envy/metrics.hpp"
#include "envy/policies.hpp"
#include "envy/presets.hpp"
#include "envy/verify.hpp"

using namespace envy;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SimConfig config(const std::string& preset, const json& arrival, std::size_t T, std::size_t n,
                 std::size_t reps, std::uint64_t seed, json policy = nullptr) {
  SimConfig c;
  c.instance = {{"preset", preset}};
  c.policy = std::move(policy);
  c.arrival = arrival;
  c.horizon = T;
  c.n_agents = n;
  c.replications = reps;
  c.seed = seed;
  return c;
}

const json kUniform = {{"arrival", "uniform"}};
const json kAdversarial = {{"arrival", "adversarial"}};
const json kNudged = {{"arrival", "nudged"}, {"model", "plackett_luce"}, {"delta", 0.5}};

Outcome c1_gold_replay() {
  const auto t0 = std::chrono::steady_clock::now();
  const ReplayResult r = replay_gold();
  const double secs = seconds_since(t0);
  const bool ok = std::abs(r.r1 - 1.88) <= 1e-12 && std::abs(r.r2 - 0.85) <= 1e-12 &&
                  std::abs(r.envy - 1.03) <= 1e-12 && secs < 1.0;
  return {ok, "R3 = (" + fmt(r.r1, 15) + ", " + fmt(r.r2, 15) + "), E3 = " + fmt(r.envy, 15) + ", " +
                  fmt(secs, 3) + " s"};
}

/// Example-1 instance under uniform arrival for 10^6 rounds; collects the
/// second-session reward, welfare and the pair discrepancy.
struct Example1Samples {
  double second_mean;
  double welfare_mean;
  std::vector<double> delta;
};

const Example1Samples& example1_samples() {
  static const Example1Samples samples = [] {
    const std::size_t T = 1'000'000;
    const Preset p = make_preset("example1", 2, T);
    const ThresholdExploreFirst alg1({0, 1}, 0.5);
    TrajectoryStreams streams(101, 0);
    double second = 0.0;
    const auto res = run_simulation(p.instance, alg1, UniformArrival{}, streams, {},
                                    [&](const RoundRealization&, const ArrivalOrder&, const RoundOutcome& o) {
                                      second += o.session_rewards[1];
                                    });
    Example1Samples s{second / T, res.ledger.total_welfare(T) / T, {}};
    s.delta.reserve(T);
    for (std::size_t t = 1; t <= T; ++t) s.delta.push_back(res.ledger.pair_discrepancy(t));
    return s;
  }();
  return samples;
}

Outcome c2_information_value() {
  const auto& s = example1_samples();
  const double exact = ArmDistribution::uniform(0, 1).expected_max_with_constant(0.5);
  const bool ok = std::abs(s.second_mean - 0.625) <= 0.005 && std::abs(s.welfare_mean - 1.125) <= 0.005 &&
                  std::abs(exact - 0.625) <= 1e-12;
  return {ok, "E[r_(2)] = " + fmt(s.second_mean) + ", welfare = " + fmt(s.welfare_mean) + ", exact = " + fmt(exact, 15)};
}

Outcome c3_discrepancy_variance() {
  const double var = estimate_var_delta(example1_samples().delta);
  // The threshold uses the analytic per-round variance 1/12 that the
  // empirical estimate is checked against.
  std::size_t first_true = 0;
  bool iff = true;
  for (std::size_t T = 1; T <= 1000; ++T) {
    const bool s = sufficiently_random(std::vector<double>(T, 1.0 / 12.0)).sufficient;
    if (s && first_true == 0) first_true = T;
    iff = iff && (s == (T >= 144));
  }
  const bool ok = std::abs(var - 1.0 / 12.0) <= 0.003 && iff;
  return {ok, "Var = " + fmt(var) + " (1/12 = " + fmt(1.0 / 12.0) + "), sufficiently random from T = " +
                  std::to_string(first_true) + ", empirical-variance threshold T >= " +
                  fmt(std::ceil(1.0 / (var * var)))};
}

Outcome c4_two_opt() {
  const Preset p = make_preset("prop_is", 2, 1);
  double s12 = NAN, s21 = NAN;
  for (const auto& ps : TwoOptPolicy::score_pairs(p.instance.arms)) {
    if (ps.scout == 0 && ps.fallback == 1) s12 = ps.score;
    if (ps.scout == 1 && ps.fallback == 0) s21 = ps.score;
  }
  const TwoOptPolicy t(p.instance.arms, 2);
  const bool ok = std::abs(s12 - 1.325) <= 1e-12 && std::abs(s21 - 1.46) <= 1e-12 && t.scout() == 1 && t.fallback() == 0;
  return {ok, "scores (1,2) = " + fmt(s12, 15) + ", (2,1) = " + fmt(s21, 15) + ", (i*, j*) = (" +
                  std::to_string(t.scout() + 1) + ", " + std::to_string(t.fallback() + 1) + ")"};
}

struct EfcRun {
  double worst_envy = 0.0;
  double welfare_mean = 0.0;
  double welfare_sem = 0.0;
  double seconds = 0.0;
};

EfcRun run_efc(double c, std::size_t reps, std::size_t T, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const Preset p = make_preset("example1", 2, T);
  const EfcPolicy efc(c, 2, 2);
  EfcRun out;
  double s = 0.0, s2 = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    TrajectoryStreams streams(seed, r);
    const auto res = run_simulation(p.instance, efc, UniformArrival{}, streams);
    out.worst_envy = std::max(out.worst_envy, res.ledger.running_max_envy(T));
    const double w = res.ledger.total_welfare(T) / static_cast<double>(T);
    s += w;
    s2 += w * w;
  }
  out.welfare_mean = s / reps;
  out.welfare_sem = std::sqrt(std::max(0.0, (s2 / reps - out.welfare_mean * out.welfare_mean) / (reps - 1.0)));
  out.seconds = seconds_since(t0);
  return out;
}

const EfcRun& efc_c1() {
  static const EfcRun run = run_efc(1.0, 1000, 10000, 501);
  return run;
}

Outcome c5_efc_cap() {
  bool ok = true;
  std::string detail;
  for (double c : {1.0, 2.0, 5.0}) {
    const EfcRun r = c == 1.0 ? efc_c1() : run_efc(c, 1000, 10000, 500 + static_cast<std::uint64_t>(c));
    ok = ok && r.worst_envy <= c + 1e-9;
    detail += "C=" + fmt(c) + ": max E^t = " + fmt(r.worst_envy) + "; ";
  }
  return {ok, detail};
}

Outcome c6_ef1_welfare() {
  const EfcRun& r = efc_c1();
  const bool ok = r.welfare_mean >= 1.0625 - 0.003 && r.seconds < 120.0;
  return {ok, "mean welfare = " + fmt(r.welfare_mean) + " (sem " + fmt(r.welfare_sem, 3) + "), " +
                  fmt(r.seconds, 3) + " s"};
}

Outcome c7_growth() {
  const std::size_t T = 5000;
  const auto uni = run_replications(config("I_U", kUniform, T, 2, 200, 701));
  const auto adv = run_replications(config("I_U", kAdversarial, T, 2, 200, 702));
  SimConfig nc = config("I_U", kNudged, T, 2, 200, 703);
  nc.checkpoints = {1000, T};
  const auto ndg = run_replications(nc);
  const double ratio = ndg.checkpoints[1].max_envy.mean / ndg.checkpoints[0].max_envy.mean;
  const bool ok = uni.fits.sqrt.residual < uni.fits.linear.residual &&
                  adv.fits.linear.residual < adv.fits.sqrt.residual && ratio <= 1.5 && ratio >= 1.0 / 1.5;
  return {ok, "uniform res lin/sqrt = " + fmt(uni.fits.linear.residual, 4) + "/" + fmt(uni.fits.sqrt.residual, 4) +
                  ", adversarial res lin/sqrt = " + fmt(adv.fits.linear.residual, 4) + "/" +
                  fmt(adv.fits.sqrt.residual, 4) + ", nudged E(5000)/E(1000) = " + fmt(ratio, 4)};
}

Outcome c8_agent_count() {
  const std::size_t T = 2000;
  const std::vector<std::size_t> ns{2, 6, 12, 20};
  std::vector<Moments> uni, ndg;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    SimConfig u = config("I_B", kUniform, T, ns[i], 200, 800 + i);
    u.checkpoints = {T};
    uni.push_back(run_replications(u).checkpoints.back().max_envy);
    SimConfig n = config("I_B", kNudged, T, ns[i], 200, 810 + i);
    n.checkpoints = {T};
    ndg.push_back(run_replications(n).checkpoints.back().max_envy);
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (uni[i].mean > uni[peak].mean) peak = i;
  }
  const bool non_monotone = peak > 0 && peak + 1 < ns.size();
  const bool declines = uni.back().mean <= 0.9 * uni[peak].mean;
  bool nudged_up = true;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    nudged_up = nudged_up && ndg[i].mean >= ndg[i - 1].mean - 3 * std::hypot(ndg[i].sem, ndg[i - 1].sem);
  }
  std::string detail = "uniform E^T:";
  for (const auto& m : uni) detail += " " + fmt(m.mean, 4);
  detail += "; nudged E^T:";
  for (const auto& m : ndg) detail += " " + fmt(m.mean, 4);
  return {non_monotone && declines && nudged_up, detail + " (N = 2, 6, 12, 20)"};
}

Outcome c9_property1() {
  Rng rng(901);
  const std::size_t n = 5;
  const int samples = 100000;
  const Permutation sigma{3, 0, 4, 1, 2};
  double worst = 1.0;
  std::string detail;
  for (const auto& model :
       {NudgeModel::mallows_for_delta(0.5), NudgeModel::plackett_luce(0.5), NudgeModel::thurstone(1.0, 0.5)}) {
    std::vector<int> before(n * n, 0);
    for (int s = 0; s < samples; ++s) {
      const ArrivalOrder eta = nudged_order(sigma, model, rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) before[i * n + j] += eta.session_of(sigma[i]) < eta.session_of(sigma[j]);
    }
    double model_min = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) model_min = std::min(model_min, before[i * n + j] / double(samples));
    worst = std::min(worst, model_min);
    detail += model.name() + " min " + fmt(model_min, 4) + "; ";
  }
  return {worst >= 0.75 - 0.02, detail};
}

Outcome from_check(const CheckResult& c) { return {c.passed, c.detail}; }

Outcome c10_dp_exactness() {
  for (const auto& c : run_verify_suite()) {
    if (c.name == "dp_matches_oracle") return from_check(c);
  }
  return {false, "check missing"};
}

Outcome c11_pandora() {
  for (const auto& c : run_verify_suite()) {
    if (c.name == "pandora_is_optimal_on_bernoulli") return from_check(c);
  }
  return {false, "check missing"};
}

Outcome c12_martingale() {
  SimConfig c = config("I_U", kUniform, 1000, 2, 10000, 1201);
  c.checkpoints = {1, 100, 1000};
  const auto s = run_replications(c);
  bool ok = true;
  std::string detail;
  for (const auto& cp : s.checkpoints) {
    ok = ok && std::abs(cp.delta.mean) <= 3 * cp.delta.sem && std::abs(cp.pair_envy.mean) <= 3 * cp.pair_envy.sem;
    detail += "t=" + std::to_string(cp.t) + ": mean Delta = " + fmt(cp.delta.mean, 3) + " (3 sem " +
              fmt(3 * cp.delta.sem, 3) + "), mean E_1N = " + fmt(cp.pair_envy.mean, 3) + " (3 sem " +
              fmt(3 * cp.pair_envy.sem, 3) + "); ";
  }
  return {ok, detail};
}

Outcome c13_efc_welfare() {
  bool ok = true;
  std::string detail;
  for (double c : {2.0, 4.0, 10.0}) {
    const EfcRun r = run_efc(c, 500, 10000, 1300 + static_cast<std::uint64_t>(c));
    const double bound = 1.0 + 1.0 / 8.0 - 1.0 / (16.0 * c);
    ok = ok && r.welfare_mean >= bound - 0.005;
    detail += "C=" + fmt(c) + ": " + fmt(r.welfare_mean) + " vs " + fmt(bound) + "; ";
  }
  return {ok, detail};
}

Outcome c14_bounds() {
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 1400;
  for (std::size_t n : {2u, 4u, 8u}) {
    for (std::size_t k : {2u, 3u, 4u}) {
      std::vector<std::size_t> order(k);
      for (std::size_t a = 0; a < k; ++a) order[a] = a;
      json arms = json::array();
      for (std::size_t a = 0; a < k; ++a) arms.push_back({{"kind", "uniform"}, {"lo", 0}, {"hi", 1}});
      SimConfig c;
      c.instance = {{"arms", arms}};
      c.policy = {{"policy", "threshold"}, {"order", order}, {"theta", 0.75}};
      c.horizon = 1000;
      c.n_agents = n;
      c.replications = 400;
      c.seed = ++seed;
      c.n_checkpoints = c.horizon;
      const auto s = run_replications(c);

      // Var(Delta^t) per round against the explore-first bound.
      const double bound_var = bound_explore_first_var(n, k);
      double var_sum = 0.0, worst_excess = -1.0;
      const double reps = static_cast<double>(c.replications);
      for (const auto& cp : s.checkpoints) {
        const double v = cp.delta.std * cp.delta.std;
        // Normal-theory sd of a sample variance, doubled to allow for kurtosis.
        const double sigma = std::sqrt(2.0 / (reps - 1.0)) * std::max(v, 1e-12) * 2.0;
        worst_excess = std::max(worst_excess, v - (bound_var + 3 * sigma));
        var_sum += v;
      }
      const Moments& running = s.checkpoints.back().running_max;
      const double bound_max = bound_uniform_upper(n, var_sum);
      const bool cell = worst_excess <= 0.0 && running.mean <= bound_max + 3 * running.sem;
      ok = ok && cell;
      detail += "N" + std::to_string(n) + "K" + std::to_string(k) + " maxVar " +
                fmt(bound_var + worst_excess, 3) + "/" + fmt(bound_var, 3) + " E[max E] " + fmt(running.mean, 4) +
                "/" + fmt(bound_max, 4) + (cell ? "" : " FAIL") + "; ";
    }
  }
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    bool gating;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "gold replay", true, c1_gold_replay},
      {2, "information-exploitation value", true, c2_information_value},
      {3, "discrepancy variance", true, c3_discrepancy_variance},
      {4, "2OPT correctness", true, c4_two_opt},
      {5, "EFC hard envy cap", true, c5_efc_cap},
      {6, "EF1 welfare", true, c6_ef1_welfare},
      {7, "growth-rate discrimination", true, c7_growth},
      {8, "agent-count shape", true, c8_agent_count},
      {9, "precedence compliance", true, c9_property1},
      {10, "DP exactness", true, c10_dp_exactness},
      {11, "Pandora optimality", true, c11_pandora},
      {12, "martingale drift", true, c12_martingale},
      {13, "EFC welfare target (non-gating)", false, c13_efc_welfare},
      {14, "bound sanity", true, c14_bounds},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d: %s  %s  [%.1f s]  %s\n", c.id, o.passed ? "PASS" : "FAIL", c.name, seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
    if (c.gating && !o.passed) all = false;
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
