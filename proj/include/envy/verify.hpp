#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "envy/distributions.hpp"

namespace envy {

struct CheckResult {
  std::string name;
  bool passed;
  /// Informational checks are reported but never fail the suite.
  bool gating = true;
  std::string detail;
};

struct SmallInstance {
  std::vector<ArmDistribution> arms;
  std::size_t n_agents;
};

/// Deterministic grid of finite-support instances with N in [2, 4], K in
/// [2, 4] and at most 3 support points per arm. With `bernoulli_only`, every
/// arm is Bernoulli.
std::vector<SmallInstance> small_instance_grid(bool bernoulli_only = false);

/// Gold replay: three injected rounds with fixed orders under the
/// threshold-1/2 policy. Returns (R_1, R_2, E^3).
struct ReplayResult {
  double r1;
  double r2;
  double envy;
};
ReplayResult replay_gold();

/// Exact and analytic checks; no Monte Carlo beyond a few seconds.
std::vector<CheckResult> run_verify_suite();

/// One line per check; returns true when every gating check passed.
bool print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace envy
