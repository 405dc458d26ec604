#include "envy/dp_optimal.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "envy/errors.hpp"

namespace envy {
namespace {

constexpr std::size_t kMaxArms = 20;
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 26;
constexpr double kTieTolerance = 1e-12;

}  // namespace

DpOptimal DpOptimal::solve(const std::vector<ArmDistribution>& arms, std::size_t n_agents) {
  if (arms.empty()) throw ConfigError("dp_optimal needs at least one arm");
  if (arms.size() > kMaxArms) {
    throw ConfigError("dp_optimal supports at most 20 arms, got " + std::to_string(arms.size()));
  }
  DpOptimal dp;
  dp.n_agents_ = n_agents;
  dp.n_arms_ = arms.size();
  dp.grid_.push_back(0.0);
  for (std::size_t a = 0; a < arms.size(); ++a) {
    const auto support = arms[a].support();
    if (!support) {
      throw ConfigError("dp_optimal needs finite supports; arm " + std::to_string(a) + " is " +
                        arms[a].describe() + " (discretize it first)");
    }
    dp.grid_.insert(dp.grid_.end(), support->begin(), support->end());
  }
  std::sort(dp.grid_.begin(), dp.grid_.end());
  dp.grid_.erase(std::unique(dp.grid_.begin(), dp.grid_.end()), dp.grid_.end());

  if (dp.state_bound() > kMaxTableEntries) {
    throw ConfigError("dp_optimal table of " + std::to_string(dp.state_bound()) +
                      " states exceeds the cap");
  }
  for (const auto& arm : arms) {
    const auto support = *arm.support();
    const auto probs = *arm.support_probs();
    std::vector<std::size_t> idx;
    for (double x : support) idx.push_back(dp.grid_index(x));
    dp.support_index_.push_back(std::move(idx));
    dp.support_prob_.push_back(probs);
  }
  const std::size_t size = dp.state_bound();
  dp.values_.assign(size, 0.0);
  dp.actions_.assign(size, kStop);
  dp.done_.assign(size, 0);

  dp.evaluate(n_agents, dp.full_mask(), 0);
  dp.visited_ = static_cast<std::size_t>(std::count(dp.done_.begin(), dp.done_.end(), 1));

  // Fill the states the recursion never touched (e.g. after stopping early) so
  // the extracted policy can query any state.
  for (std::size_t n = 0; n <= n_agents; ++n) {
    for (std::uint32_t mask = 0; mask <= dp.full_mask(); ++mask) {
      for (std::size_t vi = 0; vi < dp.grid_.size(); ++vi) dp.evaluate(n, mask, vi);
    }
  }
  return dp;
}

double DpOptimal::evaluate(std::size_t n, std::uint32_t mask, std::size_t vi) {
  const std::size_t s = slot(n, mask, vi);
  if (done_[s]) return values_[s];
  const double v = grid_[vi];
  double best = v * static_cast<double>(n);
  std::size_t best_action = kStop;
  if (n > 0) {
    for (std::size_t a = 0; a < n_arms_; ++a) {
      if (!(mask & (1u << a))) continue;
      const std::uint32_t rest = mask & ~(1u << a);
      double expect = 0.0;
      for (std::size_t k = 0; k < support_index_[a].size(); ++k) {
        const std::size_t xi = support_index_[a][k];
        expect += support_prob_[a][k] * (grid_[xi] + evaluate(n - 1, rest, std::max(vi, xi)));
      }
      if (expect > best + kTieTolerance) {
        best = expect;
        best_action = a;
      }
    }
  }
  values_[s] = best;
  actions_[s] = best_action;
  done_[s] = 1;
  return best;
}

std::size_t DpOptimal::grid_index(double v) const {
  const auto it = std::lower_bound(grid_.begin(), grid_.end(), v);
  if (it == grid_.end() || *it != v) {
    throw std::out_of_range("value " + std::to_string(v) + " is not on the DP grid");
  }
  return static_cast<std::size_t>(it - grid_.begin());
}

double DpOptimal::value(std::size_t n, std::uint32_t unopened, double v) const {
  if (n > n_agents_ || unopened > full_mask()) throw std::out_of_range("DP state out of range");
  return values_[slot(n, unopened, grid_index(v))];
}

std::size_t DpOptimal::action(std::size_t n, std::uint32_t unopened, double v) const {
  if (n > n_agents_ || unopened > full_mask()) throw std::out_of_range("DP state out of range");
  return actions_[slot(n, unopened, grid_index(v))];
}

}  // namespace envy
