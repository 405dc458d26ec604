#include "envy/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace envy {

bool is_permutation(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t x : perm) {
    if (x >= perm.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

ArrivalOrder::ArrivalOrder(Permutation eta) : eta_(std::move(eta)), inverse_(eta_.size()) {
  if (!is_permutation(eta_)) throw std::invalid_argument("arrival order is not a permutation");
  for (std::size_t q = 0; q < eta_.size(); ++q) inverse_[eta_[q]] = q;
}

ArrivalOrder ArrivalOrder::identity(std::size_t n_agents) {
  Permutation eta(n_agents);
  std::iota(eta.begin(), eta.end(), 0);
  return ArrivalOrder(std::move(eta));
}

ArrivalOrder uniform_order(std::size_t n_agents, Rng& rng) {
  Permutation eta(n_agents);
  std::iota(eta.begin(), eta.end(), 0);
  for (std::size_t i = n_agents; i > 1; --i) {
    std::swap(eta[i - 1], eta[rng.below(i)]);
  }
  return ArrivalOrder(std::move(eta));
}

Permutation ideal_permutation(std::span<const double> cumulative) {
  Permutation sigma(cumulative.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::stable_sort(sigma.begin(), sigma.end(), [&](std::size_t a, std::size_t b) {
    return cumulative[a] > cumulative[b];
  });
  return sigma;
}

ArrivalOrder adversarial_order(std::span<const double> cumulative) {
  Permutation eta(cumulative.size());
  std::iota(eta.begin(), eta.end(), 0);
  std::stable_sort(eta.begin(), eta.end(), [&](std::size_t a, std::size_t b) {
    return cumulative[a] < cumulative[b];
  });
  return ArrivalOrder(std::move(eta));
}

NudgeModel NudgeModel::mallows(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("Mallows concentration must be finite and >= 0");
  }
  NudgeModel m;
  m.kind = Kind::kMallows;
  m.beta = beta;
  m.delta = std::tanh(beta / 2.0);
  return m;
}

NudgeModel NudgeModel::mallows_for_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in [0,1)");
  // (1 - e^-b) / (1 + e^-b) = delta  <=>  b = ln((1 + delta) / (1 - delta)).
  return mallows(std::log((1.0 + delta) / (1.0 - delta)));
}

NudgeModel NudgeModel::plackett_luce(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  NudgeModel m;
  m.kind = Kind::kPlackettLuce;
  m.delta = delta;
  return m;
}

NudgeModel NudgeModel::thurstone(double s, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("Thurstone s must be > 0");
  NudgeModel m;
  m.kind = Kind::kThurstone;
  m.s = s;
  m.delta = delta;
  return m;
}

double NudgeModel::implied_delta() const {
  switch (kind) {
    case Kind::kMallows: {
      const double phi = std::exp(-beta);
      return (1.0 - phi) / (1.0 + phi);
    }
    case Kind::kPlackettLuce:
    case Kind::kThurstone:
      return delta;
  }
  return delta;
}

std::string NudgeModel::name() const {
  switch (kind) {
    case Kind::kMallows:
      return "mallows";
    case Kind::kPlackettLuce:
      return "plackett_luce";
    case Kind::kThurstone:
      return "thurstone";
  }
  return "unknown";
}

namespace {

// Repeated insertion: the i-th reference item lands at slot j in [0, i] with
// weight phi^(i - j), i.e. one factor phi per inversion it creates.
Permutation sample_mallows(std::span<const std::size_t> sigma, double beta, Rng& rng) {
  const double phi = std::exp(-beta);
  Permutation out;
  out.reserve(sigma.size());
  std::vector<double> weights;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    weights.assign(i + 1, 0.0);
    double total = 0.0;
    double w = 1.0;
    for (std::size_t j = i + 1; j-- > 0;) {
      weights[j] = w;
      total += w;
      w *= phi;
    }
    double x = rng.uniform() * total;
    std::size_t slot = i;
    for (std::size_t j = 0; j <= i; ++j) {
      if (x < weights[j]) {
        slot = j;
        break;
      }
      x -= weights[j];
    }
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(slot), sigma[i]);
  }
  return out;
}

// Position i of sigma carries weight ratio^-i, ratio = (1+delta)/(1-delta), so
// adjacent positions win their pairwise contest with probability (1+delta)/2.
Permutation sample_plackett_luce(std::span<const std::size_t> sigma, double delta, Rng& rng) {
  const double ratio = (1.0 + delta) / (1.0 - delta);
  std::vector<double> weights(sigma.size());
  double w = 1.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    weights[i] = w;
    w /= ratio;
  }
  std::vector<std::size_t> remaining(sigma.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  Permutation out;
  out.reserve(sigma.size());
  while (!remaining.empty()) {
    double total = 0.0;
    for (std::size_t pos : remaining) total += weights[pos];
    double x = rng.uniform() * total;
    std::size_t pick = remaining.size() - 1;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (x < weights[remaining[k]]) {
        pick = k;
        break;
      }
      x -= weights[remaining[k]];
    }
    out.push_back(sigma[remaining[pick]]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

// Latent value of position i is Normal(-i * shift, s^2); shift makes each
// adjacent pair correctly ordered with probability (1+delta)/2.
Permutation sample_thurstone(std::span<const std::size_t> sigma, double s, double delta,
                             Rng& rng) {
  const boost::math::normal_distribution<double> standard;
  const double shift = std::sqrt(2.0) * s * boost::math::quantile(standard, 0.5 * (1.0 + delta));
  std::vector<double> latent(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    latent[i] = rng.normal(-static_cast<double>(i) * shift, s);
  }
  std::vector<std::size_t> pos(sigma.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::stable_sort(pos.begin(), pos.end(),
                   [&](std::size_t a, std::size_t b) { return latent[a] > latent[b]; });
  Permutation out(sigma.size());
  for (std::size_t k = 0; k < pos.size(); ++k) out[k] = sigma[pos[k]];
  return out;
}

}  // namespace

ArrivalOrder nudged_order(std::span<const std::size_t> sigma, const NudgeModel& model,
                          Rng& rng) {
  if (!is_permutation(sigma)) throw std::invalid_argument("sigma is not a permutation");
  switch (model.kind) {
    case NudgeModel::Kind::kMallows:
      return ArrivalOrder(sample_mallows(sigma, model.beta, rng));
    case NudgeModel::Kind::kPlackettLuce:
      return ArrivalOrder(sample_plackett_luce(sigma, model.delta, rng));
    case NudgeModel::Kind::kThurstone:
      return ArrivalOrder(sample_thurstone(sigma, model.s, model.delta, rng));
  }
  throw std::logic_error("unhandled nudge model");
}

ArrivalOrder UniformArrival::next(std::span<const double> cumulative, Rng& rng) const {
  return uniform_order(cumulative.size(), rng);
}

ArrivalOrder NudgedArrival::next(std::span<const double> cumulative, Rng& rng) const {
  const Permutation sigma = ideal_permutation(cumulative);
  return nudged_order(sigma, model_, rng);
}

ArrivalOrder AdversarialArrival::next(std::span<const double> cumulative, Rng&) const {
  return adversarial_order(cumulative);
}

ScriptedArrival::ScriptedArrival(std::vector<ArrivalOrder> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("scripted arrival needs at least one order");
}

ArrivalOrder ScriptedArrival::next(std::span<const double> cumulative, Rng&) const {
  const ArrivalOrder& order = orders_[cursor_ % orders_.size()];
  ++cursor_;
  if (order.size() != cumulative.size()) {
    throw std::invalid_argument("scripted order length does not match agent count");
  }
  return order;
}

std::unique_ptr<ArrivalFunction> arrival_from_json(const nlohmann::json& j) {
  const auto kind = j.at("arrival").get<std::string>();
  if (kind == "uniform") return std::make_unique<UniformArrival>();
  if (kind == "adversarial") return std::make_unique<AdversarialArrival>();
  if (kind == "nudged") {
    const auto model = j.value("model", std::string("plackett_luce"));
    if (model == "mallows") {
      if (j.contains("beta")) {
        return std::make_unique<NudgedArrival>(NudgeModel::mallows(j.at("beta").get<double>()));
      }
      return std::make_unique<NudgedArrival>(
          NudgeModel::mallows_for_delta(j.at("delta").get<double>()));
    }
    if (model == "plackett_luce") {
      return std::make_unique<NudgedArrival>(
          NudgeModel::plackett_luce(j.value("delta", 0.5)));
    }
    if (model == "thurstone") {
      return std::make_unique<NudgedArrival>(
          NudgeModel::thurstone(j.value("s", 1.0), j.value("delta", 0.5)));
    }
    throw std::invalid_argument("unknown nudge model: " + model);
  }
  throw std::invalid_argument("unknown arrival: " + kind);
}

nlohmann::json arrival_to_json(const ArrivalFunction& arrival) {
  if (const auto* n = dynamic_cast<const NudgedArrival*>(&arrival)) {
    const NudgeModel& m = n->model();
    switch (m.kind) {
      case NudgeModel::Kind::kMallows:
        return {{"arrival", "nudged"}, {"model", "mallows"}, {"beta", m.beta}};
      case NudgeModel::Kind::kPlackettLuce:
        return {{"arrival", "nudged"}, {"model", "plackett_luce"}, {"delta", m.delta}};
      case NudgeModel::Kind::kThurstone:
        return {{"arrival", "nudged"}, {"model", "thurstone"}, {"s", m.s}, {"delta", m.delta}};
    }
  }
  return {{"arrival", arrival.name()}};
}

}  // namespace envy
