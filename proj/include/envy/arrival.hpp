#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "envy/rng.hpp"
#include "json.hpp"

namespace envy {

/// A permutation of 0-based agent ids. perm[q] is the agent in position q.
using Permutation = std::vector<std::size_t>;

bool is_permutation(std::span<const std::size_t> perm);

/// Arrival order of one round: agent_at(q) arrives in session q.
class ArrivalOrder {
 public:
  /// Throws std::invalid_argument unless eta is a bijection on [0, N).
  explicit ArrivalOrder(Permutation eta);
  static ArrivalOrder identity(std::size_t n_agents);

  std::size_t size() const { return eta_.size(); }
  std::size_t agent_at(std::size_t session) const { return eta_[session]; }
  std::size_t session_of(std::size_t agent) const { return inverse_[agent]; }
  const Permutation& agents() const { return eta_; }

  friend bool operator==(const ArrivalOrder&, const ArrivalOrder&) = default;

 private:
  Permutation eta_;
  Permutation inverse_;
};

/// Uniform over all N! orders (Fisher-Yates).
ArrivalOrder uniform_order(std::size_t n_agents, Rng& rng);

/// Agents by descending cumulative reward, ties by ascending id.
Permutation ideal_permutation(std::span<const double> cumulative);

/// Poorest agent first, richest last; ties by ascending id.
ArrivalOrder adversarial_order(std::span<const double> cumulative);

/// Stochastic ranking models that realize a nudge toward a reference order.
struct NudgeModel {
  enum class Kind { kMallows, kPlackettLuce, kThurstone };

  Kind kind = Kind::kPlackettLuce;
  double beta = 0.0;   // Mallows concentration
  double delta = 0.5;  // Plackett-Luce / Thurstone bias
  double s = 1.0;      // Thurstone latent standard deviation

  static NudgeModel mallows(double beta);
  /// Mallows with the concentration whose implied bias equals delta.
  static NudgeModel mallows_for_delta(double delta);
  static NudgeModel plackett_luce(double delta);
  static NudgeModel thurstone(double s, double delta);

  /// Guaranteed lower bound on P(sigma-earlier agent arrives first) - 1/2,
  /// doubled: the bias the model delivers for the tightest pair.
  double implied_delta() const;
  std::string name() const;
};

/// Samples an arrival order biased toward sigma.
ArrivalOrder nudged_order(std::span<const std::size_t> sigma, const NudgeModel& model,
                          Rng& rng);

/// The mechanism that produces eta_t each round from R^{t-1}.
class ArrivalFunction {
 public:
  virtual ~ArrivalFunction() = default;
  virtual ArrivalOrder next(std::span<const double> cumulative, Rng& rng) const = 0;
  virtual std::string name() const = 0;
};

class UniformArrival final : public ArrivalFunction {
 public:
  ArrivalOrder next(std::span<const double> cumulative, Rng& rng) const override;
  std::string name() const override { return "uniform"; }
};

class NudgedArrival final : public ArrivalFunction {
 public:
  explicit NudgedArrival(NudgeModel model) : model_(model) {}
  ArrivalOrder next(std::span<const double> cumulative, Rng& rng) const override;
  std::string name() const override { return "nudged/" + model_.name(); }
  const NudgeModel& model() const { return model_; }

 private:
  NudgeModel model_;
};

class AdversarialArrival final : public ArrivalFunction {
 public:
  ArrivalOrder next(std::span<const double> cumulative, Rng& rng) const override;
  std::string name() const override { return "adversarial"; }
};

/// Replays a fixed list of orders, cycling when exhausted.
class ScriptedArrival final : public ArrivalFunction {
 public:
  explicit ScriptedArrival(std::vector<ArrivalOrder> orders);
  ArrivalOrder next(std::span<const double> cumulative, Rng& rng) const override;
  std::string name() const override { return "scripted"; }

 private:
  std::vector<ArrivalOrder> orders_;
  mutable std::size_t cursor_ = 0;
};

/// {"arrival":"uniform"} | {"arrival":"nudged","model":"mallows","beta":1.1} |
/// {"arrival":"nudged","model":"plackett_luce","delta":0.5} |
/// {"arrival":"nudged","model":"thurstone","s":1.0,"delta":0.5} |
/// {"arrival":"adversarial"}
std::unique_ptr<ArrivalFunction> arrival_from_json(const nlohmann::json& j);
nlohmann::json arrival_to_json(const ArrivalFunction& arrival);

}  // namespace envy
