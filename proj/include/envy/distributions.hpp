#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "envy/rng.hpp"
#include "json.hpp"

namespace envy {

struct Bernoulli {
  double p;
};

struct UniformContinuous {
  double lo;
  double hi;
};

/// Finite law with strictly increasing support values.
struct FiniteDiscrete {
  std::vector<double> values;
  std::vector<double> probs;
};

/// Reward law of one arm. Every reward lies in [0, 1]. Values are immutable
/// after construction and may be shared freely between threads.
class ArmDistribution {
 public:
  using Law = std::variant<Bernoulli, UniformContinuous, FiniteDiscrete>;

  static ArmDistribution bernoulli(double p);
  static ArmDistribution uniform(double lo, double hi);
  /// Sorts the support and merges repeated values. Probabilities must be
  /// nonnegative and sum to 1 within 1e-12.
  static ArmDistribution discrete(std::vector<double> values,
                                  std::vector<double> probs);

  const Law& law() const { return law_; }
  bool is_bernoulli() const { return std::holds_alternative<Bernoulli>(law_); }
  bool has_finite_support() const {
    return !std::holds_alternative<UniformContinuous>(law_);
  }

  double mean() const;
  double variance() const;

  /// P(X < c), strict inequality.
  double prob_below(double c) const;

  /// E[max(X, c)]; ties X == c count toward the observed reward.
  double expected_max_with_constant(double c) const;

  double sample(Rng& rng) const;

  /// Support points for Bernoulli and discrete laws; nullopt for continuous.
  std::optional<std::vector<double>> support() const;

  /// Probability mass at each support point, aligned with support().
  std::optional<std::vector<double>> support_probs() const;

  std::string describe() const;

  friend bool operator==(const ArmDistribution& a, const ArmDistribution& b);

 private:
  explicit ArmDistribution(Law law) : law_(std::move(law)) {}
  Law law_;
};

/// {"kind":"bernoulli","p":0.6} | {"kind":"uniform","lo":0,"hi":1} |
/// {"kind":"discrete","values":[...],"probs":[...]}
nlohmann::json to_json(const ArmDistribution& d);
ArmDistribution distribution_from_json(const nlohmann::json& j);

}  // namespace envy
