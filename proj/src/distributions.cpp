#include "envy/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace envy {
namespace {

constexpr double kProbTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid distribution: " + what);
}

}  // namespace

ArmDistribution ArmDistribution::bernoulli(double p) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, "bernoulli p must be in [0,1]");
  return ArmDistribution(Bernoulli{p});
}

ArmDistribution ArmDistribution::uniform(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi), "uniform bounds must be finite");
  require(0.0 <= lo && lo < hi && hi <= 1.0, "uniform requires 0 <= lo < hi <= 1");
  return ArmDistribution(UniformContinuous{lo, hi});
}

ArmDistribution ArmDistribution::discrete(std::vector<double> values,
                                          std::vector<double> probs) {
  require(!values.empty(), "discrete support is empty");
  require(values.size() == probs.size(), "values and probs differ in length");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  FiniteDiscrete law;
  double total = 0.0;
  for (std::size_t i : idx) {
    require(std::isfinite(values[i]) && values[i] >= 0.0 && values[i] <= 1.0,
            "discrete values must lie in [0,1]");
    require(std::isfinite(probs[i]) && probs[i] >= 0.0,
            "discrete probabilities must be nonnegative");
    total += probs[i];
    if (!law.values.empty() && law.values.back() == values[i]) {
      law.probs.back() += probs[i];
    } else {
      law.values.push_back(values[i]);
      law.probs.push_back(probs[i]);
    }
  }
  require(std::abs(total - 1.0) <= kProbTolerance, "discrete probabilities must sum to 1");
  return ArmDistribution(std::move(law));
}

double ArmDistribution::mean() const {
  return std::visit(
      Overloaded{
          [](const Bernoulli& b) { return b.p; },
          [](const UniformContinuous& u) { return 0.5 * (u.lo + u.hi); },
          [](const FiniteDiscrete& d) {
            double m = 0.0;
            for (std::size_t i = 0; i < d.values.size(); ++i) m += d.values[i] * d.probs[i];
            return m;
          },
      },
      law_);
}

double ArmDistribution::variance() const {
  return std::visit(
      Overloaded{
          [](const Bernoulli& b) { return b.p * (1.0 - b.p); },
          [](const UniformContinuous& u) {
            const double w = u.hi - u.lo;
            return w * w / 12.0;
          },
          [this](const FiniteDiscrete& d) {
            const double m = mean();
            double v = 0.0;
            for (std::size_t i = 0; i < d.values.size(); ++i) {
              v += d.probs[i] * (d.values[i] - m) * (d.values[i] - m);
            }
            return v;
          },
      },
      law_);
}

double ArmDistribution::prob_below(double c) const {
  return std::visit(
      Overloaded{
          [c](const Bernoulli& b) {
            if (c <= 0.0) return 0.0;
            if (c <= 1.0) return 1.0 - b.p;
            return 1.0;
          },
          [c](const UniformContinuous& u) {
            return std::clamp((c - u.lo) / (u.hi - u.lo), 0.0, 1.0);
          },
          [c](const FiniteDiscrete& d) {
            double p = 0.0;
            for (std::size_t i = 0; i < d.values.size() && d.values[i] < c; ++i) p += d.probs[i];
            return p;
          },
      },
      law_);
}

double ArmDistribution::expected_max_with_constant(double c) const {
  return std::visit(
      Overloaded{
          [c](const Bernoulli& b) {
            // E[X 1{X >= c}] only picks up the atom at 1.
            const double below = c <= 0.0 ? 0.0 : (c <= 1.0 ? 1.0 - b.p : 1.0);
            const double upper = c <= 1.0 ? b.p : 0.0;
            return c * below + upper;
          },
          [c](const UniformContinuous& u) {
            if (c <= u.lo) return 0.5 * (u.lo + u.hi);
            if (c >= u.hi) return c;
            const double w = u.hi - u.lo;
            return c * (c - u.lo) / w + (u.hi * u.hi - c * c) / (2.0 * w);
          },
          [c](const FiniteDiscrete& d) {
            double e = 0.0;
            for (std::size_t i = 0; i < d.values.size(); ++i) {
              e += d.probs[i] * (d.values[i] >= c ? d.values[i] : c);
            }
            return e;
          },
      },
      law_);
}

double ArmDistribution::sample(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&rng](const Bernoulli& b) { return rng.uniform() < b.p ? 1.0 : 0.0; },
          [&rng](const UniformContinuous& u) { return u.lo + (u.hi - u.lo) * rng.uniform(); },
          [&rng](const FiniteDiscrete& d) {
            const double x = rng.uniform();
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < d.values.size(); ++i) {
              acc += d.probs[i];
              if (x < acc) return d.values[i];
            }
            return d.values.back();
          },
      },
      law_);
}

std::optional<std::vector<double>> ArmDistribution::support() const {
  return std::visit(
      Overloaded{
          [](const Bernoulli&) -> std::optional<std::vector<double>> {
            return std::vector<double>{0.0, 1.0};
          },
          [](const UniformContinuous&) -> std::optional<std::vector<double>> {
            return std::nullopt;
          },
          [](const FiniteDiscrete& d) -> std::optional<std::vector<double>> {
            return d.values;
          },
      },
      law_);
}

std::optional<std::vector<double>> ArmDistribution::support_probs() const {
  return std::visit(
      Overloaded{
          [](const Bernoulli& b) -> std::optional<std::vector<double>> {
            return std::vector<double>{1.0 - b.p, b.p};
          },
          [](const UniformContinuous&) -> std::optional<std::vector<double>> {
            return std::nullopt;
          },
          [](const FiniteDiscrete& d) -> std::optional<std::vector<double>> {
            return d.probs;
          },
      },
      law_);
}

std::string ArmDistribution::describe() const {
  return to_json(*this).dump();
}

bool operator==(const ArmDistribution& a, const ArmDistribution& b) {
  if (a.law_.index() != b.law_.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Bernoulli& x) { return x.p == std::get<Bernoulli>(b.law_).p; },
          [&](const UniformContinuous& x) {
            const auto& y = std::get<UniformContinuous>(b.law_);
            return x.lo == y.lo && x.hi == y.hi;
          },
          [&](const FiniteDiscrete& x) {
            const auto& y = std::get<FiniteDiscrete>(b.law_);
            return x.values == y.values && x.probs == y.probs;
          },
      },
      a.law_);
}

nlohmann::json to_json(const ArmDistribution& d) {
  return std::visit(
      Overloaded{
          [](const Bernoulli& b) { return nlohmann::json{{"kind", "bernoulli"}, {"p", b.p}}; },
          [](const UniformContinuous& u) {
            return nlohmann::json{{"kind", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
          },
          [](const FiniteDiscrete& f) {
            return nlohmann::json{{"kind", "discrete"}, {"values", f.values}, {"probs", f.probs}};
          },
      },
      d.law());
}

ArmDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("distribution JSON needs a \"kind\" field: " + j.dump());
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "bernoulli") return ArmDistribution::bernoulli(j.at("p").get<double>());
  if (kind == "uniform") {
    return ArmDistribution::uniform(j.value("lo", 0.0), j.value("hi", 1.0));
  }
  if (kind == "discrete") {
    return ArmDistribution::discrete(j.at("values").get<std::vector<double>>(),
                                     j.at("probs").get<std::vector<double>>());
  }
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

}  // namespace envy
