#include "envy/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace envy {

std::string to_string(GrowthModel m) { return m == GrowthModel::kLinear ? "linear" : "sqrt"; }

GrowthModel growth_model_from_string(const std::string& s) {
  if (s == "linear") return GrowthModel::kLinear;
  if (s == "sqrt") return GrowthModel::kSqrt;
  throw std::invalid_argument("unknown growth model '" + s + "'");
}

GrowthFit fit_growth(std::span<const double> t, std::span<const double> y, GrowthModel model) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_growth: t and y differ in length");
  if (t.size() < 2) throw std::invalid_argument("fit_growth needs at least two points");
  auto phi = [model](double x) { return model == GrowthModel::kLinear ? x : std::sqrt(x); };
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(t[k] >= 1.0)) throw std::invalid_argument("fit_growth needs t >= 1");
    num += phi(t[k]) * y[k];
    den += phi(t[k]) * phi(t[k]);
  }
  const double c = num / den;
  double ss = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double r = y[k] - c * phi(t[k]);
    ss += r * r;
  }
  return {c, std::sqrt(ss / static_cast<double>(t.size()))};
}

ModelComparison compare_models(std::span<const double> t, std::span<const double> y) {
  ModelComparison m{fit_growth(t, y, GrowthModel::kLinear), fit_growth(t, y, GrowthModel::kSqrt), 1.0,
                    std::nullopt};
  if (m.sqrt.residual > 0.0) {
    m.ratio = m.linear.residual / m.sqrt.residual;
  } else if (m.linear.residual > 0.0) {
    m.ratio = std::numeric_limits<double>::infinity();
  }
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const bool constant = *lo == *hi;
  if (!constant && (m.ratio < 0.9 || m.ratio > 1.1)) {
    m.preferred = m.ratio < 1.0 ? GrowthModel::kLinear : GrowthModel::kSqrt;
  }
  return m;
}

}  // namespace envy
