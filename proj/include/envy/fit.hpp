#pragma once

#include <optional>
#include <span>
#include <string>

namespace envy {

enum class GrowthModel { kLinear, kSqrt };

std::string to_string(GrowthModel m);
/// "linear" or "sqrt"; throws std::invalid_argument otherwise.
GrowthModel growth_model_from_string(const std::string& s);

struct GrowthFit {
  double c;
  double residual;  // RMS of y - c * phi(t)
};

/// Least squares through the origin for y = c * phi(t), phi(t) = t or sqrt(t).
/// Throws std::invalid_argument with fewer than two points, mismatched
/// lengths, or any t < 1.
GrowthFit fit_growth(std::span<const double> t, std::span<const double> y, GrowthModel model);

struct ModelComparison {
  GrowthFit linear;
  GrowthFit sqrt;
  /// linear.residual / sqrt.residual; +inf when only the sqrt fit is exact,
  /// 1 when both are.
  double ratio;
  /// nullopt when ratio lies in [0.9, 1.1] or y is constant.
  std::optional<GrowthModel> preferred;
};

ModelComparison compare_models(std::span<const double> t, std::span<const double> y);

}  // namespace envy
