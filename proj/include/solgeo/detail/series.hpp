#pragma once

// Removable singularities shared by the translation-curve and isoptic formulas.

#include <cmath>

namespace solgeo::detail {

inline constexpr double kSeriesCutoff = 1e-6;

/// z / (1 - e^{-z}), equal to 1 at z = 0.
inline double z_over_one_minus_exp_neg(double z) {
  if (std::abs(z) < kSeriesCutoff) return 1.0 + z / 2.0 + z * z / 12.0;
  return z / -std::expm1(-z);
}

/// z / (e^{z} - 1), equal to 1 at z = 0.
inline double z_over_expm1(double z) {
  if (std::abs(z) < kSeriesCutoff) return 1.0 - z / 2.0 + z * z / 12.0;
  return z / std::expm1(z);
}

/// d / (2 sinh(d/2)), equal to 1 at d = 0.
inline double half_sinh_ratio(double d) {
  if (std::abs(d) < kSeriesCutoff) return 1.0 - d * d / 24.0;
  return d / (2.0 * std::sinh(d / 2.0));
}

/// (1 - e^{-z}) / z and (e^{z} - 1) / z, both equal to 1 at z = 0.
inline double one_minus_exp_neg_over_z(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - z / 2.0 + z * z / 6.0;
  return -std::expm1(-z) / z;
}
inline double expm1_over_z(double z) {
  if (std::abs(z) < 1e-8) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

}  // namespace solgeo::detail
