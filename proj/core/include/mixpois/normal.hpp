#pragma once

#include <cmath>

namespace mixpois {

/// Standard normal CDF via erfc; accurate over the full double range.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

inline double normal_pdf(double z) {
  return 0.39894228040143267794 * std::exp(-0.5 * z * z);
}

}  // namespace mixpois
