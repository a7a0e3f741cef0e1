#pragma once

#include "mixpois/mixing.hpp"

namespace mixpois {

/// Distribution function of the normal variance mixture N(0, X):
/// F(z) = E[Phi(z / sqrt(X)); X > 0] + P{X = 0} * 1{z >= 0}.
/// Exact finite sums for degenerate and discrete mixings; adaptive
/// quadrature at the configured absolute tolerance for gamma and
/// lognormal (raising NumericalError with the achieved tolerance on
/// non-convergence). The only possible atom is at z = 0, with mass
/// P{X = 0}.
class NormalVarianceMixtureCdf {
 public:
  explicit NormalVarianceMixtureCdf(MixingDistribution mixing, double tolerance = 1e-10);

  /// F(z), right-continuous.
  double operator()(double z) const;

  /// Left limit F(z-).
  double left(double z) const;

  /// Jump size at z = 0 (equals the mixing mass at zero).
  double atom_at_zero() const { return atom_at_zero_; }

  const MixingDistribution& mixing() const { return mixing_; }
  double tolerance() const { return tolerance_; }

 private:
  MixingDistribution mixing_;
  double tolerance_;
  double atom_at_zero_;
};

}  // namespace mixpois
