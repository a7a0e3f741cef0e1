#pragma once

#include <cstdint>

#include "mixpois/mixing.hpp"
#include "mixpois/rng.hpp"

namespace mixpois {

/// One jointly drawn pair: the realized mixing value x and a count y drawn
/// from Poisson(rho*x) given that value. Discarding x leaves a marginal
/// draw from the mixed Poisson law; keeping it preserves the coupling that
/// centering statistics by the mixing variable requires.
struct CoupledSample {
  double x;
  std::uint64_t y;
};

/// The mixed Poisson distribution with mixing distribution X and scale
/// parameter rho >= 0: pmf(l) = rho^l / l! * E(X^l e^{-rho X}).
/// rho = 0 degenerates to the unit mass at 0.
class MixedPoissonModel {
 public:
  MixedPoissonModel(MixingDistribution mixing, double rho);

  const MixingDistribution& mixing() const { return mixing_; }
  double rho() const { return rho_; }

  /// Probability mass at l. Evaluated in log space, so large l and large
  /// rho do not overflow. Propagates NumericalError from quadrature-backed
  /// mixings.
  double pmf(std::uint64_t l) const;
  double log_pmf(std::uint64_t l) const;

  /// Draw (x, y): x from the mixing distribution, then y ~ Poisson(rho*x).
  CoupledSample sample_coupled(RandomEngine& rng) const;

  /// E(y(y-1)...(y-s+1)) = rho^s E(X^s), s >= 1.
  double factorial_moment(unsigned s) const;

  /// E(Y^s) = sum_j {s, j} rho^j E(X^j).
  double raw_moment(unsigned s) const;

  /// E((Y - rho X)^s) = sum_k rho^k E(X^k) S2(s, k), with S2 the
  /// associated Stirling numbers counting partitions into blocks of
  /// size >= 2.
  double centered_moment(unsigned s) const;

  std::string describe() const;

 private:
  MixingDistribution mixing_;
  double rho_;
};

/// Poisson pmf exp(k log(mean) - mean - log k!), with the mean-zero edge
/// handled exactly.
double poisson_pmf(std::uint64_t k, double mean);

}  // namespace mixpois
