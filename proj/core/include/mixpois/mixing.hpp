#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mixpois/rng.hpp"

namespace mixpois {

/// Catalogue of nonnegative mixing distributions: exact power moments,
/// exponentially weighted moments E(X^l e^{-rho X}), and samplers.
///
/// Gamma is parameterized by (shape, rate), i.e. density proportional to
/// x^{shape-1} e^{-rate x}; the negative-binomial reduction of the mixed
/// Poisson pmf depends on this convention.
class MixingDistribution {
 public:
  struct Atom {
    double value;
    double prob;
  };

  struct DegenerateParams { double value; };
  struct GammaParams { double shape; double rate; };
  struct DiscreteParams { std::vector<Atom> atoms; };
  struct ZeroInflatedParams {
    double p;
    std::shared_ptr<const MixingDistribution> base;
  };
  struct LognormalParams { double location; double scale; };

  enum class Kind { Degenerate, Gamma, Discrete, ZeroInflated, Lognormal };

  /// Point mass at c >= 0.
  static MixingDistribution degenerate(double c);
  static MixingDistribution gamma(double shape, double rate);
  /// Finite support on nonnegative atoms with positive probabilities.
  /// Probabilities are renormalized when they sum to 1 within 1e-12 and
  /// rejected otherwise.
  static MixingDistribution discrete(std::vector<Atom> atoms);
  /// Mixture of a point mass at zero (probability p in (0,1)) and a base
  /// distribution that itself carries no mass at zero.
  static MixingDistribution zero_inflated(double p, MixingDistribution base);
  /// exp(location + scale*N(0,1)). The classic moment-indeterminate case:
  /// moment_determinate() is false and limit-theorem hypotheses requiring
  /// a determinate moment sequence exclude it.
  static MixingDistribution lognormal(double location, double scale);

  Kind kind() const;

  /// Whether the moment sequence determines the distribution uniquely
  /// (Carleman). Curated analytic metadata, not computed.
  bool moment_determinate() const;

  /// Exact raw moment E(X^s).
  double moment(unsigned s) const;

  /// Exact variance.
  double variance() const;

  /// E(X^l e^{-rho X}). Closed forms everywhere except lognormal, which is
  /// integrated adaptively to absolute tolerance 1e-10 on the substitution
  /// u = x/(1+x); non-convergence raises NumericalError with the achieved
  /// tolerance.
  double laplace_weighted_moment(unsigned l, double rho) const;

  /// log E(X^l e^{-rho X}); -inf when the weighted moment is exactly 0.
  /// Usable far beyond the overflow range of the linear-scale value.
  double log_laplace_weighted_moment(unsigned l, double rho) const;

  /// Mass at zero, P{X = 0}.
  double atom_at_zero() const;

  double sample(RandomEngine& rng) const;

  /// The parameter variant, for serialization and kind-specific evaluation.
  const std::variant<DegenerateParams, GammaParams, DiscreteParams,
                     ZeroInflatedParams, LognormalParams>&
  params() const {
    return params_;
  }

  /// Short display form, e.g. "gamma(shape=2, rate=1)".
  std::string describe() const;

 private:
  using ParamVariant = std::variant<DegenerateParams, GammaParams, DiscreteParams,
                                    ZeroInflatedParams, LognormalParams>;
  explicit MixingDistribution(ParamVariant params) : params_(std::move(params)) {}
  ParamVariant params_;
};

}  // namespace mixpois
