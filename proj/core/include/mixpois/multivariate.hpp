#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mixpois/mixed_poisson.hpp"
#include "mixpois/mixing.hpp"

namespace mixpois {

/// Multivariate mixed Poisson model: a joint mixing vector (X_1,...,X_m)
/// and positive scale parameters (rho_1,...,rho_m). Given the mixing
/// vector the coordinates are independent Poisson(rho_j X_j) counts.
///
/// Joint mixing comes in three forms: independent components, a single
/// distribution copied to every coordinate (comonotone), or an explicit
/// finite table of atoms for the joint law.
class MultiMixedPoissonModel {
 public:
  struct JointAtom {
    std::vector<double> values;
    double prob;
  };

  struct IndependentParams { std::vector<MixingDistribution> components; };
  struct ComonotoneParams { MixingDistribution shared; };
  struct JointTableParams { std::vector<JointAtom> atoms; };

  enum class JointKind { Independent, Comonotone, JointTable };

  static MultiMixedPoissonModel independent(std::vector<MixingDistribution> components,
                                            std::vector<double> rhos);
  static MultiMixedPoissonModel comonotone(MixingDistribution shared,
                                           std::vector<double> rhos);
  static MultiMixedPoissonModel joint_table(std::vector<JointAtom> atoms,
                                            std::vector<double> rhos);

  JointKind joint_kind() const;
  std::size_t dimension() const { return rhos_.size(); }
  const std::vector<double>& rhos() const { return rhos_; }

  /// Draw the mixing vector jointly, then each count independently given it.
  std::vector<CoupledSample> sample_coupled_vector(RandomEngine& rng) const;
  void sample_coupled_vector(RandomEngine& rng, std::span<CoupledSample> out) const;

  /// Joint pmf. Implemented for finite joint tables and for degenerate
  /// components (where the law is a product of Poisson pmfs); continuous
  /// joint mixing would need multidimensional quadrature and is rejected.
  double pmf(std::span<const std::uint64_t> counts) const;

  /// Marginal mixing distribution of coordinate j.
  MixingDistribution marginal_mixing(std::size_t j) const;

  std::string describe() const;

  const std::variant<IndependentParams, ComonotoneParams, JointTableParams>&
  joint_params() const {
    return joint_;
  }

 private:
  using JointVariant = std::variant<IndependentParams, ComonotoneParams, JointTableParams>;
  MultiMixedPoissonModel(JointVariant joint, std::vector<double> rhos);

  JointVariant joint_;
  std::vector<double> rhos_;
};

}  // namespace mixpois
