#include "mixpois/multivariate.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mixpois/samplers.hpp"

namespace mixpois {

MultiMixedPoissonModel::MultiMixedPoissonModel(JointVariant joint, std::vector<double> rhos)
    : joint_(std::move(joint)), rhos_(std::move(rhos)) {
  if (rhos_.size() < 2) {
    throw std::invalid_argument("multivariate model requires dimension >= 2");
  }
  for (double r : rhos_) {
    if (!(r > 0.0)) {
      throw std::invalid_argument("multivariate model requires every rho_j > 0");
    }
  }
}

MultiMixedPoissonModel MultiMixedPoissonModel::independent(
    std::vector<MixingDistribution> components, std::vector<double> rhos) {
  if (components.size() != rhos.size()) {
    throw std::invalid_argument("independent mixing needs one component per rho");
  }
  return MultiMixedPoissonModel(IndependentParams{std::move(components)}, std::move(rhos));
}

MultiMixedPoissonModel MultiMixedPoissonModel::comonotone(MixingDistribution shared,
                                                          std::vector<double> rhos) {
  return MultiMixedPoissonModel(ComonotoneParams{std::move(shared)}, std::move(rhos));
}

MultiMixedPoissonModel MultiMixedPoissonModel::joint_table(std::vector<JointAtom> atoms,
                                                           std::vector<double> rhos) {
  if (atoms.empty()) throw std::invalid_argument("joint table requires at least one atom");
  double sum = 0.0;
  for (const JointAtom& a : atoms) {
    if (a.values.size() != rhos.size()) {
      throw std::invalid_argument("joint table atom dimension must match the rho vector");
    }
    for (double v : a.values) {
      if (!(v >= 0.0)) throw std::invalid_argument("joint table values must be >= 0");
    }
    if (!(a.prob > 0.0)) throw std::invalid_argument("joint table probabilities must be > 0");
    sum += a.prob;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("joint table probabilities must sum to 1 within 1e-12");
  }
  for (JointAtom& a : atoms) a.prob /= sum;
  return MultiMixedPoissonModel(JointTableParams{std::move(atoms)}, std::move(rhos));
}

MultiMixedPoissonModel::JointKind MultiMixedPoissonModel::joint_kind() const {
  return static_cast<JointKind>(joint_.index());
}

void MultiMixedPoissonModel::sample_coupled_vector(RandomEngine& rng,
                                                   std::span<CoupledSample> out) const {
  const std::size_t m = dimension();
  if (out.size() != m) throw std::invalid_argument("output span has wrong dimension");
  switch (joint_kind()) {
    case JointKind::Independent: {
      const auto& comps = std::get<IndependentParams>(joint_).components;
      for (std::size_t j = 0; j < m; ++j) {
        const double x = comps[j].sample(rng);
        out[j] = CoupledSample{x, sample_poisson(rhos_[j] * x, rng)};
      }
      return;
    }
    case JointKind::Comonotone: {
      const double x = std::get<ComonotoneParams>(joint_).shared.sample(rng);
      for (std::size_t j = 0; j < m; ++j) {
        out[j] = CoupledSample{x, sample_poisson(rhos_[j] * x, rng)};
      }
      return;
    }
    case JointKind::JointTable: {
      const auto& atoms = std::get<JointTableParams>(joint_).atoms;
      const double u = uniform_unit(rng);
      double cum = 0.0;
      const JointAtom* chosen = &atoms.back();
      for (const JointAtom& a : atoms) {
        cum += a.prob;
        if (u <= cum) {
          chosen = &a;
          break;
        }
      }
      for (std::size_t j = 0; j < m; ++j) {
        const double x = chosen->values[j];
        out[j] = CoupledSample{x, sample_poisson(rhos_[j] * x, rng)};
      }
      return;
    }
  }
}

std::vector<CoupledSample> MultiMixedPoissonModel::sample_coupled_vector(
    RandomEngine& rng) const {
  std::vector<CoupledSample> out(dimension());
  sample_coupled_vector(rng, out);
  return out;
}

double MultiMixedPoissonModel::pmf(std::span<const std::uint64_t> counts) const {
  const std::size_t m = dimension();
  if (counts.size() != m) throw std::invalid_argument("counts have wrong dimension");
  switch (joint_kind()) {
    case JointKind::JointTable: {
      double sum = 0.0;
      for (const JointAtom& a : std::get<JointTableParams>(joint_).atoms) {
        double term = a.prob;
        for (std::size_t j = 0; j < m; ++j) {
          term *= poisson_pmf(counts[j], rhos_[j] * a.values[j]);
        }
        sum += term;
      }
      return sum;
    }
    case JointKind::Comonotone: {
      const auto& shared = std::get<ComonotoneParams>(joint_).shared;
      if (shared.kind() != MixingDistribution::Kind::Degenerate) break;
      const double c = std::get<MixingDistribution::DegenerateParams>(shared.params()).value;
      double prod = 1.0;
      for (std::size_t j = 0; j < m; ++j) prod *= poisson_pmf(counts[j], rhos_[j] * c);
      return prod;
    }
    case JointKind::Independent: {
      const auto& comps = std::get<IndependentParams>(joint_).components;
      double prod = 1.0;
      bool all_degenerate = true;
      for (std::size_t j = 0; j < m; ++j) {
        if (comps[j].kind() != MixingDistribution::Kind::Degenerate) {
          all_degenerate = false;
          break;
        }
        const double c =
            std::get<MixingDistribution::DegenerateParams>(comps[j].params()).value;
        prod *= poisson_pmf(counts[j], rhos_[j] * c);
      }
      if (all_degenerate) return prod;
      break;
    }
  }
  throw std::invalid_argument(
      "multivariate pmf is only available for joint tables and degenerate components");
}

MixingDistribution MultiMixedPoissonModel::marginal_mixing(std::size_t j) const {
  if (j >= dimension()) throw std::invalid_argument("coordinate out of range");
  switch (joint_kind()) {
    case JointKind::Independent:
      return std::get<IndependentParams>(joint_).components[j];
    case JointKind::Comonotone:
      return std::get<ComonotoneParams>(joint_).shared;
    case JointKind::JointTable: {
      // Project the table onto coordinate j, merging repeated values.
      std::map<double, double> mass;
      for (const JointAtom& a : std::get<JointTableParams>(joint_).atoms) {
        mass[a.values[j]] += a.prob;
      }
      std::vector<MixingDistribution::Atom> atoms;
      atoms.reserve(mass.size());
      for (const auto& [value, prob] : mass) atoms.push_back({value, prob});
      return MixingDistribution::discrete(std::move(atoms));
    }
  }
  throw std::logic_error("unreachable");
}

std::string MultiMixedPoissonModel::describe() const {
  std::ostringstream out;
  switch (joint_kind()) {
    case JointKind::Independent: {
      out << "independent{";
      bool first = true;
      for (const auto& c : std::get<IndependentParams>(joint_).components) {
        if (!first) out << ", ";
        first = false;
        out << c.describe();
      }
      out << "}";
      break;
    }
    case JointKind::Comonotone:
      out << "comonotone{" << std::get<ComonotoneParams>(joint_).shared.describe() << "}";
      break;
    case JointKind::JointTable:
      out << "joint_table{" << std::get<JointTableParams>(joint_).atoms.size() << " atoms}";
      break;
  }
  out << " rhos=(";
  for (std::size_t j = 0; j < rhos_.size(); ++j) {
    if (j) out << ", ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", rhos_[j]);
    out << buf;
  }
  out << ")";
  return out.str();
}

}  // namespace mixpois
