#include "mixpois/mixed_poisson.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixpois/combinatorics.hpp"
#include "mixpois/samplers.hpp"

namespace mixpois {

MixedPoissonModel::MixedPoissonModel(MixingDistribution mixing, double rho)
    : mixing_(std::move(mixing)), rho_(rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("mixed Poisson model requires rho >= 0");
}

double MixedPoissonModel::log_pmf(std::uint64_t l) const {
  if (rho_ == 0.0) {
    return l == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double dl = static_cast<double>(l);
  const double log_weight = mixing_.log_laplace_weighted_moment(static_cast<unsigned>(l), rho_);
  return dl * std::log(rho_) - std::lgamma(dl + 1.0) + log_weight;
}

double MixedPoissonModel::pmf(std::uint64_t l) const { return std::exp(log_pmf(l)); }

CoupledSample MixedPoissonModel::sample_coupled(RandomEngine& rng) const {
  const double x = mixing_.sample(rng);
  return CoupledSample{x, sample_poisson(rho_ * x, rng)};
}

double MixedPoissonModel::factorial_moment(unsigned s) const {
  if (s < 1) throw std::invalid_argument("factorial_moment requires s >= 1");
  return std::pow(rho_, s) * mixing_.moment(s);
}

double MixedPoissonModel::raw_moment(unsigned s) const {
  const std::vector<BigCount> row = stirling2_row(s);
  double sum = 0.0;
  for (unsigned j = 0; j <= s; ++j) {
    if (row[j] == 0) continue;
    sum += to_double(row[j]) * std::pow(rho_, j) * mixing_.moment(j);
  }
  return sum;
}

double MixedPoissonModel::centered_moment(unsigned s) const {
  const std::vector<BigCount> row = assoc_stirling2_row(s);
  double sum = 0.0;
  for (unsigned k = 0; k <= s; ++k) {
    if (row[k] == 0) continue;
    sum += to_double(row[k]) * std::pow(rho_, k) * mixing_.moment(k);
  }
  return sum;
}

std::string MixedPoissonModel::describe() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", rho_);
  return "MPo(rho=" + std::string(buf) + ", " + mixing_.describe() + ")";
}

double poisson_pmf(std::uint64_t k, double mean) {
  if (mean <= 0.0) return k == 0 ? 1.0 : 0.0;
  const double dk = static_cast<double>(k);
  return std::exp(dk * std::log(mean) - mean - std::lgamma(dk + 1.0));
}

}  // namespace mixpois
