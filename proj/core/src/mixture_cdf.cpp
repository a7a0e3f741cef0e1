#include "mixpois/mixture_cdf.hpp"

#include <cmath>

#include "mixpois/normal.hpp"
#include "mixpois/quadrature.hpp"

namespace mixpois {

namespace {

double step_at_zero(double z) { return z >= 0.0 ? 1.0 : 0.0; }

double gamma_pdf(double x, double shape, double rate) {
  if (x <= 0.0) return shape > 1.0 ? 0.0 : (shape == 1.0 ? rate : 0.0);
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                  std::lgamma(shape));
}

double lognormal_pdf(double x, double location, double scale) {
  if (x <= 0.0) return 0.0;
  const double t = (std::log(x) - location) / scale;
  return std::exp(-0.5 * t * t) / (x * scale * 2.5066282746310005024);
}

double evaluate(const MixingDistribution& mixing, double z, double tol) {
  using Kind = MixingDistribution::Kind;
  switch (mixing.kind()) {
    case Kind::Degenerate: {
      const double c =
          std::get<MixingDistribution::DegenerateParams>(mixing.params()).value;
      return c > 0.0 ? normal_cdf(z / std::sqrt(c)) : step_at_zero(z);
    }
    case Kind::Discrete: {
      double sum = 0.0;
      const auto& atoms =
          std::get<MixingDistribution::DiscreteParams>(mixing.params()).atoms;
      for (const auto& a : atoms) {
        sum += a.prob *
               (a.value > 0.0 ? normal_cdf(z / std::sqrt(a.value)) : step_at_zero(z));
      }
      return sum;
    }
    case Kind::ZeroInflated: {
      const auto& zi =
          std::get<MixingDistribution::ZeroInflatedParams>(mixing.params());
      return zi.p * step_at_zero(z) + (1.0 - zi.p) * evaluate(*zi.base, z, tol);
    }
    case Kind::Gamma: {
      const auto& g = std::get<MixingDistribution::GammaParams>(mixing.params());
      auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        return normal_cdf(z / std::sqrt(x)) * gamma_pdf(x, g.shape, g.rate);
      };
      return integrate_zero_to_inf(integrand, {tol, 20});
    }
    case Kind::Lognormal: {
      const auto& l = std::get<MixingDistribution::LognormalParams>(mixing.params());
      auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        return normal_cdf(z / std::sqrt(x)) * lognormal_pdf(x, l.location, l.scale);
      };
      return integrate_zero_to_inf(integrand, {tol, 20});
    }
  }
  return 0.0;
}

}  // namespace

NormalVarianceMixtureCdf::NormalVarianceMixtureCdf(MixingDistribution mixing,
                                                   double tolerance)
    : mixing_(std::move(mixing)),
      tolerance_(tolerance),
      atom_at_zero_(mixing_.atom_at_zero()) {}

double NormalVarianceMixtureCdf::operator()(double z) const {
  return evaluate(mixing_, z, tolerance_);
}

double NormalVarianceMixtureCdf::left(double z) const {
  double v = evaluate(mixing_, z, tolerance_);
  if (z == 0.0) v -= atom_at_zero_;
  return v;
}

}  // namespace mixpois
