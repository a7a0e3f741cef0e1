#include "mixpois/mixing.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mixpois/quadrature.hpp"
#include "mixpois/samplers.hpp"

namespace mixpois {

namespace {

constexpr double kAtomSumSlack = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double lognormal_pdf(double x, double location, double scale) {
  if (x <= 0.0) return 0.0;
  const double t = (std::log(x) - location) / scale;
  return std::exp(-0.5 * t * t) / (x * scale * 2.5066282746310005024);
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

MixingDistribution MixingDistribution::degenerate(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("degenerate mixing requires value >= 0");
  return MixingDistribution(DegenerateParams{c});
}

MixingDistribution MixingDistribution::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("gamma mixing requires shape > 0 and rate > 0");
  }
  return MixingDistribution(GammaParams{shape, rate});
}

MixingDistribution MixingDistribution::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("discrete mixing requires at least one atom");
  double sum = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.value >= 0.0)) throw std::invalid_argument("discrete atom values must be >= 0");
    if (!(a.prob > 0.0)) throw std::invalid_argument("discrete atom probabilities must be > 0");
    sum += a.prob;
  }
  if (std::abs(sum - 1.0) > kAtomSumSlack) {
    throw std::invalid_argument("discrete atom probabilities must sum to 1 within 1e-12");
  }
  for (Atom& a : atoms) a.prob /= sum;
  return MixingDistribution(DiscreteParams{std::move(atoms)});
}

MixingDistribution MixingDistribution::zero_inflated(double p, MixingDistribution base) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("zero_inflated requires p in (0, 1)");
  }
  if (base.kind() == Kind::ZeroInflated) {
    throw std::invalid_argument("zero_inflated base must not itself be zero-inflated");
  }
  if (base.atom_at_zero() != 0.0) {
    throw std::invalid_argument("zero_inflated base must have no mass at zero");
  }
  return MixingDistribution(ZeroInflatedParams{
      p, std::make_shared<const MixingDistribution>(std::move(base))});
}

MixingDistribution MixingDistribution::lognormal(double location, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("lognormal mixing requires scale > 0");
  return MixingDistribution(LognormalParams{location, scale});
}

MixingDistribution::Kind MixingDistribution::kind() const {
  return static_cast<Kind>(params_.index());
}

bool MixingDistribution::moment_determinate() const {
  switch (kind()) {
    case Kind::Degenerate:
    case Kind::Gamma:
    case Kind::Discrete:
      return true;
    case Kind::ZeroInflated:
      return std::get<ZeroInflatedParams>(params_).base->moment_determinate();
    case Kind::Lognormal:
      return false;
  }
  return false;
}

double MixingDistribution::moment(unsigned s) const {
  if (s == 0) return 1.0;
  switch (kind()) {
    case Kind::Degenerate:
      return std::pow(std::get<DegenerateParams>(params_).value, s);
    case Kind::Gamma: {
      const auto& g = std::get<GammaParams>(params_);
      double m = 1.0;
      for (unsigned i = 0; i < s; ++i) m *= (g.shape + i) / g.rate;
      return m;
    }
    case Kind::Discrete: {
      double m = 0.0;
      for (const Atom& a : std::get<DiscreteParams>(params_).atoms) {
        m += a.prob * std::pow(a.value, s);
      }
      return m;
    }
    case Kind::ZeroInflated: {
      const auto& z = std::get<ZeroInflatedParams>(params_);
      return (1.0 - z.p) * z.base->moment(s);
    }
    case Kind::Lognormal: {
      const auto& l = std::get<LognormalParams>(params_);
      const double ds = s;
      return std::exp(ds * l.location + 0.5 * ds * ds * l.scale * l.scale);
    }
  }
  return 0.0;
}

double MixingDistribution::variance() const {
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

double MixingDistribution::laplace_weighted_moment(unsigned l, double rho) const {
  if (!(rho >= 0.0)) throw std::invalid_argument("laplace_weighted_moment requires rho >= 0");
  switch (kind()) {
    case Kind::Degenerate: {
      const double c = std::get<DegenerateParams>(params_).value;
      return std::pow(c, l) * std::exp(-rho * c);
    }
    case Kind::Gamma: {
      const auto& g = std::get<GammaParams>(params_);
      double m = std::pow(g.rate / (g.rate + rho), g.shape);
      for (unsigned i = 0; i < l; ++i) m *= (g.shape + i) / (g.rate + rho);
      return m;
    }
    case Kind::Discrete: {
      double m = 0.0;
      for (const Atom& a : std::get<DiscreteParams>(params_).atoms) {
        m += a.prob * std::pow(a.value, l) * std::exp(-rho * a.value);
      }
      return m;
    }
    case Kind::ZeroInflated: {
      const auto& z = std::get<ZeroInflatedParams>(params_);
      const double base = z.base->laplace_weighted_moment(l, rho);
      return (l == 0 ? z.p : 0.0) + (1.0 - z.p) * base;
    }
    case Kind::Lognormal:
      return std::exp(log_laplace_weighted_moment(l, rho));
  }
  return 0.0;
}

double MixingDistribution::log_laplace_weighted_moment(unsigned l, double rho) const {
  switch (kind()) {
    case Kind::Degenerate: {
      const double c = std::get<DegenerateParams>(params_).value;
      if (c == 0.0) return l == 0 ? 0.0 : -kInf;
      return l * std::log(c) - rho * c;
    }
    case Kind::Gamma: {
      const auto& g = std::get<GammaParams>(params_);
      return std::lgamma(g.shape + l) - std::lgamma(g.shape) +
             g.shape * std::log(g.rate) - (g.shape + l) * std::log(g.rate + rho);
    }
    case Kind::Discrete: {
      // log-sum-exp over the atoms
      double max_term = -kInf;
      const auto& atoms = std::get<DiscreteParams>(params_).atoms;
      std::vector<double> terms;
      terms.reserve(atoms.size());
      for (const Atom& a : atoms) {
        double t;
        if (a.value == 0.0) {
          t = l == 0 ? std::log(a.prob) : -kInf;
        } else {
          t = std::log(a.prob) + l * std::log(a.value) - rho * a.value;
        }
        terms.push_back(t);
        if (t > max_term) max_term = t;
      }
      if (max_term == -kInf) return -kInf;
      double acc = 0.0;
      for (double t : terms) acc += std::exp(t - max_term);
      return max_term + std::log(acc);
    }
    case Kind::ZeroInflated: {
      const auto& z = std::get<ZeroInflatedParams>(params_);
      if (l == 0) {
        return std::log(z.p + (1.0 - z.p) * z.base->laplace_weighted_moment(0, rho));
      }
      return std::log1p(-z.p) + z.base->log_laplace_weighted_moment(l, rho);
    }
    case Kind::Lognormal: {
      const auto& ln = std::get<LognormalParams>(params_);
      if (rho == 0.0) {
        const double dl = l;
        return dl * ln.location + 0.5 * dl * dl * ln.scale * ln.scale;
      }
      // Peak of x^l e^{-rho x} sits at x = l/rho; integrate the rescaled
      // integrand so the quadrature works near unit magnitude.
      const double peak_log = l == 0 ? 0.0 : l * std::log(l / rho) - l;
      auto integrand = [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(l * std::log(x) - rho * x - peak_log) *
               lognormal_pdf(x, ln.location, ln.scale);
      };
      const double integral = integrate_zero_to_inf(integrand, {1e-10, 20});
      if (integral <= 0.0) return -kInf;
      return peak_log + std::log(integral);
    }
  }
  return -kInf;
}

double MixingDistribution::atom_at_zero() const {
  switch (kind()) {
    case Kind::Degenerate:
      return std::get<DegenerateParams>(params_).value == 0.0 ? 1.0 : 0.0;
    case Kind::Discrete: {
      double p = 0.0;
      for (const Atom& a : std::get<DiscreteParams>(params_).atoms) {
        if (a.value == 0.0) p += a.prob;
      }
      return p;
    }
    case Kind::ZeroInflated:
      return std::get<ZeroInflatedParams>(params_).p;
    case Kind::Gamma:
    case Kind::Lognormal:
      return 0.0;
  }
  return 0.0;
}

double MixingDistribution::sample(RandomEngine& rng) const {
  switch (kind()) {
    case Kind::Degenerate:
      return std::get<DegenerateParams>(params_).value;
    case Kind::Gamma: {
      const auto& g = std::get<GammaParams>(params_);
      return sample_gamma(g.shape, g.rate, rng);
    }
    case Kind::Discrete: {
      const double u = uniform_unit(rng);
      double cum = 0.0;
      const auto& atoms = std::get<DiscreteParams>(params_).atoms;
      for (const Atom& a : atoms) {
        cum += a.prob;
        if (u <= cum) return a.value;
      }
      return atoms.back().value;
    }
    case Kind::ZeroInflated: {
      const auto& z = std::get<ZeroInflatedParams>(params_);
      const double u = uniform_unit(rng);
      if (u < z.p) return 0.0;
      return z.base->sample(rng);
    }
    case Kind::Lognormal: {
      const auto& l = std::get<LognormalParams>(params_);
      return std::exp(l.location + l.scale * sample_standard_normal(rng));
    }
  }
  return 0.0;
}

std::string MixingDistribution::describe() const {
  switch (kind()) {
    case Kind::Degenerate:
      return "degenerate(" + format_param(std::get<DegenerateParams>(params_).value) + ")";
    case Kind::Gamma: {
      const auto& g = std::get<GammaParams>(params_);
      return "gamma(shape=" + format_param(g.shape) + ", rate=" + format_param(g.rate) + ")";
    }
    case Kind::Discrete: {
      std::ostringstream out;
      out << "discrete{";
      bool first = true;
      for (const Atom& a : std::get<DiscreteParams>(params_).atoms) {
        if (!first) out << ", ";
        first = false;
        out << "(" << format_param(a.value) << ", " << format_param(a.prob) << ")";
      }
      out << "}";
      return out.str();
    }
    case Kind::ZeroInflated: {
      const auto& z = std::get<ZeroInflatedParams>(params_);
      return "zero_inflated(p=" + format_param(z.p) + ", base=" + z.base->describe() + ")";
    }
    case Kind::Lognormal: {
      const auto& l = std::get<LognormalParams>(params_);
      return "lognormal(location=" + format_param(l.location) +
             ", scale=" + format_param(l.scale) + ")";
    }
  }
  return "?";
}

}  // namespace mixpois
