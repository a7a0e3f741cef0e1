#include "mixpois/samplers.hpp"

#include <cmath>

namespace mixpois {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPoissonInversionCutoff = 30.0;
}  // namespace

double sample_standard_normal(RandomEngine& rng) {
  const double u1 = uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double sample_gamma(double shape, double rate, RandomEngine& rng) {
  if (shape < 1.0) {
    const double u = uniform_unit(rng);
    return sample_gamma(shape + 1.0, rate, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_unit(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

namespace {

std::uint64_t poisson_inversion(double mean, RandomEngine& rng) {
  const double u = uniform_unit(rng);
  double p = std::exp(-mean);
  double cum = p;
  std::uint64_t k = 0;
  while (u > cum) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
    if (p <= 0.0) break;  // cdf saturated at double precision
  }
  return k;
}

// Hormann's PTRS transformed-rejection sampler; valid for mean >= 10.
std::uint64_t poisson_ptrs(double mean, RandomEngine& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform_unit(rng) - 0.5;
    const double v = uniform_unit(rng);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * loglam - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t sample_poisson(double mean, RandomEngine& rng) {
  if (mean <= 0.0) return 0;
  if (mean < kPoissonInversionCutoff) return poisson_inversion(mean, rng);
  return poisson_ptrs(mean, rng);
}

}  // namespace mixpois
