#pragma once

#include <cstdint>

#include "mixpois/rng.hpp"

namespace mixpois {

/// Standard normal draw (Box-Muller; two uniforms per variate, no carry).
double sample_standard_normal(RandomEngine& rng);

/// Gamma(shape, rate) draw. Marsaglia-Tsang squeeze for shape >= 1, with
/// the usual power-of-uniform boost for shape < 1. Exact rejection sampler.
double sample_gamma(double shape, double rate, RandomEngine& rng);

/// Poisson draw, exact for every mean: sequential-search inversion below
/// mean 30, transformed rejection (PTRS) above.
std::uint64_t sample_poisson(double mean, RandomEngine& rng);

}  // namespace mixpois
