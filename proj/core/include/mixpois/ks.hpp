#pragma once

#include <functional>
#include <span>

#include "mixpois/mixture_cdf.hpp"

namespace mixpois {

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of a
/// sorted, nonempty sample and a reference distribution function:
/// sup over sample points z of max(|F_n(z-) - F(z-)|, |F_n(z) - F(z)|).
/// Comparing left limits with left limits keeps the statistic correct when
/// the reference carries atoms.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left);

/// Continuous-reference convenience: F(z-) = F(z).
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

double ks_statistic(std::span<const double> sorted_samples,
                    const NormalVarianceMixtureCdf& cdf);

namespace detail {
/// Kernel over precomputed reference values: cdf_at[i] and cdf_left_at[i]
/// give F and F(z-) at the i-th element of the sorted sample.
double ks_from_values(std::span<const double> sorted_samples,
                      std::span<const double> cdf_at,
                      std::span<const double> cdf_left_at);
}  // namespace detail

}  // namespace mixpois
