#include "mixpois/ks.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mixpois {

namespace detail {

double ks_from_values(std::span<const double> sorted_samples,
                      std::span<const double> cdf_at,
                      std::span<const double> cdf_left_at) {
  const std::size_t n = sorted_samples.size();
  if (n == 0) throw std::invalid_argument("ks_statistic requires a nonempty sample");
  const double dn = static_cast<double>(n);
  double d = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted_samples[j + 1] == sorted_samples[i]) ++j;
    const double below = std::abs(static_cast<double>(i) / dn - cdf_left_at[i]);
    const double at = std::abs(static_cast<double>(j + 1) / dn - cdf_at[i]);
    if (below > d) d = below;
    if (at > d) d = at;
    i = j + 1;
  }
  return d;
}

}  // namespace detail

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf,
                    const std::function<double(double)>& cdf_left) {
  const std::size_t n = sorted_samples.size();
  if (n == 0) throw std::invalid_argument("ks_statistic requires a nonempty sample");
  std::vector<double> at(n), left(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && sorted_samples[i] == sorted_samples[i - 1]) {
      at[i] = at[i - 1];
      left[i] = left[i - 1];
      continue;
    }
    if (i > 0 && sorted_samples[i] < sorted_samples[i - 1]) {
      throw std::invalid_argument("ks_statistic requires a sorted sample");
    }
    at[i] = cdf(sorted_samples[i]);
    left[i] = cdf_left(sorted_samples[i]);
  }
  return detail::ks_from_values(sorted_samples, at, left);
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf) {
  return ks_statistic(sorted_samples, cdf, cdf);
}

double ks_statistic(std::span<const double> sorted_samples,
                    const NormalVarianceMixtureCdf& cdf) {
  return ks_statistic(
      sorted_samples, [&cdf](double z) { return cdf(z); },
      [&cdf](double z) { return cdf.left(z); });
}

}  // namespace mixpois
