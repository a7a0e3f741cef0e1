#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mixpois/mixed_poisson.hpp"
#include "mixpois/multivariate.hpp"

namespace mixpois {

/// Everything a Monte Carlo experiment needs to be rerun bit-for-bit:
/// the model, the schedule of scale parameters, the sample size, the
/// master seed, the Chebyshev thresholds and the moment-order ceiling.
struct ExperimentConfig {
  std::optional<MixedPoissonModel> model;
  std::optional<MultiMixedPoissonModel> multi_model;
  std::vector<double> rho_schedule;
  std::int64_t sample_size = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> thresholds;  // tail thresholds 'a' for the Chebyshev test
  int max_moment_order = 4;        // capped at 6; higher orders are too noisy at desk scale
  int workers = 0;                 // 0 = number of processors
  double cdf_tolerance = 1e-8;     // mixture-CDF tolerance inside KS loops
};

struct MomentRecord {
  int order = 0;
  double empirical = 0;
  double std_error = 0;
  double exact = 0;      // exact finite-rho value (the sharp comparison)
  double limit = 0;      // rho -> infinity limit
  double limit_gap = 0;  // exact - limit
};

struct TailRecord {
  double a = 0;
  double empirical = 0;
  double bound = 0;  // mu_1 / (rho a^2)
  double band = 0;   // 4 sqrt(bound / N)
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RhoRecord {
  double rho = 0;
  std::vector<MomentRecord> moments;
  std::vector<TailRecord> tails;
  double ks = kNaN;
  double ks_threshold = kNaN;
  double ks_wrong = kNaN;  // wrong-centering experiment only
  double w2_empirical = kNaN;
  double w2_std_error = kNaN;
  double w2_exact = kNaN;
  double point_mass_freq = kNaN;
  double point_mass_band = kNaN;
  double cdf_jump_at_zero = kNaN;
  double mean_xy = kNaN;
  double se_xy = kNaN;
  double exact_xy = kNaN;
  double mean_xstar_y = kNaN;
  double se_xstar_y = kNaN;
  double exact_xstar_y = kNaN;
};

struct PairRecord {
  std::size_t j = 0;  // 1-based coordinates
  std::size_t k = 0;
  double w_product_mean = 0;
  double w_product_se = 0;
  double corr = 0;
  double corr_band = 0;
};

/// One assertion outcome. Every comparison records both sides of its
/// inequality lhs <= rhs; margin = rhs - lhs.
struct BoundCheck {
  std::string id;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool pass = false;
};

struct ExperimentReport {
  std::string experiment;
  int workers_used = 1;
  std::vector<RhoRecord> per_rho;
  std::vector<PairRecord> pairs;
  std::vector<BoundCheck> verdicts;

  int pass_count() const;
  int fail_count() const;
  bool all_pass() const { return fail_count() == 0; }
};

/// Desk-scale pass threshold for the CLT KS distance at sample size 2e5:
/// 0.05 at rho = 10, 0.02 at rho = 100, 0.012 at rho = 1000, log-linear in
/// between and clamped outside.
double clt_ks_threshold(double rho);

/// Convergence of Y/rho to the mixing distribution: per rho, empirical
/// scaled moments against the exact finite-rho values (with the O(1/rho)
/// gap to the limit reported alongside), the second moment of
/// W = Y/rho - X against mu_1/rho, and empirical tails P{|W| >= a}
/// against the Chebyshev bound mu_1/(rho a^2).
ExperimentReport run_scaling_experiment(const ExperimentConfig& cfg);

/// Central limit behavior of Z = (Y - rho X)/sqrt(rho): per rho, the KS
/// distance to the N(0, X) mixture CDF and the empirical moments of Z
/// against both the exact finite-rho values and the normal-mixture limits.
/// Uses coupled samples throughout; the centering X is the same draw that
/// generated Y.
ExperimentReport run_clt_experiment(const ExperimentConfig& cfg);

/// Centering by an independent copy X* instead of the coupled X: estimates
/// E(XY) (= rho mu_2) and E(X*Y) (= rho mu_1^2) and checks that the
/// X*-centered statistic fails the KS threshold the coupled one passes.
/// Rejects mixings with zero variance, where the two centerings coincide.
ExperimentReport run_wrong_centering_experiment(const MixedPoissonModel& model,
                                                std::int64_t n, std::uint64_t seed,
                                                int workers = 0,
                                                double cdf_tolerance = 1e-8);
ExperimentReport run_wrong_centering_experiment(const ExperimentConfig& cfg);

/// Atom survival for zero-inflated mixing: the frequency of Z exactly zero
/// must stay above p minus the binomial band at every rho, and the limit
/// law's jump at zero must equal p exactly.
ExperimentReport run_point_mass_experiment(const MixedPoissonModel& model,
                                           const std::vector<double>& rho_schedule,
                                           std::int64_t n, std::uint64_t seed,
                                           int workers = 0);
ExperimentReport run_point_mass_experiment(const ExperimentConfig& cfg);

/// Multivariate: cross moments E(W_j W_k) vanish for j != k even under
/// dependent (comonotone) mixing, each scaled coordinate passes its own
/// KS threshold, and the scaled coordinates are uncorrelated.
ExperimentReport run_multivariate_experiment(const ExperimentConfig& cfg);

}  // namespace mixpois
