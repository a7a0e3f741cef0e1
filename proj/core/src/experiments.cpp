#include "mixpois/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mixpois/combinatorics.hpp"
#include "mixpois/ks.hpp"
#include "mixpois/mixture_cdf.hpp"

namespace mixpois {

namespace {

constexpr std::int64_t kChunkSize = 8192;

enum class StreamTag : std::uint64_t {
  Scaling = 1,
  Clt = 2,
  WrongCentering = 3,
  PointMass = 4,
  Multivariate = 5,
};

std::uint64_t stream_id(StreamTag tag, std::uint64_t rho_index) {
  return (static_cast<std::uint64_t>(tag) << 32) | rho_index;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

// Runs body(chunk_index) over all chunks. Chunk layout is a function of
// the sample size alone, so results do not depend on the worker count.
template <class Body>
void parallel_chunks(int workers, std::int64_t n_chunks, Body&& body) {
  if (workers <= 1 || n_chunks <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) body(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      try {
        body(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<std::int64_t>(workers, n_chunks));
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::int64_t chunk_count(std::int64_t n) { return (n + kChunkSize - 1) / kChunkSize; }
std::int64_t chunk_begin(std::int64_t c) { return c * kChunkSize; }
std::int64_t chunk_end(std::int64_t c, std::int64_t n) {
  return std::min<std::int64_t>(n, (c + 1) * kChunkSize);
}

struct Acc {
  double sum = 0.0;
  double sumsq = 0.0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
  }
  void merge(const Acc& o) {
    sum += o.sum;
    sumsq += o.sumsq;
  }
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe finish(const Acc& a, std::int64_t n) {
  const double mean = a.sum / static_cast<double>(n);
  double var = (a.sumsq - static_cast<double>(n) * mean * mean) /
               static_cast<double>(n - 1);
  if (var < 0.0) var = 0.0;  // cancellation guard for near-constant statistics
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

std::string fmt_id(const char* fmt, ...) {
  char buf[128];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

void add_check(std::vector<BoundCheck>& verdicts, std::string id, double lhs, double rhs) {
  BoundCheck c;
  c.id = std::move(id);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.pass = lhs <= rhs;
  verdicts.push_back(std::move(c));
}

// Evaluates the mixture CDF at every distinct value of a sorted sample,
// in parallel, and returns the KS distance. left values subtract the
// atom at zero where applicable.
double ks_against_mixture(const std::vector<double>& sorted,
                          const NormalVarianceMixtureCdf& cdf, int workers) {
  const std::int64_t n = static_cast<std::int64_t>(sorted.size());
  std::vector<std::int64_t> starts;
  starts.reserve(1024);
  for (std::int64_t i = 0; i < n; ++i) {
    if (i == 0 || sorted[i] != sorted[i - 1]) starts.push_back(i);
  }
  std::vector<double> at(n, 0.0), left(n, 0.0);
  const double atom = cdf.atom_at_zero();
  const std::int64_t n_starts = static_cast<std::int64_t>(starts.size());
  const std::int64_t n_eval_chunks = chunk_count(n_starts);
  parallel_chunks(workers, n_eval_chunks, [&](std::int64_t c) {
    for (std::int64_t s = chunk_begin(c); s < chunk_end(c, n_starts); ++s) {
      const std::int64_t i = starts[s];
      const double v = cdf(sorted[i]);
      at[i] = v;
      left[i] = sorted[i] == 0.0 ? v - atom : v;
    }
  });
  return detail::ks_from_values(sorted, at, left);
}

void validate_schedule(const std::vector<double>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("rho_schedule must not be empty");
  double prev = 0.0;
  for (double r : schedule) {
    if (!(r > prev)) {
      throw std::invalid_argument("rho_schedule must be strictly increasing and positive");
    }
    prev = r;
  }
}

void validate_common(const ExperimentConfig& cfg) {
  if (cfg.sample_size < 1000) {
    throw std::invalid_argument("sample_size must be at least 1000");
  }
  if (cfg.max_moment_order < 1 || cfg.max_moment_order > 6) {
    throw std::invalid_argument("max_moment_order must lie in [1, 6]");
  }
}

const MixedPoissonModel& require_model(const ExperimentConfig& cfg) {
  if (!cfg.model) throw std::invalid_argument("experiment requires a univariate model");
  return *cfg.model;
}

}  // namespace

int ExperimentReport::pass_count() const {
  int n = 0;
  for (const auto& v : verdicts) n += v.pass ? 1 : 0;
  return n;
}

int ExperimentReport::fail_count() const {
  return static_cast<int>(verdicts.size()) - pass_count();
}

double clt_ks_threshold(double rho) {
  if (rho <= 10.0) return 0.05;
  if (rho >= 1000.0) return 0.012;
  const double lr = std::log10(rho);
  if (lr <= 2.0) return 0.05 + (lr - 1.0) * (0.02 - 0.05);
  return 0.02 + (lr - 2.0) * (0.012 - 0.02);
}

ExperimentReport run_scaling_experiment(const ExperimentConfig& cfg) {
  validate_common(cfg);
  validate_schedule(cfg.rho_schedule);
  const MixedPoissonModel& base = require_model(cfg);
  const MixingDistribution& mixing = base.mixing();
  const std::int64_t n = cfg.sample_size;
  const int workers = resolve_workers(cfg.workers);
  const int order = cfg.max_moment_order;
  const double mu1 = mixing.moment(1);

  ExperimentReport report;
  report.experiment = "scaling";
  report.workers_used = workers;

  for (std::size_t r = 0; r < cfg.rho_schedule.size(); ++r) {
    const double rho = cfg.rho_schedule[r];
    const MixedPoissonModel model(mixing, rho);
    const std::int64_t n_chunks = chunk_count(n);

    struct ChunkStats {
      std::vector<Acc> moments;
      Acc w2;
      std::vector<std::int64_t> tail_counts;
    };
    std::vector<ChunkStats> chunk_stats(n_chunks);
    for (auto& cs : chunk_stats) {
      cs.moments.resize(order);
      cs.tail_counts.assign(cfg.thresholds.size(), 0);
    }

    parallel_chunks(workers, n_chunks, [&](std::int64_t c) {
      RandomEngine rng = make_stream(cfg.master_seed, stream_id(StreamTag::Scaling, r), c);
      ChunkStats& cs = chunk_stats[c];
      for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
        const CoupledSample s = model.sample_coupled(rng);
        const double scaled = static_cast<double>(s.y) / rho;
        double power = 1.0;
        for (int m = 1; m <= order; ++m) {
          power *= scaled;
          cs.moments[m - 1].add(power);
        }
        const double w = scaled - s.x;
        cs.w2.add(w * w);
        for (std::size_t t = 0; t < cfg.thresholds.size(); ++t) {
          if (std::abs(w) >= cfg.thresholds[t]) ++cs.tail_counts[t];
        }
      }
    });

    std::vector<Acc> moments(order);
    Acc w2;
    std::vector<std::int64_t> tail_counts(cfg.thresholds.size(), 0);
    for (const auto& cs : chunk_stats) {
      for (int m = 0; m < order; ++m) moments[m].merge(cs.moments[m]);
      w2.merge(cs.w2);
      for (std::size_t t = 0; t < cfg.thresholds.size(); ++t) {
        tail_counts[t] += cs.tail_counts[t];
      }
    }

    RhoRecord rec;
    rec.rho = rho;
    for (int m = 1; m <= order; ++m) {
      const MeanSe ms = finish(moments[m - 1], n);
      // exact E((Y/rho)^s) = mu_s + sum_{j<s} {s,j} mu_j / rho^{s-j}
      const std::vector<BigCount> row = stirling2_row(m);
      double gap = 0.0;
      for (int j = 0; j < m; ++j) {
        gap += to_double(row[j]) * mixing.moment(j) / std::pow(rho, m - j);
      }
      const double limit = mixing.moment(m);
      const double exact = limit + gap;
      rec.moments.push_back({m, ms.mean, ms.se, exact, limit, gap});
      add_check(report.verdicts, fmt_id("moment[rho=%g,s=%d]", rho, m),
                std::abs(ms.mean - exact), 4.0 * ms.se);
    }
    {
      const MeanSe ms = finish(w2, n);
      rec.w2_empirical = ms.mean;
      rec.w2_std_error = ms.se;
      rec.w2_exact = mu1 / rho;
      add_check(report.verdicts, fmt_id("w2[rho=%g]", rho),
                std::abs(ms.mean - rec.w2_exact), 4.0 * ms.se);
    }
    for (std::size_t t = 0; t < cfg.thresholds.size(); ++t) {
      const double a = cfg.thresholds[t];
      const double empirical =
          static_cast<double>(tail_counts[t]) / static_cast<double>(n);
      const double bound = mu1 / (rho * a * a);
      const double band = 4.0 * std::sqrt(bound / static_cast<double>(n));
      rec.tails.push_back({a, empirical, bound, band});
      add_check(report.verdicts, fmt_id("chebyshev[rho=%g,a=%g]", rho, a), empirical,
                bound + band);
    }
    report.per_rho.push_back(std::move(rec));
  }
  return report;
}

ExperimentReport run_clt_experiment(const ExperimentConfig& cfg) {
  validate_common(cfg);
  validate_schedule(cfg.rho_schedule);
  const MixedPoissonModel& base = require_model(cfg);
  const MixingDistribution& mixing = base.mixing();
  const std::int64_t n = cfg.sample_size;
  const int workers = resolve_workers(cfg.workers);
  const int order = cfg.max_moment_order;
  const NormalVarianceMixtureCdf cdf(mixing, cfg.cdf_tolerance);

  ExperimentReport report;
  report.experiment = "clt";
  report.workers_used = workers;

  for (std::size_t r = 0; r < cfg.rho_schedule.size(); ++r) {
    const double rho = cfg.rho_schedule[r];
    const MixedPoissonModel model(mixing, rho);
    const double sqrt_rho = std::sqrt(rho);
    const std::int64_t n_chunks = chunk_count(n);

    std::vector<double> z(n);
    std::vector<std::vector<Acc>> chunk_moments(n_chunks, std::vector<Acc>(order));
    parallel_chunks(workers, n_chunks, [&](std::int64_t c) {
      RandomEngine rng = make_stream(cfg.master_seed, stream_id(StreamTag::Clt, r), c);
      for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
        const CoupledSample s = model.sample_coupled(rng);
        const double zi = (static_cast<double>(s.y) - rho * s.x) / sqrt_rho;
        z[i] = zi;
        double power = 1.0;
        for (int m = 1; m <= order; ++m) {
          power *= zi;
          chunk_moments[c][m - 1].add(power);
        }
      }
    });

    std::vector<Acc> moments(order);
    for (const auto& cm : chunk_moments) {
      for (int m = 0; m < order; ++m) moments[m].merge(cm[m]);
    }

    std::sort(z.begin(), z.end());
    const double ks = ks_against_mixture(z, cdf, workers);
    const double threshold = clt_ks_threshold(rho);

    RhoRecord rec;
    rec.rho = rho;
    rec.ks = ks;
    rec.ks_threshold = threshold;
    add_check(report.verdicts, fmt_id("ks[rho=%g]", rho), ks, threshold);

    for (int m = 1; m <= order; ++m) {
      const MeanSe ms = finish(moments[m - 1], n);
      const double exact = model.centered_moment(m) / std::pow(rho, 0.5 * m);
      double limit = 0.0;
      if (m % 2 == 0) {
        limit = to_double(double_factorial_odd(m / 2)) * mixing.moment(m / 2);
      }
      rec.moments.push_back({m, ms.mean, ms.se, exact, limit, exact - limit});
      add_check(report.verdicts, fmt_id("moment[rho=%g,s=%d]", rho, m),
                std::abs(ms.mean - exact), 4.0 * ms.se);
      if (m % 2 == 1) {
        // odd moments decay like 1/sqrt(rho); the envelope is the exact value
        add_check(report.verdicts, fmt_id("odd_envelope[rho=%g,s=%d]", rho, m),
                  std::abs(ms.mean), std::abs(exact) + 4.0 * ms.se);
      }
    }
    report.per_rho.push_back(std::move(rec));
  }
  return report;
}

ExperimentReport run_wrong_centering_experiment(const MixedPoissonModel& model,
                                                std::int64_t n, std::uint64_t seed,
                                                int workers, double cdf_tolerance) {
  if (n < 1000) throw std::invalid_argument("sample_size must be at least 1000");
  const MixingDistribution& mixing = model.mixing();
  if (!(mixing.variance() > 0.0)) {
    throw std::invalid_argument(
        "wrong-centering experiment requires a mixing distribution with nonzero "
        "variance: with " +
        mixing.describe() + " the coupled and independent centerings coincide");
  }
  const double rho = model.rho();
  const double sqrt_rho = std::sqrt(rho);
  const int n_workers = resolve_workers(workers);
  const std::int64_t n_chunks = chunk_count(n);
  const NormalVarianceMixtureCdf cdf(mixing, cdf_tolerance);

  std::vector<double> z(n), z_star(n);
  struct ChunkStats {
    Acc xy;
    Acc xstar_y;
  };
  std::vector<ChunkStats> chunk_stats(n_chunks);
  parallel_chunks(n_workers, n_chunks, [&](std::int64_t c) {
    RandomEngine rng = make_stream(seed, stream_id(StreamTag::WrongCentering, 0), c);
    for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
      const CoupledSample s = model.sample_coupled(rng);
      const double x_star = mixing.sample(rng);  // independent redraw
      const double y = static_cast<double>(s.y);
      chunk_stats[c].xy.add(s.x * y);
      chunk_stats[c].xstar_y.add(x_star * y);
      z[i] = (y - rho * s.x) / sqrt_rho;
      z_star[i] = (y - rho * x_star) / sqrt_rho;
    }
  });

  Acc xy, xstar_y;
  for (const auto& cs : chunk_stats) {
    xy.merge(cs.xy);
    xstar_y.merge(cs.xstar_y);
  }

  std::sort(z.begin(), z.end());
  std::sort(z_star.begin(), z_star.end());
  const double ks = ks_against_mixture(z, cdf, n_workers);
  const double ks_wrong = ks_against_mixture(z_star, cdf, n_workers);
  const double threshold = clt_ks_threshold(rho);

  ExperimentReport report;
  report.experiment = "wrong-centering";
  report.workers_used = n_workers;

  const double mu1 = mixing.moment(1);
  const double mu2 = mixing.moment(2);
  const MeanSe ms_xy = finish(xy, n);
  const MeanSe ms_xsy = finish(xstar_y, n);

  RhoRecord rec;
  rec.rho = rho;
  rec.ks = ks;
  rec.ks_threshold = threshold;
  rec.ks_wrong = ks_wrong;
  rec.mean_xy = ms_xy.mean;
  rec.se_xy = ms_xy.se;
  rec.exact_xy = rho * mu2;
  rec.mean_xstar_y = ms_xsy.mean;
  rec.se_xstar_y = ms_xsy.se;
  rec.exact_xstar_y = rho * mu1 * mu1;
  report.per_rho.push_back(std::move(rec));

  add_check(report.verdicts, "E_XY", std::abs(ms_xy.mean - rho * mu2), 4.0 * ms_xy.se);
  add_check(report.verdicts, "E_XstarY", std::abs(ms_xsy.mean - rho * mu1 * mu1),
            4.0 * ms_xsy.se);
  add_check(report.verdicts, "ks_correct_centering", ks, threshold);
  // passes when the wrongly centered statistic exceeds the threshold
  add_check(report.verdicts, "ks_wrong_centering_fails", threshold, ks_wrong);
  return report;
}

ExperimentReport run_wrong_centering_experiment(const ExperimentConfig& cfg) {
  const MixedPoissonModel& model = require_model(cfg);
  return run_wrong_centering_experiment(model, cfg.sample_size, cfg.master_seed,
                                        cfg.workers, cfg.cdf_tolerance);
}

ExperimentReport run_point_mass_experiment(const MixedPoissonModel& model,
                                           const std::vector<double>& rho_schedule,
                                           std::int64_t n, std::uint64_t seed,
                                           int workers) {
  if (n < 1000) throw std::invalid_argument("sample_size must be at least 1000");
  validate_schedule(rho_schedule);
  const MixingDistribution& mixing = model.mixing();
  if (mixing.kind() != MixingDistribution::Kind::ZeroInflated) {
    throw std::invalid_argument(
        "point-mass experiment requires a zero-inflated mixing distribution");
  }
  const double p =
      std::get<MixingDistribution::ZeroInflatedParams>(mixing.params()).p;
  const int n_workers = resolve_workers(workers);
  const NormalVarianceMixtureCdf cdf(mixing);
  const double jump = cdf.atom_at_zero();

  ExperimentReport report;
  report.experiment = "point-mass";
  report.workers_used = n_workers;

  for (std::size_t r = 0; r < rho_schedule.size(); ++r) {
    const double rho = rho_schedule[r];
    const MixedPoissonModel model_r(mixing, rho);
    const double sqrt_rho = std::sqrt(rho);
    const std::int64_t n_chunks = chunk_count(n);
    std::vector<std::int64_t> zero_counts(n_chunks, 0);
    parallel_chunks(n_workers, n_chunks, [&](std::int64_t c) {
      RandomEngine rng = make_stream(seed, stream_id(StreamTag::PointMass, r), c);
      for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
        const CoupledSample s = model_r.sample_coupled(rng);
        const double z = (static_cast<double>(s.y) - rho * s.x) / sqrt_rho;
        if (z == 0.0) ++zero_counts[c];
      }
    });
    std::int64_t zeros = 0;
    for (std::int64_t c : zero_counts) zeros += c;
    const double freq = static_cast<double>(zeros) / static_cast<double>(n);
    const double band = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));

    RhoRecord rec;
    rec.rho = rho;
    rec.point_mass_freq = freq;
    rec.point_mass_band = band;
    rec.cdf_jump_at_zero = jump;
    report.per_rho.push_back(std::move(rec));
    add_check(report.verdicts, fmt_id("point_mass_freq[rho=%g]", rho), p - band, freq);
  }
  add_check(report.verdicts, "cdf_jump_at_zero", std::abs(jump - p), 0.0);
  return report;
}

ExperimentReport run_point_mass_experiment(const ExperimentConfig& cfg) {
  const MixedPoissonModel& model = require_model(cfg);
  return run_point_mass_experiment(model, cfg.rho_schedule, cfg.sample_size,
                                   cfg.master_seed, cfg.workers);
}

ExperimentReport run_multivariate_experiment(const ExperimentConfig& cfg) {
  if (cfg.sample_size < 1000) {
    throw std::invalid_argument("sample_size must be at least 1000");
  }
  if (!cfg.multi_model) {
    throw std::invalid_argument("multivariate experiment requires a multivariate model");
  }
  const MultiMixedPoissonModel& model = *cfg.multi_model;
  const std::size_t m = model.dimension();
  const std::vector<double>& rhos = model.rhos();
  const std::int64_t n = cfg.sample_size;
  const int workers = resolve_workers(cfg.workers);
  const std::int64_t n_chunks = chunk_count(n);

  // z[j][i] = (y_j - rho_j x_j) / sqrt(rho_j) for draw i
  std::vector<std::vector<double>> z(m, std::vector<double>(n));
  parallel_chunks(workers, n_chunks, [&](std::int64_t c) {
    RandomEngine rng = make_stream(cfg.master_seed, stream_id(StreamTag::Multivariate, 0), c);
    std::vector<CoupledSample> draw(m);
    for (std::int64_t i = chunk_begin(c); i < chunk_end(c, n); ++i) {
      model.sample_coupled_vector(rng, draw);
      for (std::size_t j = 0; j < m; ++j) {
        z[j][i] = (static_cast<double>(draw[j].y) - rhos[j] * draw[j].x) /
                  std::sqrt(rhos[j]);
      }
    }
  });

  ExperimentReport report;
  report.experiment = "multivariate";
  report.workers_used = workers;

  // Coordinate means and standard deviations (index-ordered, deterministic).
  std::vector<double> mean(m, 0.0), sd(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    Acc a;
    for (std::int64_t i = 0; i < n; ++i) a.add(z[j][i]);
    const MeanSe ms = finish(a, n);
    mean[j] = ms.mean;
    sd[j] = ms.se * std::sqrt(static_cast<double>(n));
  }

  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      const double scale = std::sqrt(rhos[j] * rhos[k]);
      Acc w_product;       // W_j W_k = z_j z_k sqrt(rho_j rho_k)
      Acc centered_prod;   // (z_j - mean_j)(z_k - mean_k)
      for (std::int64_t i = 0; i < n; ++i) {
        w_product.add(z[j][i] * z[k][i] * scale);
        centered_prod.add((z[j][i] - mean[j]) * (z[k][i] - mean[k]));
      }
      const MeanSe ms_w = finish(w_product, n);
      const MeanSe ms_c = finish(centered_prod, n);
      const double cov = centered_prod.sum / static_cast<double>(n - 1);
      const double denom = sd[j] * sd[k];

      PairRecord pair;
      pair.j = j + 1;
      pair.k = k + 1;
      pair.w_product_mean = ms_w.mean;
      pair.w_product_se = ms_w.se;
      pair.corr = denom > 0.0 ? cov / denom : 0.0;
      pair.corr_band = denom > 0.0 ? 4.0 * ms_c.se / denom : 0.0;
      report.pairs.push_back(pair);

      add_check(report.verdicts, fmt_id("cross_w[%zu,%zu]", j + 1, k + 1),
                std::abs(ms_w.mean), 4.0 * ms_w.se);
      add_check(report.verdicts, fmt_id("corr[%zu,%zu]", j + 1, k + 1),
                std::abs(pair.corr), pair.corr_band);
    }
  }

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> sorted = z[j];
    std::sort(sorted.begin(), sorted.end());
    const NormalVarianceMixtureCdf cdf(model.marginal_mixing(j), cfg.cdf_tolerance);
    const double ks = ks_against_mixture(sorted, cdf, workers);
    const double threshold = clt_ks_threshold(rhos[j]);
    RhoRecord rec;
    rec.rho = rhos[j];
    rec.ks = ks;
    rec.ks_threshold = threshold;
    report.per_rho.push_back(std::move(rec));
    add_check(report.verdicts, fmt_id("ks[coord=%zu,rho=%g]", j + 1, rhos[j]), ks,
              threshold);
  }
  return report;
}

}  // namespace mixpois
