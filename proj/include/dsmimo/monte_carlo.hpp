#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dsmimo/channel_model.hpp"
#include "dsmimo/deterministic_stats.hpp"
#include "dsmimo/matrix.hpp"
#include "dsmimo/rng.hpp"

namespace dsmimo {

/// Trials per replica block. Block b draws from substream (seed, stream_id, b),
/// so results depend on (seed, stream_id, n) and this constant only.
inline constexpr std::size_t kTrialBlockSize = 256;

/// Scratch buffers reused across draws.
struct ChannelWorkspace {
  ComplexMatrix left;   ///< R^{1/2} X S^{1/2}, N x L
  ComplexMatrix right;  ///< Y T^{1/2}, L x M
  ComplexMatrix flipped;
  ComplexMatrix gram;
};

/// H = diag(sqrt r) X diag(sqrt s) Y diag(sqrt t), X ~ CN(0, 1/L) N x L and
/// Y ~ CN(0, 1/M) L x M, drawn in that order, row-major.
void sample_channel(const ChannelProfile& profile, NormalSampler& sampler, ChannelWorkspace& ws, ComplexMatrix& h);

/// One draw from block 0 of `rng`.
ComplexMatrix sample_channel(const ChannelProfile& profile, RngStream rng);

/// log det(I + H H^H / sigma2) via Cholesky of the smaller Gram matrix.
/// Throws InvalidArgument for sigma2 <= 0 or non-finite entries.
double mutual_information(const ComplexMatrix& h, double sigma2);
double mutual_information(const ComplexMatrix& h, double sigma2, ChannelWorkspace& ws);

struct KsResult {
  double statistic = 0.0;
  double pvalue = 1.0;
};

/// Asymptotic Kolmogorov survival function P(K > lambda).
double kolmogorov_pvalue(double lambda);

/// One-sample Kolmogorov-Smirnov test against N(0, 1). Needs >= 8 samples.
KsResult ks_test(std::span<const double> standardized);

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MonteCarloReport {
  std::vector<double> samples;  ///< MI per trial, nats, in trial order
  std::size_t n = 0;
  double emp_mean = 0.0;
  double emp_var = 0.0;  ///< unbiased
  double ks_statistic = 0.0;
  double ks_pvalue = 1.0;
  std::vector<double> standardized;  ///< (C - mean) / sqrt(variance) with the deterministic moments
  RngStream seed{};
};

struct RunOptions {
  /// Worker threads; 0 means hardware concurrency capped by DSMIMO_THREADS.
  std::size_t threads = 0;
};

/// Worker count used when RunOptions::threads == 0.
std::size_t default_thread_count();

/// n independent MI draws at profile.sigma2. Output never depends on the
/// thread count. KS fields are NaN when n < 8. Throws InvalidArgument for n < 2.
MonteCarloReport run_trials(const ChannelProfile& profile, std::size_t n, RngStream rng, const MIStatistics& stats,
                            const RunOptions& options = {});

/// Fraction of samples strictly below each rate.
std::vector<double> empirical_outage(std::span<const double> samples, std::span<const double> rate_grid);

struct QqPoint {
  double theoretical;
  double empirical;
};

/// Sorted samples against Phi^{-1}((i - 0.5) / n).
std::vector<QqPoint> qq_points(std::span<const double> standardized);

using ProfileFamily = std::function<ChannelProfile(std::size_t size)>;

struct ConvergencePoint {
  std::size_t size = 0;
  double bias = 0.0;     ///< |emp_mean - mean|
  double var_gap = 0.0;  ///< |emp_var - variance|
  double mean_stderr = 0.0;
  double emp_mean = 0.0;
  double mean = 0.0;
  double emp_var = 0.0;
  double variance = 0.0;
};

/// Monte Carlo bias of the deterministic moments along a family of growing
/// systems. Size k uses stream (seed, stream_id + k). Sizes must be strictly
/// increasing.
std::vector<ConvergencePoint> convergence_probe(const ProfileFamily& family, std::span<const std::size_t> sizes,
                                                std::size_t n, RngStream rng, const RunOptions& options = {});

}  // namespace dsmimo
