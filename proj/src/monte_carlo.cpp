#include "dsmimo/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "dsmimo/error.hpp"
#include "dsmimo/kernels.hpp"
#include "dsmimo/normal.hpp"

namespace dsmimo {

namespace {

void check_sampling_profile(const ChannelProfile& p) {
  if (p.r.empty() || p.s.empty() || p.t.empty()) throw InvalidArgument("sample_channel: empty spectrum");
  for (const auto* v : {&p.r, &p.s, &p.t})
    for (double x : *v)
      if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("sample_channel: spectra must be nonnegative");
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double unbiased_variance(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

void sample_channel(const ChannelProfile& profile, NormalSampler& sampler, ChannelWorkspace& ws, ComplexMatrix& h) {
  const std::size_t n = profile.n_rx(), l = profile.n_scat(), m = profile.n_tx();
  const double var_x = 1.0 / static_cast<double>(l);
  const double var_y = 1.0 / static_cast<double>(m);
  ws.left.resize(n, l);
  ws.right.resize(l, m);
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = std::sqrt(profile.r[i]);
    for (std::size_t j = 0; j < l; ++j) ws.left(i, j) = (ri * std::sqrt(profile.s[j])) * sampler.complex(var_x);
  }
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t k = 0; k < m; ++k) ws.right(j, k) = std::sqrt(profile.t[k]) * sampler.complex(var_y);
  kernels::matmul(ws.left, ws.right, h);
}

ComplexMatrix sample_channel(const ChannelProfile& profile, RngStream rng) {
  check_sampling_profile(profile);
  NormalSampler sampler(SubstreamEngine(rng, 0));
  ChannelWorkspace ws;
  ComplexMatrix h;
  sample_channel(profile, sampler, ws, h);
  return h;
}

double mutual_information(const ComplexMatrix& h, double sigma2, ChannelWorkspace& ws) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidArgument("mutual_information: sigma2 must be positive");
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (const cplx& v : h.row(i))
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidArgument("mutual_information: channel has non-finite entries");
  if (h.rows() == 0 || h.cols() == 0) return 0.0;

  // det(I_N + H H^H) = det(I_M + H^H H); Gram rows of H^T give conj(H^H H).
  const ComplexMatrix* rows = &h;
  if (h.rows() > h.cols()) {
    ws.flipped.resize(h.cols(), h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) ws.flipped(j, i) = h(i, j);
    rows = &ws.flipped;
  }
  kernels::gram_plus_identity(*rows, 1.0 / sigma2, ws.gram);
  return std::max(0.0, kernels::cholesky_logdet(ws.gram));
}

double mutual_information(const ComplexMatrix& h, double sigma2) {
  ChannelWorkspace ws;
  return mutual_information(h, sigma2, ws);
}

double kolmogorov_pvalue(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // Dual theta-series; the alternating form converges poorly for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double j = 2.0 * k - 1.0;
      const double term = std::exp(-j * j * pi2 / (8.0 * lambda * lambda));
      cdf += term;
      if (term < 1e-10 * cdf) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-10) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> standardized) {
  if (standardized.size() < 8) throw InvalidArgument("ks_test: need at least 8 samples");
  std::vector<double> x(standardized.begin(), standardized.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = std_normal_cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_pvalue(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return {d, kolmogorov_pvalue(std::sqrt(nx * ny / (nx + ny)) * d)};
}

std::size_t default_thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DSMIMO_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

MonteCarloReport run_trials(const ChannelProfile& profile, std::size_t n, RngStream rng, const MIStatistics& stats,
                            const RunOptions& options) {
  if (n < 2) throw InvalidArgument("run_trials: need at least 2 trials");
  check_sampling_profile(profile);
  if (!(stats.variance > 0.0)) throw InvalidArgument("run_trials: deterministic variance must be positive");

  MonteCarloReport rep;
  rep.n = n;
  rep.seed = rng;
  rep.samples.assign(n, 0.0);

  const std::size_t blocks = (n + kTrialBlockSize - 1) / kTrialBlockSize;
  const std::size_t workers = std::min(blocks, options.threads ? options.threads : default_thread_count());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    ChannelWorkspace ws;
    ComplexMatrix h;
    try {
      for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
        NormalSampler sampler(SubstreamEngine(rng, b));
        const std::size_t end = std::min(n, (b + 1) * kTrialBlockSize);
        for (std::size_t i = b * kTrialBlockSize; i < end; ++i) {
          sample_channel(profile, sampler, ws, h);
          rep.samples[i] = mutual_information(h, profile.sigma2, ws);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(blocks);
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  rep.emp_mean = mean_of(rep.samples);
  rep.emp_var = unbiased_variance(rep.samples, rep.emp_mean);
  const double sd = std::sqrt(stats.variance);
  rep.standardized.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.standardized[i] = (rep.samples[i] - stats.mean) / sd;
  if (n >= 8) {
    const KsResult ks = ks_test(rep.standardized);
    rep.ks_statistic = ks.statistic;
    rep.ks_pvalue = ks.pvalue;
  } else {
    rep.ks_statistic = rep.ks_pvalue = NAN;
  }
  return rep;
}

std::vector<double> empirical_outage(std::span<const double> samples, std::span<const double> rate_grid) {
  if (samples.empty()) throw InvalidArgument("empirical_outage: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(rate_grid.size());
  for (double rate : rate_grid) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), rate) - sorted.begin();
    out.push_back(static_cast<double>(below) / static_cast<double>(sorted.size()));
  }
  return out;
}

std::vector<QqPoint> qq_points(std::span<const double> standardized) {
  if (standardized.empty()) throw InvalidArgument("qq_points: no samples");
  std::vector<double> sorted(standardized.begin(), standardized.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<QqPoint> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    out.push_back({std_normal_quantile((static_cast<double>(i) + 0.5) / n), sorted[i]});
  return out;
}

std::vector<ConvergencePoint> convergence_probe(const ProfileFamily& family, std::span<const std::size_t> sizes,
                                                std::size_t n, RngStream rng, const RunOptions& options) {
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (sizes[k] <= sizes[k - 1]) throw InvalidArgument("convergence_probe: sizes must be strictly increasing");
  std::vector<ConvergencePoint> out;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const ChannelProfile profile = family(sizes[k]);
    const MIStatistics stats = deterministic_statistics(profile);
    const RngStream stream{rng.seed, rng.stream_id + static_cast<std::uint32_t>(k)};
    const MonteCarloReport rep = run_trials(profile, n, stream, stats, options);
    ConvergencePoint pt;
    pt.size = sizes[k];
    pt.emp_mean = rep.emp_mean;
    pt.mean = stats.mean;
    pt.emp_var = rep.emp_var;
    pt.variance = stats.variance;
    pt.bias = std::abs(rep.emp_mean - stats.mean);
    pt.var_gap = std::abs(rep.emp_var - stats.variance);
    pt.mean_stderr = std::sqrt(rep.emp_var / static_cast<double>(n));
    out.push_back(pt);
  }
  return out;
}

}  // namespace dsmimo
