#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "dsmimo/monte_carlo.hpp"
#include "dsmimo/scenario.hpp"

namespace dsmimo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr std::size_t kDefaultTrials = 10'000;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::size_t kOutageGridPoints = 101;

/// "%.17g"
std::string format_number(double v);

/// Writes a header line and `pairs` as a two-column CSV.
void write_pairs_csv(std::ostream& out, std::string_view h1, std::string_view h2,
                     std::span<const double> a, std::span<const double> b);

/// snr_db,mean_nats,mean_bits,variance,outage (outage empty without a rate).
/// Rows whose solve fails are reported on `err` and skipped; returns 3 then.
int cmd_stats(const Scenario& s, std::ostream& out, std::ostream& err);

/// Closed form for identity correlations:
/// snr_db,omega,delta,omega_bar,mean_nats,mean_bits,variance.
int cmd_iid(const Scenario& s, std::ostream& out, std::ostream& err);

/// rho_db,exact_mean,approx_mean,exact_var,approx_var,rel_err_mean,rel_err_var.
int cmd_highsnr(const Scenario& s, std::ostream& out, std::ostream& err);

/// JSON with the correlation matrices (when modelled) and the spectra.
int cmd_correlation(const Scenario& s, std::ostream& out, std::ostream& err);

/// Writes samples.csv, qq.csv, outage.csv and summary.json into `out_dir`
/// (one snr_<value> subdirectory per point when the sweep has several).
int cmd_montecarlo(const Scenario& s, const std::filesystem::path& out_dir, std::ostream& err,
                   const RunOptions& options = {});

}  // namespace dsmimo::cli
