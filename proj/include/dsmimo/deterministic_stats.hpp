#pragma once

#include "dsmimo/channel_model.hpp"
#include "dsmimo/fixed_point.hpp"

namespace dsmimo {

/// Large-system mean and variance of C = log det(I + H H^H / sigma2), in nats.
struct MIStatistics {
  double mean = 0.0;
  double variance = 0.0;
  FixedPointSolution solution{};
  ResolventMoments moments{};
};

/// Mean and variance from one fixed-point solve at z = sigma2.
/// Throws NumericalError if Delta or Delta_S leaves (0, 1) by more than 1e-12.
MIStatistics deterministic_statistics(const ChannelProfile& profile, const SolverOptions& options = {});

/// sum_i log(1 + M omega omega_bar r_i/(sigma2 L delta)) + sum_j log(1 + delta omega_bar s_j)
///   + sum_k log(1 + omega t_k) - 2 M omega omega_bar
double deterministic_emi(const ChannelProfile& profile, const SolverOptions& options = {});

/// -log(Delta) - log(Delta_S)
double deterministic_variance(const ChannelProfile& profile, const SolverOptions& options = {});

/// Gaussian approximation Phi((rate - mean) / sqrt(variance)).
double outage_probability(double rate, const MIStatistics& stats);

/// mean + sqrt(variance) * Phi^{-1}(p_out). Throws InvalidArgument unless 0 < p_out < 1.
double outage_rate(double p_out, const MIStatistics& stats);

}  // namespace dsmimo
