#pragma once

#include <array>
#include <cstddef>

#include "dsmimo/deterministic_stats.hpp"

namespace dsmimo {

/// Rayleigh-product (identity correlation) channel described by the ratios
/// eta = N/M and kappa = M/L, the transmit dimension M and the noise power.
struct IidParams {
  double eta = 1.0;
  double kappa = 1.0;
  std::size_t m = 1;
  double sigma2 = 1.0;

  static IidParams from_dims(std::size_t n, std::size_t l, std::size_t m, double sigma2);

  double n_rx() const noexcept { return eta * static_cast<double>(m); }
  double n_scat() const noexcept { return static_cast<double>(m) / kappa; }

  /// Throws InvalidArgument unless eta, kappa, sigma2 are positive and m >= 1.
  void validate() const;
};

/// Monic cubic omega^3 + c[2] omega^2 + c[1] omega + c[0] whose admissible
/// root (omega > 0, eta + (eta - 1) omega > 0) couples the i.i.d. system.
std::array<double, 3> iid_cubic_coefficients(const IidParams& params);

/// The admissible root. Closed-form (trigonometric / Cardano) roots are
/// Newton-polished and filtered; bracketed bisection takes over when the
/// closed form yields no admissible root. Throws NumericalError when two
/// distinct admissible roots appear or none can be found.
double solve_cubic_omega(const IidParams& params);

/// Mean, variance, (delta, omega, omega_bar) and resolvent moments from the
/// closed form. `solution.residual` holds |P(omega)|.
MIStatistics iid_statistics(const IidParams& params);

/// Single-Rayleigh statistics reached as kappa -> 0.
struct RayleighLimit {
  double mean_per_m = 0.0;
  double variance = 0.0;
  double v = 0.0;
};

RayleighLimit rayleigh_limit_stats(double eta, double rho);

/// Leading-order behaviour for kappa -> infinity (few scatterers):
/// omega ~ 1/kappa + (1 - eta rho)/(eta rho kappa^2), delta ~ (eta kappa - 1)/sigma2,
/// mean ~ L log(N/(L sigma2)), variance ~ -log(1 - (1 + eta)/(eta kappa)).
struct RankDeficientLimit {
  double omega = 0.0;
  double delta = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

RankDeficientLimit rank_deficient_limit(const IidParams& params);

}  // namespace dsmimo
