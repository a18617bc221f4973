#pragma once

#include <cstddef>
#include <optional>

#include "dsmimo/channel_model.hpp"
#include "dsmimo/error.hpp"

namespace dsmimo {

/// Positive solution (delta, omega, omega_bar) of the coupled system
///   delta     = (1/L) sum_i r_i / (z + (M omega omega_bar / (L delta)) r_i)
///   omega     = (1/M) sum_j s_j / (1/delta + omega_bar s_j)
///   omega_bar = (1/M) sum_k t_k / (1 + omega t_k)
struct FixedPointSolution {
  double delta = 0.0;
  double omega = 0.0;
  double omega_bar = 0.0;
  double z = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;  ///< max absolute componentwise update at exit
};

struct Triple {
  double delta;
  double omega;
  double omega_bar;
};

struct SolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
  double damping = 1.0;              ///< initial relaxation factor in (0, 1]
  std::optional<Triple> initial{};   ///< overrides the default start point
};

/// Thrown when the sweep does not meet both stopping tests within max_iter.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, FixedPointSolution last) : Error(what), last_(last) {}
  const FixedPointSolution& last_iterate() const noexcept { return last_; }

 private:
  FixedPointSolution last_;
};

/// Componentwise absolute residuals of the three equations at (delta, omega, omega_bar).
Triple fixed_point_residuals(const ChannelProfile& profile, double z, const Triple& x);

/// A-priori brackets valid for every z > 0:
///   N rbar / (L (z + rmax smax tmax)) <= delta <= N rmax / (L z),
///   omega / delta <= L smax / M,  omega_bar <= tmax.
struct ParameterBounds {
  double delta_lo;
  double delta_hi;
  double omega_over_delta_hi;
  double omega_bar_hi;

  bool contains(const FixedPointSolution& s, double rel_slack = 1e-9) const noexcept;
};

ParameterBounds parameter_bounds(const ChannelProfile& profile, double z);

/// Gauss-Seidel sweep omega_bar <- f(omega), omega <- g(delta, omega_bar),
/// delta <- h(delta, omega, omega_bar), relaxed by a damping factor that is
/// halved when the update size more than doubles and regrown (up to
/// options.damping) while it shrinks. Converged once the update size and
/// every equation residual are both <= tol. The result is checked against
/// parameter_bounds(); a violation throws NumericalError.
/// Throws InvalidArgument for an invalid profile or z <= 0, ConvergenceError
/// when max_iter is exhausted.
FixedPointSolution solve_fixed_point(const ChannelProfile& profile, double z, const SolverOptions& options = {});

/// Scalar functionals of the deterministic resolvent approximations
///   G_R = (z + (M omega omega_bar/(L delta)) r)^-1,
///   G_S = (1/delta + omega_bar s)^-1,  G_T = (1 + omega t)^-1
/// (all entrywise, the matrices being diagonal).
struct ResolventMoments {
  double nu_r = 0.0;    ///< (1/L) Tr R^2 G_R^2
  double nu_r_i = 0.0;  ///< (1/L) Tr R G_R^2
  double nu_s = 0.0;    ///< (1/M) Tr S^2 G_S^2
  double nu_s_i = 0.0;  ///< (1/M) Tr S G_S^2
  double nu_t = 0.0;    ///< (1/M) Tr T^2 G_T^2
  double nu_t_i = 0.0;  ///< (1/M) Tr T G_T^2
  double delta_s = 0.0;    ///< 1 - nu_s nu_t
  double delta_cap = 0.0;  ///< Delta; algebraically equal to 1 - theta nu_r
  double theta = 0.0;      ///< M omega omega_bar/(L delta^2) - M nu_s_i nu_t_i/(L delta^3 delta_s)
};

ResolventMoments resolvent_moments(const ChannelProfile& profile, const FixedPointSolution& sol);

}  // namespace dsmimo
