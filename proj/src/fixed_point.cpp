#include "dsmimo/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dsmimo {

namespace {

struct Dims {
  double n, l, m;
};

Dims dims_of(const ChannelProfile& p) {
  return {static_cast<double>(p.n_rx()), static_cast<double>(p.n_scat()), static_cast<double>(p.n_tx())};
}

double map_omega_bar(const ChannelProfile& p, double omega) {
  double acc = 0.0;
  for (double t : p.t) acc += t / (1.0 + omega * t);
  return acc / static_cast<double>(p.n_tx());
}

double map_omega(const ChannelProfile& p, double delta, double omega_bar) {
  double acc = 0.0;
  const double inv = 1.0 / delta;
  for (double s : p.s) acc += s / (inv + omega_bar * s);
  return acc / static_cast<double>(p.n_tx());
}

double map_delta(const ChannelProfile& p, double z, const Triple& x) {
  const Dims d = dims_of(p);
  const double coupling = d.m * x.omega * x.omega_bar / (d.l * x.delta);
  double acc = 0.0;
  for (double r : p.r) acc += r / (z + coupling * r);
  return acc / d.l;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

Triple fixed_point_residuals(const ChannelProfile& profile, double z, const Triple& x) {
  return {std::abs(x.delta - map_delta(profile, z, x)), std::abs(x.omega - map_omega(profile, x.delta, x.omega_bar)),
          std::abs(x.omega_bar - map_omega_bar(profile, x.omega))};
}

bool ParameterBounds::contains(const FixedPointSolution& s, double rel_slack) const noexcept {
  const double lo = 1.0 - rel_slack, hi = 1.0 + rel_slack;
  return s.delta >= delta_lo * lo && s.delta <= delta_hi * hi && s.omega / s.delta <= omega_over_delta_hi * hi &&
         s.omega_bar <= omega_bar_hi * hi;
}

ParameterBounds parameter_bounds(const ChannelProfile& profile, double z) {
  const Dims d = dims_of(profile);
  const double rmax = max_of(profile.r), smax = max_of(profile.s), tmax = max_of(profile.t);
  const double rbar = sum_of(profile.r) / d.n;
  return {d.n * rbar / (d.l * (z + rmax * smax * tmax)), d.n * rmax / (d.l * z), d.l * smax / d.m, tmax};
}

FixedPointSolution solve_fixed_point(const ChannelProfile& profile, double z, const SolverOptions& options) {
  profile.validate();
  if (!(z > 0.0) || !std::isfinite(z)) throw InvalidArgument("solve_fixed_point: z must be positive");
  if (!(options.tol > 0.0)) throw InvalidArgument("solve_fixed_point: tol must be positive");
  if (!(options.damping > 0.0 && options.damping <= 1.0))
    throw InvalidArgument("solve_fixed_point: damping must lie in (0, 1]");

  const Dims d = dims_of(profile);
  Triple x = options.initial.value_or(
      Triple{sum_of(profile.r) / (d.l * z), sum_of(profile.s) / d.m, sum_of(profile.t) / d.m});
  if (!(x.delta > 0.0 && x.omega > 0.0 && x.omega_bar > 0.0))
    throw InvalidArgument("solve_fixed_point: initial point must be positive");

  double alpha = options.damping;
  double prev_update = INFINITY;
  FixedPointSolution sol{x.delta, x.omega, x.omega_bar, z, 0, INFINITY};

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    Triple next = x;
    next.omega_bar = x.omega_bar + alpha * (map_omega_bar(profile, x.omega) - x.omega_bar);
    next.omega = x.omega + alpha * (map_omega(profile, x.delta, next.omega_bar) - x.omega);
    next.delta = x.delta + alpha * (map_delta(profile, z, {x.delta, next.omega, next.omega_bar}) - x.delta);

    const double update = std::max({std::abs(next.delta - x.delta), std::abs(next.omega - x.omega),
                                    std::abs(next.omega_bar - x.omega_bar)});
    x = next;
    sol = {x.delta, x.omega, x.omega_bar, z, it, update};

    if (update <= options.tol) {
      const Triple res = fixed_point_residuals(profile, z, x);
      if (std::max({res.delta, res.omega, res.omega_bar}) <= options.tol) {
        if (!parameter_bounds(profile, z).contains(sol))
          throw NumericalError("solve_fixed_point: solution violates the a-priori parameter bounds");
        return sol;
      }
    }
    if (update > 2.0 * prev_update && alpha > 1.0 / 1024.0)
      alpha *= 0.5;
    else if (update < prev_update)
      alpha = std::min(options.damping, 1.5 * alpha);
    prev_update = update;
    if (!std::isfinite(update) || !(x.delta > 0.0) || !(x.omega > 0.0) || !(x.omega_bar > 0.0)) break;
  }

  std::ostringstream msg;
  msg << "solve_fixed_point: no convergence after " << sol.iterations << " iterations (last update "
      << sol.residual << ")";
  throw ConvergenceError(msg.str(), sol);
}

ResolventMoments resolvent_moments(const ChannelProfile& profile, const FixedPointSolution& sol) {
  const Dims d = dims_of(profile);
  const double coupling = d.m * sol.omega * sol.omega_bar / (d.l * sol.delta);
  ResolventMoments mo;
  for (double r : profile.r) {
    const double g = 1.0 / (sol.z + coupling * r);
    mo.nu_r += r * r * g * g;
    mo.nu_r_i += r * g * g;
  }
  mo.nu_r /= d.l;
  mo.nu_r_i /= d.l;
  for (double s : profile.s) {
    const double g = 1.0 / (1.0 / sol.delta + sol.omega_bar * s);
    mo.nu_s += s * s * g * g;
    mo.nu_s_i += s * g * g;
  }
  mo.nu_s /= d.m;
  mo.nu_s_i /= d.m;
  for (double t : profile.t) {
    const double g = 1.0 / (1.0 + sol.omega * t);
    mo.nu_t += t * t * g * g;
    mo.nu_t_i += t * g * g;
  }
  mo.nu_t /= d.m;
  mo.nu_t_i /= d.m;

  mo.delta_s = 1.0 - mo.nu_s * mo.nu_t;
  const double d2 = sol.delta * sol.delta;
  mo.theta = d.m * sol.omega * sol.omega_bar / (d.l * d2) - d.m * mo.nu_s_i * mo.nu_t_i / (d.l * d2 * sol.delta * mo.delta_s);
  mo.delta_cap = 1.0 - d.m * sol.omega * sol.omega_bar * mo.nu_r / (d.l * d2) +
                 d.m * mo.nu_r * mo.nu_s_i * mo.nu_t_i / (d.l * d2 * sol.delta * mo.delta_s);
  return mo;
}

}  // namespace dsmimo
