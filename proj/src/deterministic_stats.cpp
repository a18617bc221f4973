#include "dsmimo/deterministic_stats.hpp"

#include <cmath>

#include "dsmimo/normal.hpp"

namespace dsmimo {

namespace {

constexpr double kGuardSlack = 1e-12;

double emi_at(const ChannelProfile& p, const FixedPointSolution& sol) {
  const double l = static_cast<double>(p.n_scat());
  const double m = static_cast<double>(p.n_tx());
  const double coupling = m * sol.omega * sol.omega_bar / (p.sigma2 * l * sol.delta);
  double c = 0.0;
  for (double r : p.r) c += std::log1p(coupling * r);
  for (double s : p.s) c += std::log1p(sol.delta * sol.omega_bar * s);
  for (double t : p.t) c += std::log1p(sol.omega * t);
  return c - 2.0 * m * sol.omega * sol.omega_bar;
}

double variance_from(const ResolventMoments& mo) {
  const auto inside = [](double v) { return v > 0.0 && v < 1.0 + kGuardSlack; };
  if (!inside(mo.delta_cap) || !inside(mo.delta_s))
    throw NumericalError("deterministic_variance: Delta or Delta_S outside (0, 1); fixed point is inconsistent");
  const double v = -std::log(mo.delta_cap) - std::log(mo.delta_s);
  if (!(v > 0.0) || !std::isfinite(v)) throw NumericalError("deterministic_variance: variance is not positive and finite");
  return v;
}

}  // namespace

MIStatistics deterministic_statistics(const ChannelProfile& profile, const SolverOptions& options) {
  MIStatistics st;
  st.solution = solve_fixed_point(profile, profile.sigma2, options);
  st.moments = resolvent_moments(profile, st.solution);
  st.mean = emi_at(profile, st.solution);
  st.variance = variance_from(st.moments);
  return st;
}

double deterministic_emi(const ChannelProfile& profile, const SolverOptions& options) {
  return emi_at(profile, solve_fixed_point(profile, profile.sigma2, options));
}

double deterministic_variance(const ChannelProfile& profile, const SolverOptions& options) {
  const FixedPointSolution sol = solve_fixed_point(profile, profile.sigma2, options);
  return variance_from(resolvent_moments(profile, sol));
}

double outage_probability(double rate, const MIStatistics& stats) {
  if (!(stats.variance > 0.0)) throw InvalidArgument("outage_probability: variance must be positive");
  return std_normal_cdf((rate - stats.mean) / std::sqrt(stats.variance));
}

double outage_rate(double p_out, const MIStatistics& stats) {
  if (!(p_out > 0.0 && p_out < 1.0)) throw InvalidArgument("outage_rate: p_out must lie in (0, 1)");
  return stats.mean + std::sqrt(stats.variance) * std_normal_quantile(p_out);
}

}  // namespace dsmimo
