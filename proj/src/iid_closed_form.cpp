#include "dsmimo/iid_closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "dsmimo/error.hpp"

namespace dsmimo {

namespace {

using Coeffs = std::array<double, 3>;

double eval(const Coeffs& c, double x) { return ((x + c[2]) * x + c[1]) * x + c[0]; }
double deriv(const Coeffs& c, double x) { return (3.0 * x + 2.0 * c[2]) * x + c[1]; }

// Sum of term magnitudes at x: the size of the rounding error in eval().
double residual_scale(const Coeffs& c, double x) {
  const double ax = std::abs(x);
  return ((ax + std::abs(c[2])) * ax + std::abs(c[1])) * ax + std::abs(c[0]);
}

bool is_root(const Coeffs& c, double x) { return std::abs(eval(c, x)) <= 1e-10 * residual_scale(c, x); }

double polish(const Coeffs& c, double x) {
  for (int k = 0; k < 6; ++k) {
    const double d = deriv(c, x);
    if (d == 0.0) break;
    const double step = eval(c, x) / d;
    if (!std::isfinite(step)) break;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

std::vector<double> real_roots(const Coeffs& c) {
  const double a = c[2], b = c[1], d0 = c[0];
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<double> ys;
  if (disc < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) ys.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
  } else {
    const double sq = std::sqrt(disc);
    ys.push_back(std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq));
  }
  std::vector<double> roots;
  for (double y : ys) roots.push_back(polish(c, y - shift));
  return roots;
}

bool admissible(const IidParams& prm, double w) { return w > 0.0 && prm.eta + (prm.eta - 1.0) * w > 0.0; }

double bisect(const IidParams& prm, const Coeffs& c) {
  double lo = 0.0;
  double hi = prm.eta / prm.sigma2;
  if (prm.eta < 1.0) hi = std::min(hi, prm.eta / (1.0 - prm.eta));
  for (int k = 0; k < 200 && eval(c, hi) <= 0.0; ++k) hi *= 2.0;
  if (!(eval(c, lo) < 0.0 && eval(c, hi) > 0.0)) return NAN;
  for (int k = 0; k < 400 && hi - lo > 1e-17 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (eval(c, mid) < 0.0 ? lo : hi) = mid;
  }
  return polish(c, 0.5 * (lo + hi));
}

}  // namespace

IidParams IidParams::from_dims(std::size_t n, std::size_t l, std::size_t m, double sigma2) {
  if (n == 0 || l == 0 || m == 0) throw InvalidArgument("IidParams: dimensions must be positive");
  return {static_cast<double>(n) / static_cast<double>(m), static_cast<double>(m) / static_cast<double>(l), m, sigma2};
}

void IidParams::validate() const {
  const auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!pos(eta) || !pos(kappa) || !pos(sigma2) || m == 0)
    throw InvalidArgument("IidParams: eta, kappa, sigma2 must be positive and m >= 1");
}

std::array<double, 3> iid_cubic_coefficients(const IidParams& p) {
  const double s2 = p.sigma2, eta = p.eta, ka = p.kappa;
  return {-eta / s2, 1.0 + eta * ka / s2 - 2.0 * eta / s2 + 1.0 / s2, (2.0 * s2 + eta * ka - ka - eta + 1.0) / s2};
}

double solve_cubic_omega(const IidParams& params) {
  params.validate();
  const Coeffs c = iid_cubic_coefficients(params);
  const std::vector<double> roots = real_roots(c);

  std::vector<double> ok;
  for (double w : roots)
    if (admissible(params, w) && is_root(c, w)) ok.push_back(w);
  std::sort(ok.begin(), ok.end());
  ok.erase(std::unique(ok.begin(), ok.end(), [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(x, y); }),
           ok.end());

  if (ok.size() == 1) return ok.front();

  std::ostringstream msg;
  msg.precision(17);
  msg << "solve_cubic_omega: ";
  if (ok.size() > 1) {
    msg << "multiple admissible roots:";
    for (double w : ok) msg << ' ' << w;
    throw NumericalError(msg.str());
  }
  const double w = bisect(params, c);
  if (std::isfinite(w) && admissible(params, w) && is_root(c, w)) return w;
  msg << "no admissible root; real roots:";
  for (double x : roots) msg << ' ' << x;
  throw NumericalError(msg.str());
}

MIStatistics iid_statistics(const IidParams& params) {
  const double w = solve_cubic_omega(params);
  const double eta = params.eta, ka = params.kappa, s2 = params.sigma2;
  const double m = static_cast<double>(params.m);
  const double wb = 1.0 / (1.0 + w);
  const double delta = (eta * ka - ka * w / (1.0 + w)) / s2;
  if (!(delta > 0.0)) throw NumericalError("iid_statistics: delta is not positive (admissibility violated)");

  MIStatistics st;
  st.solution = {delta, w, wb, s2, 0, std::abs(eval(iid_cubic_coefficients(params), w))};
  st.mean = m * (std::log1p(w) - (eta - 1.0 / ka) * std::log1p(-w / (eta * (1.0 + w))) - std::log(s2) / ka -
                 std::log(w) / ka + std::log(eta) / ka - 2.0 * w / (1.0 + w));

  const double dw2 = delta * wb * wb;
  const double delta_iid = (1.0 + dw2) * delta * (s2 + ka * w * wb * wb / (delta * (1.0 + dw2))) / (eta * ka * (1.0 + delta * wb));
  if (!(delta_iid > 0.0 && delta_iid < 1.0)) throw NumericalError("iid_statistics: Delta_iid outside (0, 1)");
  st.variance = -std::log(delta_iid);

  // Unit spectra: every trace is a dimension ratio times a scalar.
  ResolventMoments& mo = st.moments;
  const double gr = 1.0 / (s2 + ka * w * wb / delta);
  const double gs = 1.0 / (1.0 / delta + wb);
  const double gt = 1.0 / (1.0 + w);
  mo.nu_r = mo.nu_r_i = eta * ka * gr * gr;
  mo.nu_s = mo.nu_s_i = gs * gs / ka;
  mo.nu_t = mo.nu_t_i = gt * gt;
  mo.delta_s = 1.0 - mo.nu_s * mo.nu_t;
  const double d2 = delta * delta;
  mo.theta = ka * w * wb / d2 - ka * mo.nu_s_i * mo.nu_t_i / (d2 * delta * mo.delta_s);
  mo.delta_cap = 1.0 - ka * w * wb * mo.nu_r / d2 + ka * mo.nu_r * mo.nu_s_i * mo.nu_t_i / (d2 * delta * mo.delta_s);
  return st;
}

RayleighLimit rayleigh_limit_stats(double eta, double rho) {
  if (!(eta > 0.0) || !(rho > 0.0)) throw InvalidArgument("rayleigh_limit_stats: eta and rho must be positive");
  const double s2 = 1.0 / rho;
  const double v = 0.5 * (eta + 1.0 + s2 - std::sqrt((1.0 + s2 + eta) * (1.0 + s2 + eta) - 4.0 * eta));
  RayleighLimit out;
  out.v = v;
  out.mean_per_m = eta * std::log1p(rho - rho * v) + std::log1p(eta * rho - rho * v) - v;
  out.variance = -std::log1p(-v * v / eta);
  return out;
}

RankDeficientLimit rank_deficient_limit(const IidParams& p) {
  p.validate();
  const double rho = 1.0 / p.sigma2;
  const double l = p.n_scat();
  RankDeficientLimit out;
  out.omega = 1.0 / p.kappa + (1.0 - p.eta * rho) / (p.eta * rho * p.kappa * p.kappa);
  out.delta = (p.eta * p.kappa - 1.0) / p.sigma2;
  out.mean = l * std::log(p.n_rx() / (l * p.sigma2));
  out.variance = -std::log1p(-(1.0 + p.eta) / (p.eta * p.kappa));
  return out;
}

}  // namespace dsmimo
