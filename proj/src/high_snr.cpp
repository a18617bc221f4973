#include "dsmimo/high_snr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "dsmimo/error.hpp"

namespace dsmimo {

namespace {

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidArgument("high-SNR approximation: rho must be positive");
}

}  // namespace

OrderedDims order_dims(std::size_t n, std::size_t l, std::size_t m) {
  if (n == 0 || l == 0 || m == 0) throw InvalidArgument("order_dims: dimensions must be positive");
  std::array<std::size_t, 3> v{n, l, m};
  std::sort(v.begin(), v.end(), std::greater<>());
  OrderedDims o{v[0], v[1], v[2], HighSnrCase::AllDistinctOrLneqM};
  if (o.s_n == o.s_l && o.s_l == o.s_m)
    o.kind = HighSnrCase::AllEqual;
  else if (o.s_l == o.s_m)
    o.kind = HighSnrCase::LeqM_NeqM;
  return o;
}

double high_snr_mean(std::size_t n, std::size_t l, std::size_t m, double rho) {
  check_rho(rho);
  const OrderedDims o = order_dims(n, l, m);
  const double sn = static_cast<double>(o.s_n), sl = static_cast<double>(o.s_l), sm = static_cast<double>(o.s_m);
  const double nn = static_cast<double>(n);
  if (o.kind == HighSnrCase::AllEqual) return sm * (std::log(rho) - 2.0) + 3.0 * sm * std::cbrt(1.0 / rho);

  const double lead = sm * (std::log(rho * nn / sm) - 2.0) - (sn - sm) * std::log1p(-sm / sn);
  if (o.kind == HighSnrCase::AllDistinctOrLneqM) return lead - (sl - sm) * std::log1p(-sm / sl);
  return lead + 2.0 * sm / std::sqrt(nn * rho / sm) / std::sqrt(1.0 - sm / sn);
}

double high_snr_variance(std::size_t n, std::size_t l, std::size_t m, double rho) {
  check_rho(rho);
  const OrderedDims o = order_dims(n, l, m);
  const double sn = static_cast<double>(o.s_n), sl = static_cast<double>(o.s_l), sm = static_cast<double>(o.s_m);
  const double nn = static_cast<double>(n);
  switch (o.kind) {
    case HighSnrCase::AllDistinctOrLneqM:
      return -std::log((1.0 - sm / sl) * (1.0 - sm / sn));
    case HighSnrCase::LeqM_NeqM:
      return 0.5 * std::log(rho * nn / (4.0 * (1.0 - sm / sn) * sm)) +
             (1.0 - 2.0 * sm / sn) / std::sqrt(nn * rho / sm) / std::sqrt(1.0 - sm / sn);
    case HighSnrCase::AllEqual:
      break;
  }
  return 2.0 * std::log(rho) / 3.0 - std::log(3.0) + 4.0 * std::cbrt(1.0 / rho) / 3.0;
}

RayleighHighSnr rayleigh_high_snr(std::size_t m, std::size_t n, double rho) {
  check_rho(rho);
  if (m == 0 || n == 0) throw InvalidArgument("rayleigh_high_snr: dimensions must be positive");
  const double um = static_cast<double>(std::min(m, n)), un = static_cast<double>(std::max(m, n));
  const double nn = static_cast<double>(n);
  RayleighHighSnr out;
  if (m == n) {
    out.mean = um * (std::log(rho * nn / um) - 1.0);
    out.variance = 0.5 * (std::log(rho / 4.0) + 2.0 / std::sqrt(rho));
  } else {
    out.mean = um * (std::log(rho * nn / um) - 1.0) - (un - um) * std::log1p(-um / un);
    out.variance = -std::log1p(-um / un);
  }
  return out;
}

}  // namespace dsmimo
