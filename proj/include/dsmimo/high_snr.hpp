#pragma once

#include <cstddef>

namespace dsmimo {

/// Which closed-form branch applies to the descending-ordered (N, L, M).
enum class HighSnrCase {
  AllDistinctOrLneqM,  ///< S_L != S_M
  LeqM_NeqM,           ///< S_L == S_M != S_N
  AllEqual,            ///< S_N == S_L == S_M
};

struct OrderedDims {
  std::size_t s_n = 0;
  std::size_t s_l = 0;
  std::size_t s_m = 0;
  HighSnrCase kind = HighSnrCase::AllEqual;
};

/// Throws InvalidArgument if any dimension is zero.
OrderedDims order_dims(std::size_t n, std::size_t l, std::size_t m);

/// Moderate-to-high SNR mean of the Rayleigh-product MI (nats). Depends on
/// the dims only through n and the sorted triple. Requires rho > 0.
double high_snr_mean(std::size_t n, std::size_t l, std::size_t m, double rho);

/// Moderate-to-high SNR variance of the Rayleigh-product MI.
double high_snr_variance(std::size_t n, std::size_t l, std::size_t m, double rho);

struct RayleighHighSnr {
  double mean = 0.0;
  double variance = 0.0;
};

/// Single-hop i.i.d. Rayleigh M x N counterpart, for comparison.
RayleighHighSnr rayleigh_high_snr(std::size_t m, std::size_t n, double rho);

}  // namespace dsmimo
