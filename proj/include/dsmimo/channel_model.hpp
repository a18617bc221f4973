#pragma once

#include <cstddef>
#include <vector>

#include "dsmimo/hermitian_eigen.hpp"
#include "dsmimo/matrix.hpp"

namespace dsmimo {

/// Equivalent diagonal-spectrum double-scattering channel
///   H = R^{1/2} X S^{1/2} Y T^{1/2}
/// with R (N receive), S (L scatterers), T (M transmit, input covariance
/// absorbed) diagonal and noise power sigma2.
struct ChannelProfile {
  std::vector<double> r;
  std::vector<double> s;
  std::vector<double> t;
  double sigma2 = 1.0;

  std::size_t n_rx() const noexcept { return r.size(); }
  std::size_t n_scat() const noexcept { return s.size(); }
  std::size_t n_tx() const noexcept { return t.size(); }

  /// Unit spectra (Rayleigh-product channel).
  static ChannelProfile iid(std::size_t n, std::size_t l, std::size_t m, double sigma2);

  ChannelProfile with_sigma2(double v) const {
    ChannelProfile p = *this;
    p.sigma2 = v;
    return p;
  }

  /// Throws InvalidArgument unless every spectrum is nonempty, finite,
  /// nonnegative with a positive entry, and sigma2 is positive and finite.
  void validate() const;
};

/// Uniform-angle-spread linear-array correlation model.
struct CorrelationSpec {
  double mu = 0.0;     ///< mean angle [rad]
  double theta = 0.0;  ///< angle spread [rad]
  double d = 0.0;      ///< element spacing [wavelengths]
  std::size_t n = 1;   ///< element count
};

/// Entry (i,j) = (1/n) sum_m exp(-j 2 pi (i-j) d cos(pi/2 + m theta/(n-1) + mu))
/// over the n symmetric offsets m = -(n-1)/2, ..., (n-1)/2 (half-integers for
/// even n). n = 1 gives the 1x1 identity. Throws InvalidArgument for n = 0.
HermitianMatrix correlation_matrix(const CorrelationSpec& spec);

/// phi_t^{1/2} w phi_t^{1/2}, with the Hermitian square root taken from the
/// eigendecomposition of phi_t. Throws InvalidArgument on a dimension
/// mismatch or when either input has an eigenvalue below -tol * max|lambda|.
HermitianMatrix absorb_transmit_covariance(const HermitianMatrix& phi_t, const HermitianMatrix& w,
                                           double tol = 1e-10);

/// Spectra of the three correlation matrices; round-off negatives are
/// clipped to zero (collected in `clipped` when given).
ChannelProfile profile_from_correlations(const HermitianMatrix& phi_r, const HermitianMatrix& phi_s,
                                         const HermitianMatrix& phi_t, double sigma2, double tol = 1e-10,
                                         ClipReport* clipped = nullptr);

}  // namespace dsmimo
