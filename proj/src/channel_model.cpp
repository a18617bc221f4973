#include "dsmimo/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsmimo/error.hpp"

namespace dsmimo {

namespace {

void check_spectrum(const std::vector<double>& v, const char* name) {
  if (v.empty()) throw InvalidArgument(std::string("ChannelProfile: spectrum ") + name + " is empty");
  bool positive = false;
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0)
      throw InvalidArgument(std::string("ChannelProfile: spectrum ") + name + " has a negative or non-finite entry");
    positive = positive || x > 0.0;
  }
  if (!positive) throw InvalidArgument(std::string("ChannelProfile: spectrum ") + name + " is identically zero");
}

// Raw eigenvalues of a PSD matrix with round-off negatives flushed to zero.
std::vector<double> psd_spectrum(const HermitianMatrix& m, double tol, ClipReport& acc, const char* name) {
  ClipReport rep;
  std::vector<double> values = hermitian_eigenvalues(m, tol, &rep);
  acc.count += rep.count;
  acc.mass += rep.mass;
  for (double x : values)
    if (x < 0.0) throw InvalidArgument(std::string(name) + " is not positive semidefinite");
  return values;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& m, double tol, const char* name) {
  const EigenDecomposition eig = hermitian_eigen(m);
  double scale = 0.0;
  for (double x : eig.values) scale = std::max(scale, std::abs(x));
  const std::size_t n = m.dim();
  ComplexMatrix root(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam < -tol * scale) throw InvalidArgument(std::string(name) + " is not positive semidefinite");
    const double sq = std::sqrt(std::max(lam, 0.0));
    if (sq == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) root(i, j) += sq * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return HermitianMatrix(root, 1e-8);
}

}  // namespace

ChannelProfile ChannelProfile::iid(std::size_t n, std::size_t l, std::size_t m, double sigma2) {
  return ChannelProfile{std::vector<double>(n, 1.0), std::vector<double>(l, 1.0), std::vector<double>(m, 1.0), sigma2};
}

void ChannelProfile::validate() const {
  check_spectrum(r, "r");
  check_spectrum(s, "s");
  check_spectrum(t, "t");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw InvalidArgument("ChannelProfile: sigma2 must be positive");
}

HermitianMatrix correlation_matrix(const CorrelationSpec& spec) {
  if (spec.n == 0) throw InvalidArgument("correlation_matrix: element count must be positive");
  const std::size_t n = spec.n;
  if (n == 1) return HermitianMatrix::identity(1);

  std::vector<double> cosines(n);
  const double half = 0.5 * static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = static_cast<double>(k) - half;
    cosines[k] = std::cos(std::numbers::pi / 2 + m * spec.theta / static_cast<double>(n - 1) + spec.mu);
  }

  // Toeplitz: entry (i,j) depends on i - j only, and the negative lag is the conjugate.
  std::vector<cplx> lag(n);
  for (std::size_t diff = 0; diff < n; ++diff) {
    cplx acc = 0.0;
    for (double c : cosines) acc += std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(diff) * spec.d * c);
    lag[diff] = acc / static_cast<double>(n);
  }
  lag[0] = 1.0;

  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = i >= j ? lag[i - j] : std::conj(lag[j - i]);
  return HermitianMatrix(m);
}

HermitianMatrix absorb_transmit_covariance(const HermitianMatrix& phi_t, const HermitianMatrix& w, double tol) {
  if (phi_t.dim() != w.dim()) throw InvalidArgument("absorb_transmit_covariance: dimension mismatch");
  ClipReport unused;
  psd_spectrum(w, tol, unused, "transmit covariance");
  const HermitianMatrix root = psd_sqrt(phi_t, tol, "transmit correlation");
  return HermitianMatrix(multiply(multiply(root.matrix(), w.matrix()), root.matrix()), 1e-8);
}

ChannelProfile profile_from_correlations(const HermitianMatrix& phi_r, const HermitianMatrix& phi_s,
                                         const HermitianMatrix& phi_t, double sigma2, double tol,
                                         ClipReport* clipped) {
  if (!(sigma2 > 0.0)) throw InvalidArgument("profile_from_correlations: sigma2 must be positive");
  ClipReport acc;
  ChannelProfile p{psd_spectrum(phi_r, tol, acc, "receive correlation"),
                   psd_spectrum(phi_s, tol, acc, "scatterer correlation"),
                   psd_spectrum(phi_t, tol, acc, "transmit correlation"), sigma2};
  if (clipped) *clipped = acc;
  p.validate();
  return p;
}

}  // namespace dsmimo
