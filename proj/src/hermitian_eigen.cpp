#include "dsmimo/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dsmimo/error.hpp"

namespace dsmimo {

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double hermitian_defect(const ComplexMatrix& m) {
  if (!m.square()) return INFINITY;
  double scale = 0.0;
  double defect = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      scale = std::max(scale, std::abs(m(i, j)));
      defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  return scale > 0.0 ? defect / scale : 0.0;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw InvalidArgument("HermitianMatrix: matrix is not square");
  const double defect = hermitian_defect(m);
  if (!(defect <= tol))
    throw InvalidArgument("HermitianMatrix: Hermitian defect " + std::to_string(defect) + " exceeds tolerance");
  const std::size_t n = m.rows();
  m_ = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = 0; j < i; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

double HermitianMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i).real();
  return t;
}

EigenDecomposition hermitian_eigen(const HermitianMatrix& mat) {
  const std::size_t n = mat.dim();
  ComplexMatrix a = mat.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double fro2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) fro2 += std::norm(a(i, j));
  const double target = 1e-12 * std::sqrt(fro2);

  constexpr std::size_t kMaxSweeps = 100;
  std::size_t sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off2 += std::norm(a(i, j));
    if (std::sqrt(off2) <= target) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double ab = std::abs(b);
        if (ab == 0.0) continue;
        const cplx phase = b / ab;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ab);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx pc = std::conj(phase);

        // A <- A W with W = [[c, s], [-s conj(e), c conj(e)]]
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * pc * akq;
          a(k, q) = s * akp + c * pc * akq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * pc * vkq;
          v(k, q) = s * vkp + c * pc * vkq;
        }
        // A <- W^H A
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& mat, double tol, ClipReport* report) {
  std::vector<double> values = hermitian_eigen(mat).values;
  double scale = 0.0;
  for (double x : values) scale = std::max(scale, std::abs(x));
  ClipReport local;
  for (double& x : values) {
    if (x != 0.0 && std::abs(x) < tol * scale) {
      ++local.count;
      local.mass += std::abs(x);
      x = 0.0;
    }
  }
  if (report) *report = local;
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& mat, double tol, ClipReport* report) {
  return hermitian_eigenvalues(HermitianMatrix(mat, tol), tol, report);
}

}  // namespace dsmimo
