#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dsmimo {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

  /// Reshape without preserving contents; reuses the allocation when possible.
  void resize(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    data_.resize(rows * cols);
  }

  void fill(cplx v) { std::fill(data_.begin(), data_.end(), v); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Plain triple-loop product; used off the hot path.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Square complex matrix with the Hermitian structure enforced exactly:
/// (i,j) == conj((j,i)) and a real diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Validates `m` against `tol` (relative to the largest entry magnitude),
  /// then stores its Hermitian part. Throws InvalidArgument when `m` is not
  /// square or not Hermitian within tolerance.
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = 1e-10);

  static HermitianMatrix identity(std::size_t n) { return HermitianMatrix(ComplexMatrix::identity(n)); }
  static HermitianMatrix diagonal(std::span<const double> d) { return HermitianMatrix(ComplexMatrix::diagonal(d)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const noexcept;

 private:
  ComplexMatrix m_;
};

/// Largest |m(i,j) - conj(m(j,i))| relative to the largest entry magnitude.
double hermitian_defect(const ComplexMatrix& m);

}  // namespace dsmimo
