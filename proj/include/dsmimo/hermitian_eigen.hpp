#pragma once

#include <cstddef>
#include <vector>

#include "dsmimo/matrix.hpp"

namespace dsmimo {

/// Eigenvalues are sorted descending; column k of `vectors` is the unit
/// eigenvector of `values[k]`.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
  std::size_t sweeps = 0;
};

/// Number and total magnitude of eigenvalues flushed to zero.
struct ClipReport {
  std::size_t count = 0;
  double mass = 0.0;
};

/// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius mass drops
/// below 1e-12 of the matrix Frobenius norm. Raw values, no clipping.
EigenDecomposition hermitian_eigen(const HermitianMatrix& mat);

/// Eigenvalues (descending) of `mat`. Values with magnitude below
/// tol * max|lambda| are set to exactly zero and recorded in `report`.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& mat, double tol = 1e-10,
                                          ClipReport* report = nullptr);

/// Same, for an unvalidated matrix; throws InvalidArgument if `mat` is not
/// Hermitian within `tol`.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& mat, double tol = 1e-10,
                                          ClipReport* report = nullptr);

}  // namespace dsmimo
