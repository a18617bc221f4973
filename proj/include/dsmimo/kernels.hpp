#pragma once

// Arithmetic inner loops of the Monte Carlo engine. Every primitive has a
// portable scalar reference in kernels::scalar and, on x86-64, an AVX2/FMA
// variant in kernels::avx2. The dispatching entry points in kernels:: pick
// one at runtime: AVX2 when the CPU supports it, unless DSMIMO_SIMD=scalar
// is set in the environment or set_backend() overrides it.

#include <cstddef>
#include <string_view>

#include "dsmimo/matrix.hpp"

namespace dsmimo::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b) noexcept;

/// True when `b` was compiled in and the running CPU supports it.
bool backend_available(Backend b) noexcept;

Backend active_backend() noexcept;

/// Throws InvalidArgument if `b` is unavailable.
void set_backend(Backend b);

namespace scalar {
/// sum_k a[k] * conj(b[k])
cplx dotc(const cplx* a, const cplx* b, std::size_t n) noexcept;
/// y[k] += alpha * x[k]
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept;
/// sum_k |a[k]|^2
double norm2(const cplx* a, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
cplx dotc(const cplx* a, const cplx* b, std::size_t n) noexcept;
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept;
double norm2(const cplx* a, std::size_t n) noexcept;
}  // namespace avx2

cplx dotc(const cplx* a, const cplx* b, std::size_t n) noexcept;
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept;
double norm2(const cplx* a, std::size_t n) noexcept;

/// c = a * b. `c` is resized.
void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c);

/// Lower triangle (including diagonal) of I + scale * a * a^H into `g`.
/// The strict upper triangle of `g` is left unspecified.
void gram_plus_identity(const ComplexMatrix& a, double scale, ComplexMatrix& g);

/// In-place Cholesky of the Hermitian positive-definite matrix whose lower
/// triangle is stored in `g`; returns log det. Throws NumericalError when a
/// pivot is not strictly positive.
double cholesky_logdet(ComplexMatrix& g);

}  // namespace dsmimo::kernels
