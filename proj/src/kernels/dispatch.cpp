#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dsmimo/error.hpp"
#include "dsmimo/kernels.hpp"

namespace dsmimo::kernels {

namespace {

struct Table {
  cplx (*dotc)(const cplx*, const cplx*, std::size_t) noexcept;
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t) noexcept;
  double (*norm2)(const cplx*, std::size_t) noexcept;
};

constexpr Table kScalar{&scalar::dotc, &scalar::axpy, &scalar::norm2};
#if defined(DSMIMO_HAVE_AVX2_KERNELS)
constexpr Table kAvx2{&avx2::dotc, &avx2::axpy, &avx2::norm2};
#endif

bool cpu_has_avx2() noexcept {
#if defined(DSMIMO_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("DSMIMO_SIMD")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

const Table& table() noexcept {
#if defined(DSMIMO_HAVE_AVX2_KERNELS)
  if (current().load(std::memory_order_relaxed) == Backend::Avx2) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) noexcept { return b == Backend::Scalar || cpu_has_avx2(); }

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw InvalidArgument("kernel backend '" + std::string(backend_name(b)) + "' is not available");
  current().store(b, std::memory_order_relaxed);
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) noexcept { return table().dotc(a, b, n); }
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept { table().axpy(alpha, x, y, n); }
double norm2(const cplx* a, std::size_t n) noexcept { return table().norm2(a, n); }

void matmul(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c) {
  if (a.cols() != b.rows()) throw InvalidArgument("matmul: inner dimensions differ");
  const Table& t = table();
  c.resize(a.rows(), b.cols());
  c.fill(0.0);
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = c.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
      t.axpy(aik, b.row(k).data(), ci, n);
    }
  }
}

void gram_plus_identity(const ComplexMatrix& a, double scale, ComplexMatrix& g) {
  const Table& t = table();
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  g.resize(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* ai = a.row(i).data();
    for (std::size_t j = 0; j < i; ++j) g(i, j) = scale * t.dotc(ai, a.row(j).data(), m);
    g(i, i) = 1.0 + scale * t.norm2(ai, m);
  }
}

double cholesky_logdet(ComplexMatrix& g) {
  if (!g.square()) throw InvalidArgument("cholesky_logdet: matrix is not square");
  const Table& t = table();
  const std::size_t n = g.rows();
  double logdet = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx* li = g.row(i).data();
    for (std::size_t j = 0; j < i; ++j) {
      const cplx* lj = g.row(j).data();
      li[j] = (li[j] - t.dotc(li, lj, j)) / lj[j].real();
    }
    const double pivot = li[i].real() - t.norm2(li, i);
    if (!(pivot > 0.0) || !std::isfinite(pivot)) throw NumericalError("cholesky_logdet: matrix is not positive definite");
    const double d = std::sqrt(pivot);
    li[i] = d;
    logdet += std::log(d);
  }
  return 2.0 * logdet;
}

}  // namespace dsmimo::kernels
