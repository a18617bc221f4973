// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "dsmimo/kernels.hpp"

namespace dsmimo::kernels::avx2 {

namespace {

// Two interleaved complex<double> per register: (re0, im0, re1, im1).
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx dotc(const cplx* a, const cplx* b, std::size_t n) noexcept {
  // re lanes accumulate (ar*br, ai*bi); im lanes accumulate (ar*bi, ai*br).
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a0 = load2(a + k), a1 = load2(a + k + 2);
    const __m256d b0 = load2(b + k), b1 = load2(b + k + 2);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im0 = _mm256_fmadd_pd(a0, swap_re_im(b0), im0);
    im1 = _mm256_fmadd_pd(a1, swap_re_im(b1), im1);
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d a0 = load2(a + k), b0 = load2(b + k);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    im0 = _mm256_fmadd_pd(a0, swap_re_im(b0), im0);
  }
  const __m256d re = _mm256_add_pd(re0, re1);
  const __m256d im = _mm256_add_pd(im0, im1);
  alignas(32) double t[4];
  _mm256_store_pd(t, im);
  double sre = hsum(re);
  double sim = (t[1] + t[3]) - (t[0] + t[2]);
  for (; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    sre += ar * br + ai * bi;
    sim += ai * br - ar * bi;
  }
  return {sre, sim};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) noexcept {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x0 = load2(x + k), x1 = load2(x + k + 2);
    const __m256d p0 = _mm256_fmaddsub_pd(ar, x0, _mm256_mul_pd(ai, swap_re_im(x0)));
    const __m256d p1 = _mm256_fmaddsub_pd(ar, x1, _mm256_mul_pd(ai, swap_re_im(x1)));
    store2(y + k, _mm256_add_pd(load2(y + k), p0));
    store2(y + k + 2, _mm256_add_pd(load2(y + k + 2), p1));
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d x0 = load2(x + k);
    const __m256d p0 = _mm256_fmaddsub_pd(ar, x0, _mm256_mul_pd(ai, swap_re_im(x0)));
    store2(y + k, _mm256_add_pd(load2(y + k), p0));
  }
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = {y[k].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[k].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

double norm2(const cplx* a, std::size_t n) noexcept {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d a0 = load2(a + k), a1 = load2(a + k + 2);
    s0 = _mm256_fmadd_pd(a0, a0, s0);
    s1 = _mm256_fmadd_pd(a1, a1, s1);
  }
  for (; k + 2 <= n; k += 2) {
    const __m256d a0 = load2(a + k);
    s0 = _mm256_fmadd_pd(a0, a0, s0);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; k < n; ++k) s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return s;
}

}  // namespace dsmimo::kernels::avx2
