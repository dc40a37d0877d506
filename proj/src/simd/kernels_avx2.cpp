// Compiled with -mavx2 -mfma; only reached when the host reports both.

#include <immintrin.h>

#include <cstddef>

#include "fraclap/simd.hpp"

namespace fraclap::simd::avx2 {

namespace {
double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}
}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  }
  double s = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

std::complex<double> complex_dot(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  // Two complex numbers per register as (re, im, re, im).
  const auto* pa = reinterpret_cast<const double*>(a.data());
  const auto* pb = reinterpret_cast<const double*>(b.data());
  const std::size_t n = a.size();
  __m256d acc_rr = _mm256_setzero_pd();  // (ar*br, ai*bi, ...)
  __m256d acc_ri = _mm256_setzero_pd();  // (ar*bi, ai*br, ...)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d vb_swap = _mm256_permute_pd(vb, 0b0101);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, vb_swap, acc_ri);
  }
  alignas(32) double rr[4], ri[4];
  _mm256_store_pd(rr, acc_rr);
  _mm256_store_pd(ri, acc_ri);
  double re = (rr[0] - rr[1]) + (rr[2] - rr[3]);
  double im = (ri[0] + ri[1]) + (ri[2] + ri[3]);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void scale_complex(std::span<std::complex<double>> data, std::span<const double> factors) {
  auto* p = reinterpret_cast<double*>(data.data());
  const std::size_t n = data.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // (f0, f0, f1, f1)
    const __m128d f = _mm_loadu_pd(factors.data() + i);
    const __m256d ff = _mm256_permute4x64_pd(_mm256_castpd128_pd256(f), 0b01010000);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), ff));
  }
  for (; i < n; ++i) data[i] *= factors[i];
}

}  // namespace fraclap::simd::avx2
