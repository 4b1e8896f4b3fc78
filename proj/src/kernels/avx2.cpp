// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace scn::kernels::avx2 {
namespace {

// Cephes-style exp: x = n ln2 + r, |r| <= ln2/2, exp(r) from a rational
// approximation, then scaled by 2^n through the exponent field.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d lo = _mm256_set1_pd(-708.0);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125E-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212E-6);

  __m256d n = _mm256_round_pd(_mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)),
                              _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, c1, x);
  r = _mm256_fnmadd_pd(n, c2, r);
  const __m256d rr = _mm256_mul_pd(r, r);

  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  __m256i ni = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  ni = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(ni));
}

inline __m256d sigmoid_pd(__m256d t) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d neg = _mm256_sub_pd(_mm256_setzero_pd(), t);
  return _mm256_div_pd(one, _mm256_add_pd(one, exp_pd(neg)));
}

// tanh(t) = sign(t) * (1 - e) / (1 + e), e = exp(-2|t|)
inline __m256d tanh_pd(__m256d t) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d abs_t = _mm256_andnot_pd(sign_mask, t);
  const __m256d e = exp_pd(_mm256_mul_pd(_mm256_set1_pd(-2.0), abs_t));
  const __m256d mag = _mm256_div_pd(_mm256_sub_pd(one, e), _mm256_add_pd(one, e));
  return _mm256_or_pd(mag, _mm256_and_pd(sign_mask, t));
}

inline __m256d gaussian_pd(__m256d t) {
  return exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(t, t)));
}

template <class F>
void map_inplace(double* z, std::size_t n, ActivationKind kind, F f) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(z + i, f(_mm256_loadu_pd(z + i)));
  if (i < n) scalar::activate(kind, z + i, n - i);
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  const __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double s = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void activate(ActivationKind kind, double* z, std::size_t n) {
  switch (kind) {
    case ActivationKind::Sigmoid:
      map_inplace(z, n, kind, sigmoid_pd);
      return;
    case ActivationKind::Tanh:
      map_inplace(z, n, kind, tanh_pd);
      return;
    case ActivationKind::Gaussian:
      map_inplace(z, n, kind, gaussian_pd);
      return;
    case ActivationKind::Sine:
    case ActivationKind::Cosine:
      // No vector sin/cos; the scalar libm path is used.
      scalar::activate(kind, z, n);
      return;
  }
}

}  // namespace scn::kernels::avx2
