// AVX2 variants of the reduction kernels. Compiled with -mavx2 -mfma and
// selected at runtime; see kernels.cpp for dispatch and the scalar reference.

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace mln::kern::avx2 {

namespace {

// exp(x) for 4 doubles, Cephes-style: split x = n*ln2 + r, evaluate a rational
// approximation of exp(r) on |r| <= ln2/2, scale by 2^n through the exponent
// bits. Inputs below the denormal cutoff (including -inf) produce exact 0.
inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d lo = _mm256_set1_pd(-745.13321910194110842);
  const __m256d hi = _mm256_set1_pd(709.78271289338399684);

  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, c1, xc);
  r = _mm256_fnmadd_pd(n, c2, r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(9.99999999999999999910e-1));
  const __m256d px = _mm256_mul_pd(r, p);

  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.0));

  const __m256d e = _mm256_div_pd(px, _mm256_sub_pd(q, px));
  __m256d y = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n via exponent bits; n is within [-1075, 1024] after clamping.
  const __m128i ni = _mm256_cvtpd_epi32(n);
  const __m256i nl = _mm256_cvtepi32_epi64(ni);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(nl, bias), 52);
  y = _mm256_mul_pd(y, _mm256_castsi256_pd(pow2));

  return _mm256_andnot_pd(underflow, y);
}

inline double hsum(__m256d v) {
  __m128d l = _mm256_castpd256_pd128(v);
  __m128d h = _mm256_extractf128_pd(v, 1);
  l = _mm_add_pd(l, h);
  return _mm_cvtsd_f64(l) + _mm_cvtsd_f64(_mm_unpackhi_pd(l, l));
}

}  // namespace

double max_reduce(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = -std::numeric_limits<double>::infinity();
  if (n >= 4) {
    __m256d vm = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4)
      vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
    __m128d l = _mm_max_pd(_mm256_castpd256_pd128(vm),
                           _mm256_extractf128_pd(vm, 1));
    m = std::max(_mm_cvtsd_f64(l), _mm_cvtsd_f64(_mm_unpackhi_pd(l, l)));
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double sum(const double* x, std::size_t n) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double sum_exp(const double* x, std::size_t n, double shift) {
  const __m256d vshift = _mm256_set1_pd(shift);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + i), vshift);
    acc = _mm256_add_pd(acc, exp4(v));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - shift;
    s += (d < -745.13321910194110842) ? 0.0 : std::exp(d);
  }
  return s;
}

void exp_shift(const double* x, std::size_t n, double shift, double* out) {
  const __m256d vshift = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + i), vshift);
    _mm256_storeu_pd(out + i, exp4(v));
  }
  for (; i < n; ++i) {
    const double d = x[i] - shift;
    out[i] = (d < -745.13321910194110842) ? 0.0 : std::exp(d);
  }
}

double strided_sum(const double* x, std::size_t offset, std::size_t run,
                   std::size_t period, std::size_t count) {
  double s = 0.0;
  if (run >= 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < count; ++k) {
      const double* p = x + offset + k * period;
      std::size_t i = 0;
      for (; i + 4 <= run; i += 4)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(p + i));
      for (; i < run; ++i) s += p[i];
    }
    s += hsum(acc);
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const double* p = x + offset + k * period;
      for (std::size_t i = 0; i < run; ++i) s += p[i];
    }
  }
  return s;
}

}  // namespace mln::kern::avx2
