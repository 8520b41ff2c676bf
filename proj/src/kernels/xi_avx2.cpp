// AVX2/FMA variant. Only this translation unit is compiled with -mavx2 -mfma;
// the dispatcher calls into it after a CPUID check.

#include "xi_kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cstdint>

namespace qpd::kernels::detail {

namespace {

constexpr double kLog2e = 1.4426950408889634074;
// ln 2 split so that n * kLn2Hi is exact for |n| < 2^11.
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kMaxArg = 709.782712893384;
constexpr double kMinArg = -745.1332191019412;

// 2^k for integer-valued k in [-1022, 1023], k held in a double vector.
inline __m256d pow2i(__m256d k) {
  const __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
  return _mm256_castsi256_pd(_mm256_slli_epi64(k64, 52));
}

// exp(x) with |r| <= ln2/2 after range reduction and a degree-13 Taylor
// polynomial (truncation error below 1e-17 relative); accuracy is set by
// the Horner rounding, ~1-2 ulp.
inline __m256d exp_pd(__m256d x) {
  const __m256d too_big = _mm256_cmp_pd(x, _mm256_set1_pd(kMaxArg), _CMP_GT_OQ);
  const __m256d too_small = _mm256_cmp_pd(x, _mm256_set1_pd(kMinArg), _CMP_LT_OQ);
  const __m256d xc = _mm256_max_pd(_mm256_min_pd(x, _mm256_set1_pd(kMaxArg)), _mm256_set1_pd(kMinArg));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), xc);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);

  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // Split the scale in two so subnormal results and n = 1024 stay exact.
  const __m256d half = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)),
                                       _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  __m256d result = _mm256_mul_pd(_mm256_mul_pd(p, pow2i(half)), pow2i(_mm256_sub_pd(n, half)));

  result = _mm256_blendv_pd(result, _mm256_set1_pd(__builtin_inf()), too_big);
  result = _mm256_blendv_pd(result, _mm256_setzero_pd(), too_small);
  // NaN input propagates through the arithmetic above unless masked; restore it.
  const __m256d is_nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  return _mm256_blendv_pd(result, x, is_nan);
}

inline __m256d xi_pd(__m256d v, __m256d rho) {
  return _mm256_mul_pd(v, exp_pd(_mm256_sub_pd(rho, v)));
}

}  // namespace

void exp_avx2(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp_pd(_mm256_loadu_pd(in + i)));
  if (i < n) {
    alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
    std::copy(in + i, in + n, buf);
    _mm256_store_pd(buf, exp_pd(_mm256_load_pd(buf)));
    std::copy(buf, buf + (n - i), out + i);
  }
}

void xi_iterate_avx2(const double* x, double* out, std::size_t n, double rho, int depth,
                     bool subtract_input) {
  const __m256d vrho = _mm256_set1_pd(rho);
  auto block = [&](__m256d x0) {
    __m256d v = x0;
    for (int k = 0; k < depth; ++k) v = xi_pd(v, vrho);
    return subtract_input ? _mm256_sub_pd(v, x0) : v;
  };
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, block(_mm256_loadu_pd(x + i)));
  if (i < n) {
    alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
    std::copy(x + i, x + n, buf);
    _mm256_store_pd(buf, block(_mm256_load_pd(buf)));
    std::copy(buf, buf + (n - i), out + i);
  }
}

}  // namespace qpd::kernels::detail
