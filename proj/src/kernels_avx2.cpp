// AVX2 kernels. Compiled with -mavx2 -mno-fma -ffp-contract=off; see
// kernels.hpp for the expression tree these must reproduce exactly.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

namespace lltc::kernels {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    // lanes (s0,s1,s2,s3) -> (s0+s2, s1+s3) -> (s0+s2)+(s1+s3)
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    double r = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d va = _mm256_set1_pd(alpha);
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (std::size_t i = n4; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace lltc::kernels

#endif
