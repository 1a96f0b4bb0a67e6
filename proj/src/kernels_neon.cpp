// NEON kernels for aarch64. Two float64x2 accumulators hold the partial sums
// (s0,s1) and (s2,s3), reproducing the same tree as the scalar reference and
// the AVX2 variant. Compiled with -ffp-contract=off; vmulq+vaddq, no vfmaq.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

namespace lltc::kernels {

double dot_neon(const double* a, const double* b, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    float64x2_t acc01 = vdupq_n_f64(0.0);  // lanes (s0, s1)
    float64x2_t acc23 = vdupq_n_f64(0.0);  // lanes (s2, s3)
    for (std::size_t i = 0; i < n4; i += 4) {
        acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    // (s0+s2, s1+s3) -> (s0+s2)+(s1+s3)
    const float64x2_t pair = vaddq_f64(acc01, acc23);
    double r = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const std::size_t n2 = n & ~std::size_t{1};
    const float64x2_t va = vdupq_n_f64(alpha);
    for (std::size_t i = 0; i < n2; i += 2) {
        const float64x2_t vx = vld1q_f64(x + i);
        const float64x2_t vy = vld1q_f64(y + i);
        vst1q_f64(y + i, vaddq_f64(vy, vmulq_f64(va, vx)));
    }
    for (std::size_t i = n2; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace lltc::kernels

#endif
