#pragma once

#include <cstddef>
#include <span>

// Dense inner loops for the classifier: dot products and axpy updates.
//
// Every backend computes the *same* floating-point expression tree, so the
// scalar reference and the SIMD variants return bit-identical results and the
// equivalence tests can assert exact equality:
//
//   dot(a, b, n):  four partial sums s_j = sum over i == j (mod 4), i < n4,
//                  combined as ((s0 + s2) + (s1 + s3)), then the tail
//                  elements i >= n4 added left to right. n4 = n rounded down
//                  to a multiple of 4.
//   axpy:          y[i] = y[i] + alpha * x[i], one multiply and one add per
//                  element (no fused multiply-add).
//
// The kernel translation units are compiled with -ffp-contract=off so the
// compiler cannot fuse the multiply/add pairs on one backend only.

namespace lltc::kernels {

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);
bool backend_supported(Backend b);

// Highest supported backend at process start; override for tests/benchmarks.
Backend active_backend();
void set_backend(Backend b);  // throws Err::unsupported_backend

// Dispatched entry points.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Direct entry points, used by the equivalence tests.
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
#endif

#if defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
#endif

}  // namespace lltc::kernels
