#include "lltc/kernels.hpp"

#include <atomic>
#include <cassert>

#include "lltc/errors.hpp"

namespace lltc::kernels {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t{3};
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < n4; i += 4) {
        s0 += a[i + 0] * b[i + 0];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double r = (s0 + s2) + (s1 + s3);
    for (std::size_t i = n4; i < n; ++i) r += a[i] * b[i];
    return r;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

namespace {

Backend detect_best() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#elif defined(__aarch64__)
    return Backend::neon;
#endif
    return Backend::scalar;
}

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
};

Table table_for(Backend b) {
    switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
        case Backend::avx2:
            return {dot_avx2, axpy_avx2};
#endif
#if defined(__aarch64__)
        case Backend::neon:
            return {dot_neon, axpy_neon};
#endif
        default:
            return {dot_scalar, axpy_scalar};
    }
}

std::atomic<Backend> g_backend{detect_best()};
// Dispatch table is read far more often than written; tests are the only
// writers and they run single-threaded.
Table g_table = table_for(g_backend.load());

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_supported(b))
        fail(Err::unsupported_backend,
             std::string("kernel backend not available on this cpu: ") + backend_name(b));
    g_backend.store(b, std::memory_order_relaxed);
    g_table = table_for(b);
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return g_table.dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    g_table.axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace lltc::kernels
