#pragma once

#include <cstdint>

namespace lltc {

// Deterministic PRNG used everywhere randomness is needed.
//
// Core generator is splitmix64 (Steele, Lea & Flood; the reference constants).
// All derived draws use only 64-bit integer and IEEE double arithmetic, no
// libm transcendentals, so every stream is bit-identical across platforms and
// compilers. Normal deviates use the Irwin-Hall sum of 12 uniforms, which is
// bounded to +-6 sigma; adequate for cluster data and, unlike Box-Muller,
// free of log/cos whose last-ulp behaviour differs between libms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0,n). Multiply-shift bounded draw (Lemire); the
    // modulo bias is O(n / 2^64) and irrelevant at simulation scale.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Approximately N(0,1): sum of 12 uniforms minus 6.
    double next_normal() {
        double s = 0.0;
        for (int i = 0; i < 12; ++i) s += next_double();
        return s - 6.0;
    }

    // Independent substream; deterministic function of (construction seed,
    // salt), independent of how many draws were made on the parent.
    Rng fork(std::uint64_t salt) const { return Rng(mix(seed_, salt)); }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 0x632BE59BD9B4E019ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace lltc
