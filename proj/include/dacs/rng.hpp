#pragma once

#include <cstdint>
#include <random>

namespace dacs {

/// Deterministic uniform draws on top of std::mt19937_64.
///
/// std::uniform_real_distribution is implementation-defined, so logs produced
/// with it would not be bitwise reproducible across standard libraries. This
/// wrapper maps raw 64-bit outputs to doubles in [0,1) with the usual
/// 53-bit-mantissa construction, which is exact and portable.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in [0, 1) with 53 random mantissa bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [lo, hi] (inclusive), unbiased enough for test
    /// fixtures (modulo bias is < 2^-50 for the ranges used here).
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        return lo + gen_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace dacs
