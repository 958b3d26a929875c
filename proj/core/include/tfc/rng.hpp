#pragma once

#include <cmath>
#include <cstdint>

namespace tfc {

// Counter-based generator built on splitmix64. Each (seed, counter) pair maps
// to an independent 64-bit value, so parallel producers can draw without
// sharing state: draw i of stream s is mix(seed, s, i) regardless of order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed ^ 0x9e3779b97f4a7c15ULL, stream)), counter_(0) {}

    std::uint64_t next_u64() { return mix(base_, counter_++); }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Standard normal via Box-Muller; two uniforms per draw, no cached spare
    // so the counter advance per call is fixed.
    double next_gaussian() {
        double u1 = 0.0;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t base_;
    std::uint64_t counter_;
};

// Derives a per-item seed from a master seed, used for order-independent
// parallel generation.
inline std::uint64_t item_seed(std::uint64_t master_seed, std::uint64_t item_index) {
    return CounterRng::mix(master_seed, item_index ^ 0xd1b54a32d192ed03ULL);
}

} // namespace tfc
