#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace netmatch {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stable seed for a sub-task identified by (master, tags...). Independent of
/// scheduling, so any trial can be regenerated in isolation.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = mix64(master);
    for (auto t : tags) {
        h = mix64(h ^ mix64(t));
    }
    return h;
}

/// Seeded 64-bit Mersenne Twister with the few draws the library needs.
/// Uniform draws are computed from raw engine output so that sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound), unbiased by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= limit) {
                return x % bound;
            }
        }
    }

    /// Standard normal via Box-Muller (one value per call).
    double normal() {
        for (;;) {
            const double u1 = uniform();
            if (u1 > 0.0) {
                const double u2 = uniform();
                return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            }
        }
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace netmatch
