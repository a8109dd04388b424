#pragma once

#include <cmath>
#include <cstdint>

namespace protolab {

// splitmix64. Cross-platform deterministic; every randomized component in the
// library derives its stream from (seed, tag...) via mix_seed so results are
// independent of thread count and evaluation order.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // (0, 1], safe as a log() argument
    double uniform_pos() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    // uniform in {0, ..., n-1}; modulo bias is irrelevant for the small n used here
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Box-Muller; consumes exactly two draws per call
    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476 * u2);
    }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    SplitMix64 r(a + 0x632be59bd9b4e019ULL * (b + 0x9e3779b97f4a7c15ULL));
    r.next();
    return r.next();
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

}  // namespace protolab
