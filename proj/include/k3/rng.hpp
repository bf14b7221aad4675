#pragma once

#include <cstdint>

#include "k3/scalar.hpp"

namespace k3 {

// SplitMix64. Fixed algorithm so sampled witnesses are reproducible across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t lim = ~0ULL - (~0ULL % n);
        std::uint64_t v;
        do { v = next(); } while (v >= lim);
        return v % n;
    }

    // Integer in [-h, h].
    long int_pm(long h) { return static_cast<long>(below(2 * h + 1)) - h; }

    // Nonzero integer in [-h, h] \ {0}.
    long nonzero_pm(long h) {
        long v = static_cast<long>(below(2 * h)) - h;
        return v >= 0 ? v + 1 : v;
    }

    Q rational(long h) { return Q(int_pm(h)); }

    Q nonzero_rational(long h) { return Q(nonzero_pm(h)); }

private:
    std::uint64_t state_;
};

}  // namespace k3
