#pragma once

#include <cstdint>

namespace hypershare {

// Deterministic splittable generator (splitmix64 core). Used wherever a
// reproducible stream is needed: dealing shares, sampling subsets in tests.
// The same seed yields the same stream on every platform, so fixtures can be
// frozen byte-for-byte.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % bound;
    }

    // Independent child stream; advancing the child does not affect the parent.
    Rng split() { return Rng(next() ^ 0xD1B54A32D192ED03ULL); }

private:
    std::uint64_t state_;
};

} // namespace hypershare
