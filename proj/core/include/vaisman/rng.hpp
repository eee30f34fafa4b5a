#pragma once

// Deterministic RNG (splitmix64). Identical streams on every platform, which
// std:: distributions do not guarantee; seeded runs must be byte-reproducible.

#include <cmath>
#include <cstdint>

namespace vaisman {

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal (Box-Muller; one value per call, cached pair discarded
    // to keep the stream position independent of call parity)
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    uint64_t integer(uint64_t bound) { return next() % bound; }

private:
    uint64_t state_;
};

}  // namespace vaisman
