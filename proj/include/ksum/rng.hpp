#pragma once

#include <cstdint>
#include <random>

namespace ksum {

// Seeded randomness for sweeps and property tests. std::mt19937_64 has a
// fully specified output sequence, and the bounded draw below uses explicit
// rejection sampling, so streams are identical across platforms and
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, bound). bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

}
