#pragma once

#include <array>
#include <cstdint>

namespace shellzeta {

// Hand-rolled xoshiro256++ seeded through splitmix64.  The standard library
// distributions are not guaranteed to be reproducible across
// implementations, so every uniform/gaussian draw goes through these
// bit-stable routines.

std::uint64_t splitmix64(std::uint64_t& state);

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Independent stream for stratum/batch `index` of a plan seed.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double gaussian();                      // standard normal, Box-Muller

private:
    std::array<std::uint64_t, 4> s_{};
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace shellzeta
