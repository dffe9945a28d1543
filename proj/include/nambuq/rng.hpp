#pragma once

#include <cstdint>
#include <vector>

namespace nambuq {

// Deterministic random stream used everywhere randomness is needed.
// xoshiro256++ state expanded from the seed with splitmix64, so any 64-bit
// seed (including 0) gives a well-mixed stream.  The sequence is pinned:
// identical seeds must produce identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Standard normal via Box-Muller; second deviate of each pair is cached.
    double gaussian();

    // Flat distribution on the probability simplex: normalized exponentials
    // of uniform deviates.  Entries are strictly positive.
    std::vector<double> simplex(int n);

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace nambuq
