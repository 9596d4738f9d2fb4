#pragma once

#include <cstdint>

namespace stratcat {

// Deterministic splitmix64 generator. We deliberately avoid <random>
// distributions: their output is implementation-defined, and randomized test
// suites here must reproduce bit-for-bit across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Value in [0, bound). Plain modulo; the bias is negligible for the small
    // bounds used here and keeps the sequence easy to reproduce by hand.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Inclusive range.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool flip() { return (next() & 1U) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace stratcat
