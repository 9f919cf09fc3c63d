#pragma once

#include <cstdint>

namespace fslhate {

// Advances x and returns the next SplitMix64 output.
std::uint64_t splitmix64(std::uint64_t& x);

/// PCG32 stream seeded through SplitMix64. Same (seed, stream) gives the
/// same draw sequence on every platform. Single-owner: never share one
/// instance across threads; derive per-worker instances with a distinct
/// stream index instead.
struct Rng {
    std::uint64_t state = 0;
    std::uint64_t inc = 0;

    Rng() : Rng(0, 0) {}
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();

    // Uniform integer in [0, n), n >= 1. Modulo reduction; the bias is
    // irrelevant at the n used here and keeps the draw count at one.
    std::uint64_t below(std::uint64_t n);

    double next_double();  // uniform [0, 1), 32-bit resolution
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller; always consumes exactly two draws.
    double normal();
};

}  // namespace fslhate
