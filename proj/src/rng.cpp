#include "fslhate/rng.hpp"

#include <cmath>
#include <numbers>

namespace fslhate {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    // Fold the stream index into the seed before SplitMix expansion so that
    // (seed, 0), (seed, 1), ... are unrelated streams.
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * stream;
    std::uint64_t initstate = splitmix64(x);
    std::uint64_t initseq = splitmix64(x);

    state = 0;
    inc = (initseq << 1u) | 1u;
    next_u32();
    state += initstate;
    next_u32();
}

std::uint32_t Rng::next_u32() {
    std::uint64_t old = state;
    state = old * 6364136223846793005ULL + inc;
    std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint64_t Rng::below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_u32()) % n;
}

double Rng::next_double() {
    return next_u32() * (1.0 / 4294967296.0);
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

double Rng::normal() {
    double u1 = (static_cast<double>(next_u32()) + 1.0) * (1.0 / 4294967296.0);
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace fslhate
