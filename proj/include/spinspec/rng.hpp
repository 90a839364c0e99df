// Deterministic random numbers. SplitMix64 is used everywhere instead of the
// standard-library engines because its output stream is pinned by the
// algorithm itself (std::normal_distribution is implementation-defined, which
// would break byte-identical artifacts across toolchains). Substreams are
// derived by remixing the seed with stream indices, so parallel runs produce
// the same numbers in any thread order.
#pragma once

#include <cstdint>
#include <utility>

namespace spinspec {

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // One Box-Muller pair of independent standard normals. Computed fresh from
    // two uniforms each call (no cached spare) so the draw sequence is a pure
    // function of the engine state.
    std::pair<double, double> normal_pair();

private:
    std::uint64_t state_;
};

// Seed for an independent substream identified by (a, b), e.g. (trial, sample
// index). A fresh SplitMix64 on the mixed value is statistically independent
// of neighbouring substreams.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace spinspec
