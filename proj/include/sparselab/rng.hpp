#pragma once

// Counter-based randomness.  Every draw is a pure function of a 64-bit seed
// and a 64-bit counter, mixed with the splitmix64 finalizer, so a random
// object can be sampled site by site in any order and enlarging its range
// never perturbs values already drawn.

#include <cstdint>
#include <limits>

namespace sparselab::rng {

constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t seed, std::uint64_t counter) {
    return mix(mix(seed) ^ (counter * 0xd1b54a32d192ed03ULL));
}

// Maps Z to N bijectively: 0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...
constexpr std::uint64_t zigzag(std::int64_t n) {
    return (static_cast<std::uint64_t>(n) << 1) ^ static_cast<std::uint64_t>(n >> 63);
}

// Uniform on [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential splitmix64 stream; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return to_unit((*this)()); }
    // Uniform integer in [lo, hi).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo);
        return lo + static_cast<std::int64_t>((*this)() % span);
    }
    double sign() { return ((*this)() >> 63) ? 1.0 : -1.0; }

private:
    std::uint64_t state_;
};

}  // namespace sparselab::rng
