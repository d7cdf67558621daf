// rng.hpp
// Explicit, counter-addressed random streams.
//
// Every Monte Carlo trial owns a stream derived from (master seed, experiment
// tag, trial index), so results do not depend on the order in which trials
// run or on how many threads run them.

#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace qpke {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index = 0) noexcept {
    return mix64(mix64(mix64(master) ^ tag) ^ (index * 0xd1b54a32d192ed03ULL));
}

// Satisfies UniformRandomBitGenerator. The conversions to uniform, Bernoulli,
// integer and normal variates are spelled out here rather than going through
// <random> distributions, whose output is implementation-defined.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}
    RngStream(std::uint64_t master, std::uint64_t tag, std::uint64_t index = 0)
        : engine_(derive_seed(master, tag, index)) {}

    static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    int bit() { return static_cast<int>(engine_() >> 63); }

    // Uniform on {0, ..., bound - 1}; bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace qpke
