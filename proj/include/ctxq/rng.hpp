#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ctxq {

/// Counter-based generator: output k is a SplitMix64 hash of (key, k), so any
/// stream position is addressable and child streams derive from (key, index)
/// without shared state. Bit-identical across platforms.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

    /// Independent child stream, e.g. one per simulation trial.
    CounterRng split(std::uint64_t index) const;

    std::uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Fisher–Yates shuffle of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n);

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z);

private:
    CounterRng(std::uint64_t key, int) : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace ctxq
