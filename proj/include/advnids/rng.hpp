#pragma once

#include <cstdint>
#include <vector>

namespace advnids {

/// SplitMix64 stream. The draw sequence depends only on the seed, so runs
/// are reproducible across compilers and platforms. Distributions are
/// implemented here rather than via <random>, whose distributions are
/// implementation-defined.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept : seed_(seed), state_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() noexcept;

    /// Uniform in [lo, hi].
    double uniform(double lo, double hi) noexcept;

    /// Unbiased integer in [0, bound). bound must be > 0.
    std::uint64_t bounded(std::uint64_t bound) noexcept;

    /// Standard normal via Box-Muller; the spare deviate is cached.
    double normal() noexcept;

    /// Independent child stream; advances this stream by one draw.
    RngStream split() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Fisher-Yates permutation of 0..n-1 driven solely by rng.
std::vector<std::size_t> shuffle_indices(RngStream& rng, std::size_t n);

} // namespace advnids
