#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace advnids {

/// Incremental 64-bit FNV-1a. Used for provenance tags and run digests, not
/// for anything security relevant.
class Digest {
public:
    Digest& bytes(std::span<const std::uint8_t> data) noexcept;
    Digest& text(std::string_view s) noexcept;
    Digest& u64(std::uint64_t v) noexcept;
    /// Hashes the IEEE-754 bit pattern in little-endian order.
    Digest& f64(double v) noexcept;
    Digest& f64s(std::span<const double> values) noexcept;

    std::uint64_t value() const noexcept { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

} // namespace advnids
