#include "advnids/digest.hpp"

#include <bit>
#include <cstdio>

namespace advnids {

namespace {
constexpr std::uint64_t kPrime = 0x100000001b3ULL;
}

Digest& Digest::bytes(std::span<const std::uint8_t> data) noexcept {
    for (std::uint8_t b : data) {
        state_ ^= b;
        state_ *= kPrime;
    }
    return *this;
}

Digest& Digest::text(std::string_view s) noexcept {
    u64(s.size());
    for (char c : s) {
        state_ ^= static_cast<std::uint8_t>(c);
        state_ *= kPrime;
    }
    return *this;
}

Digest& Digest::u64(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) {
        state_ ^= static_cast<std::uint8_t>(v >> (8 * i));
        state_ *= kPrime;
    }
    return *this;
}

Digest& Digest::f64(double v) noexcept { return u64(std::bit_cast<std::uint64_t>(v)); }

Digest& Digest::f64s(std::span<const double> values) noexcept {
    for (double v : values) f64(v);
    return *this;
}

std::string Digest::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
}

} // namespace advnids
