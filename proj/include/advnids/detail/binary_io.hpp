#pragma once

// Little-endian byte streams shared by the dataset cache and model files.

#include "advnids/error.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

namespace advnids::detail {

class ByteWriter {
public:
    void raw(std::string_view s) { buf_.append(s); }
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.append(s);
    }
    const std::string& bytes() const noexcept { return buf_; }

private:
    std::string buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::string_view bytes, std::string what)
        : bytes_(bytes), what_(std::move(what)) {}

    std::string_view raw(std::size_t n) {
        need(n);
        auto out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }
    std::uint8_t u8() { return static_cast<std::uint8_t>(raw(1)[0]); }
    std::uint32_t u32() {
        auto s = raw(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<std::uint8_t>(s[i])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        auto s = raw(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<std::uint8_t>(s[i])) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const auto n = u32();
        return std::string(raw(n));
    }
    /// Element count guarded against the bytes actually remaining.
    std::size_t count(std::size_t element_size) {
        const auto n = u64();
        if (element_size != 0 && n > remaining() / element_size) fail("count exceeds file size");
        return static_cast<std::size_t>(n);
    }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    bool at_end() const noexcept { return pos_ == bytes_.size(); }
    [[noreturn]] void fail(const std::string& why) const {
        throw DataError(what_ + ": " + why + " at byte " + std::to_string(pos_));
    }

private:
    void need(std::size_t n) const {
        if (n > remaining()) fail("truncated");
    }
    std::string_view bytes_;
    std::string what_;
    std::size_t pos_ = 0;
};

std::string read_file_bytes(const std::string& path);
/// Writes via a sibling temporary file and rename, so readers never see a
/// partially written file.
void write_file_atomic(const std::string& path, std::string_view bytes);

} // namespace advnids::detail
