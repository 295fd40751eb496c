#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "txm/errors.hpp"

namespace txm {

// Little-endian binary writer/reader for the bundle format. The reader
// bounds-checks every read and reports truncation as a corrupt file.
class BinWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void f64(double v) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof(bits));
        u64(bits);
    }
    void str(std::string_view s) {
        u64(s.size());
        buf_.append(s.data(), s.size());
    }
    void raw(std::string_view s) { buf_.append(s.data(), s.size()); }

    const std::string& bytes() const { return buf_; }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
};

class BinReader {
public:
    explicit BinReader(std::string_view data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(need(1)[0]); }
    std::uint32_t u32() {
        const char* p = need(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
        return v;
    }
    std::uint64_t u64() {
        const char* p = need(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    double f64() {
        const std::uint64_t bits = u64();
        double v = 0;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }
    std::string str() {
        const std::uint64_t n = u64();
        if (n > remaining()) throw CorruptBundleError("truncated string");
        const char* p = need(n);
        return std::string(p, n);
    }
    std::string bytes(std::size_t n) {
        const char* p = need(n);
        return std::string(p, n);
    }

    std::size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }

private:
    const char* need(std::size_t n) {
        if (remaining() < n) throw CorruptBundleError("unexpected end of file");
        const char* p = data_.data() + pos_;
        pos_ += n;
        return p;
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace txm
