#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace decide {

/// 64-bit FNV-1a; stable across platforms and runs.
class Fnv1a {
public:
    Fnv1a& update(std::string_view bytes) noexcept
    {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ull;
        }
        return *this;
    }

    /// Feeds a length prefix too, so ("ab","c") and ("a","bc") differ.
    Fnv1a& field(std::string_view bytes) noexcept
    {
        const auto n = static_cast<std::uint64_t>(bytes.size());
        for (int i = 0; i < 8; ++i) {
            const auto byte = static_cast<char>((n >> (8 * i)) & 0xFF);
            update(std::string_view(&byte, 1));
        }
        return update(bytes);
    }

    [[nodiscard]] std::uint64_t value() const noexcept { return state_; }

    [[nodiscard]] std::string hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = state_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[v & 0xF];
            v >>= 4;
        }
        return out;
    }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

} // namespace decide
