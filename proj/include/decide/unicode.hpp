#pragma once

// Minimal UTF-8 handling for Latin-script petition text: decoding, case
// mapping and diacritic folding over Basic Latin, Latin-1 Supplement and
// Latin Extended-A. Other scripts pass through unchanged.

#include <cstdint>
#include <string>
#include <string_view>

namespace decide::unicode {

/// Decodes UTF-8; malformed bytes decode to U+FFFD.
inline std::u32string decode(std::string_view text)
{
    std::u32string out;
    out.reserve(text.size());
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const auto* end = p + text.size();
    while (p < end) {
        unsigned char c = *p;
        char32_t cp = 0;
        int extra = 0;
        if (c < 0x80) {
            cp = c;
        } else if ((c & 0xE0) == 0xC0) {
            cp = c & 0x1F;
            extra = 1;
        } else if ((c & 0xF0) == 0xE0) {
            cp = c & 0x0F;
            extra = 2;
        } else if ((c & 0xF8) == 0xF0) {
            cp = c & 0x07;
            extra = 3;
        } else {
            out.push_back(U'\uFFFD');
            ++p;
            continue;
        }
        if (end - p <= extra) {
            out.push_back(U'\uFFFD');
            break;
        }
        bool ok = true;
        for (int i = 1; i <= extra; ++i) {
            if ((p[i] & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (p[i] & 0x3F);
        }
        if (!ok) {
            out.push_back(U'\uFFFD');
            ++p;
            continue;
        }
        out.push_back(cp);
        p += extra + 1;
    }
    return out;
}

inline void append_utf8(std::string& out, char32_t cp)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(std::u32string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text)
        append_utf8(out, cp);
    return out;
}

constexpr bool is_letter(char32_t c) noexcept
{
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'))
        return true;
    if (c == 0xAA || c == 0xB5 || c == 0xBA)
        return true;
    if (c >= 0xC0 && c <= 0x24F)
        return c != 0xD7 && c != 0xF7;
    return false;
}

constexpr bool is_digit(char32_t c) noexcept { return c >= U'0' && c <= U'9'; }

constexpr bool is_word_char(char32_t c) noexcept { return is_letter(c) || is_digit(c); }

constexpr bool is_space(char32_t c) noexcept
{
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' || c == 0xA0;
}

constexpr char32_t to_lower(char32_t c) noexcept
{
    if (c >= U'A' && c <= U'Z')
        return c + 32;
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7)
        return c + 32;
    // Latin Extended-A alternates upper/lower, with a few odd-aligned runs.
    if ((c >= 0x100 && c <= 0x137) || (c >= 0x14A && c <= 0x177))
        return (c % 2 == 0) ? c + 1 : c;
    if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E))
        return (c % 2 == 1) ? c + 1 : c;
    if (c == 0x178)
        return 0xFF;
    return c;
}

constexpr char32_t to_upper(char32_t c) noexcept
{
    if (c >= U'a' && c <= U'z')
        return c - 32;
    if (c >= 0xE0 && c <= 0xFE && c != 0xF7)
        return c - 32;
    if (c == 0xFF)
        return 0x178;
    if ((c >= 0x100 && c <= 0x137) || (c >= 0x14A && c <= 0x177))
        return (c % 2 == 1) ? c - 1 : c;
    if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E))
        return (c % 2 == 0) ? c - 1 : c;
    return c;
}

/// Strips diacritics from a lowercase Latin letter (á→a, ñ→n, ü→u, ç→c).
constexpr char32_t fold(char32_t c) noexcept
{
    if (c < 0xC0)
        return c;
    switch (c) {
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
    case 0x101: case 0x103: case 0x105:
        return U'a';
    case 0xE7: case 0x107: case 0x109: case 0x10B: case 0x10D:
        return U'c';
    case 0x10F: case 0x111:
        return U'd';
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
    case 0x113: case 0x115: case 0x117: case 0x119: case 0x11B:
        return U'e';
    case 0x11D: case 0x11F: case 0x121: case 0x123:
        return U'g';
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
    case 0x129: case 0x12B: case 0x12D: case 0x12F: case 0x131:
        return U'i';
    case 0xF1: case 0x144: case 0x146: case 0x148:
        return U'n';
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
    case 0x14D: case 0x14F: case 0x151:
        return U'o';
    case 0x155: case 0x157: case 0x159:
        return U'r';
    case 0x15B: case 0x15D: case 0x15F: case 0x161:
        return U's';
    case 0x163: case 0x165:
        return U't';
    case 0xF9: case 0xFA: case 0xFB: case 0xFC:
    case 0x169: case 0x16B: case 0x16D: case 0x16F: case 0x171: case 0x173:
        return U'u';
    case 0xFD: case 0xFF:
        return U'y';
    case 0x17A: case 0x17C: case 0x17E:
        return U'z';
    default:
        return c;
    }
}

inline std::u32string lower(std::u32string_view text)
{
    std::u32string out(text);
    for (auto& c : out)
        c = to_lower(c);
    return out;
}

inline std::string lower(std::string_view text) { return encode(lower(decode(text))); }

/// Lowercases and strips diacritics: the key used for every match comparison.
inline std::u32string fold_key(std::u32string_view text)
{
    std::u32string out(text);
    for (auto& c : out)
        c = fold(to_lower(c));
    return out;
}

inline std::string fold_key(std::string_view text) { return encode(fold_key(decode(text))); }

/// Case- and accent-insensitive substring test.
inline bool contains_folded(std::string_view haystack, std::string_view needle)
{
    return fold_key(haystack).find(fold_key(needle)) != std::string::npos;
}

inline std::string_view trim(std::string_view s) noexcept
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

} // namespace decide::unicode
