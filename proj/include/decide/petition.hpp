#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace decide {

using Timestamp = std::chrono::sys_seconds;

/// Supports needed (1% of Madrid's population over 16) before a petition
/// goes to a city-wide vote.
inline constexpr std::int64_t kSupportThreshold = 27064;

struct Petition {
    std::string id;
    std::string title;
    std::string summary;
    std::string body;
    std::int64_t supports = 0;
    Timestamp created_at{};
    std::string url;

    [[nodiscard]] bool reached_threshold() const noexcept { return supports > kSupportThreshold; }

    friend bool operator==(const Petition&, const Petition&) = default;
};

/// Id order used everywhere results are listed: all-digit ids compare as
/// numbers ("9" before "10"), anything else bytewise, digits first.
inline bool id_less(std::string_view a, std::string_view b) noexcept
{
    const auto numeric = [](std::string_view s) {
        if (s.empty())
            return false;
        for (char c : s) {
            if (c < '0' || c > '9')
                return false;
        }
        return true;
    };
    const bool na = numeric(a);
    const bool nb = numeric(b);
    if (na != nb)
        return na;
    if (na) {
        const auto strip = [](std::string_view s) {
            const auto nz = s.find_first_not_of('0');
            return nz == std::string_view::npos ? std::string_view{} : s.substr(nz);
        };
        const auto sa = strip(a);
        const auto sb = strip(b);
        if (sa.size() != sb.size())
            return sa.size() < sb.size();
        if (sa != sb)
            return sa < sb;
    }
    return a < b;
}

namespace detail {

inline std::optional<int> parse_digits(std::string_view s, std::size_t pos, std::size_t count)
{
    if (pos + count > s.size())
        return std::nullopt;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + count, value);
    if (ec != std::errc{} || ptr != s.data() + pos + count)
        return std::nullopt;
    return value;
}

} // namespace detail

/// Parses `YYYY-MM-DDTHH:MM:SS[.fff](Z|±HH:MM)`; a bare date means midnight UTC.
/// Fractional seconds are truncated.
inline std::optional<Timestamp> parse_iso8601(std::string_view s)
{
    using namespace std::chrono;
    auto y = detail::parse_digits(s, 0, 4);
    auto mo = detail::parse_digits(s, 5, 2);
    auto d = detail::parse_digits(s, 8, 2);
    if (!y || !mo || !d || s.size() < 10 || s[4] != '-' || s[7] != '-')
        return std::nullopt;
    const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok())
        return std::nullopt;
    Timestamp ts = sys_days{ymd};
    if (s.size() == 10)
        return ts;

    if (s[10] != 'T' && s[10] != ' ')
        return std::nullopt;
    auto h = detail::parse_digits(s, 11, 2);
    auto mi = detail::parse_digits(s, 14, 2);
    auto se = detail::parse_digits(s, 17, 2);
    if (!h || !mi || !se || s.size() < 19 || s[13] != ':' || s[16] != ':' || *h > 23 || *mi > 59 || *se > 60)
        return std::nullopt;
    ts += hours{*h} + minutes{*mi} + seconds{*se};

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        const std::size_t digits_start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
            ++pos;
        if (pos == digits_start)
            return std::nullopt;
    }
    if (pos == s.size())
        return std::nullopt;
    if (s[pos] == 'Z' || s[pos] == 'z')
        return pos + 1 == s.size() ? std::optional{ts} : std::nullopt;
    if (s[pos] != '+' && s[pos] != '-')
        return std::nullopt;
    const int sign = s[pos] == '+' ? 1 : -1;
    auto oh = detail::parse_digits(s, pos + 1, 2);
    auto om = detail::parse_digits(s, pos + 4, 2);
    if (!oh || !om || s.size() != pos + 6 || s[pos + 3] != ':')
        return std::nullopt;
    return ts - sign * (hours{*oh} + minutes{*om});
}

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
inline std::string format_iso8601(Timestamp ts)
{
    using namespace std::chrono;
    const auto day_start = floor<days>(ts);
    const year_month_day ymd{day_start};
    const hh_mm_ss hms{ts - day_start};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

/// `scheme://host[...]` with an RFC 3986 scheme and a non-empty host.
inline bool is_absolute_url(std::string_view url)
{
    const auto colon = url.find("://");
    if (colon == std::string_view::npos || colon == 0)
        return false;
    const auto scheme = url.substr(0, colon);
    const auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    if (!alpha(scheme.front()))
        return false;
    for (char c : scheme) {
        if (!alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' && c != '.')
            return false;
    }
    const auto rest = url.substr(colon + 3);
    const auto host_end = rest.find_first_of("/?#");
    const auto host = rest.substr(0, host_end);
    if (host.empty())
        return false;
    for (char c : url) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            return false;
    }
    return true;
}

} // namespace decide
