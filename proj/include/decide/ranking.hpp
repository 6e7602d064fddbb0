#pragma once

// The list ranking the discovery views are meant to replace: a Reddit-style
// hot score (log of net votes plus a linear bonus for recency), and the
// plain supports ordering it superseded.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "decide/error.hpp"
#include "decide/petition.hpp"

namespace decide {

struct HotScoreParams {
    /// Origin of the time bonus. The default predates every petition on the
    /// platform, so all real timestamps are admissible.
    Timestamp epoch = std::chrono::sys_days{std::chrono::year{2015} / 6 / 15};
    /// Seconds of recency worth one order of magnitude of votes.
    double decay_divisor = 45000.0;
};

/// The score in fixed-point units of 1e-7 (the rounding precision). When
/// the divisor is a whole number of seconds the time term's integer part is
/// computed exactly, so moving created_at by one divisor changes the result
/// by exactly 10^7 units.
inline std::int64_t hot_score_units(std::int64_t ups, std::int64_t downs, Timestamp created_at,
                                    const HotScoreParams& params = {})
{
    if (!(params.decay_divisor > 0.0) || !std::isfinite(params.decay_divisor))
        throw Error(ErrorCode::InvalidConfig, "decay_divisor must be positive");
    if (created_at < params.epoch)
        throw Error(ErrorCode::TimestampBeforeEpoch, format_iso8601(created_at) + " precedes epoch " +
                                                         format_iso8601(params.epoch));
    constexpr std::int64_t kUnits = 10'000'000;
    const std::int64_t net = ups - downs;
    const double order = std::log10(static_cast<double>(std::max<std::int64_t>(net < 0 ? -net : net, 1)));
    const int sign = net > 0 ? 1 : (net < 0 ? -1 : 0);
    const std::int64_t age = (created_at - params.epoch).count();

    const double divisor = params.decay_divisor;
    if (divisor == std::floor(divisor) && divisor <= 1e12 && age <= INT64_MAX / kUnits) {
        const auto d = static_cast<std::int64_t>(divisor);
        const std::int64_t whole = age * kUnits / d;
        const double frac = static_cast<double>(age * kUnits % d) / divisor;
        return sign * (whole + std::llround(order * kUnits + frac));
    }
    return sign * std::llround((order + static_cast<double>(age) / divisor) * kUnits);
}

/// sign · (log10(max(|ups - downs|, 1)) + (created_at − epoch) / divisor),
/// rounded to 7 decimals. For net > 0 this is the usual order + age term;
/// putting the sign outside keeps negative nets monotone.
inline double hot_score(std::int64_t ups, std::int64_t downs, Timestamp created_at, const HotScoreParams& params = {})
{
    return static_cast<double>(hot_score_units(ups, downs, created_at, params)) / 1e7;
}

enum class RankMode { hot, supports, newest };

inline RankMode parse_rank_mode(std::string_view s)
{
    if (s == "hot")
        return RankMode::hot;
    if (s == "supports")
        return RankMode::supports;
    if (s == "newest")
        return RankMode::newest;
    throw Error(ErrorCode::InvalidConfig, "unknown rank mode '" + std::string(s) + "'");
}

constexpr std::string_view to_string(RankMode m) noexcept
{
    switch (m) {
    case RankMode::hot: return "hot";
    case RankMode::supports: return "supports";
    case RankMode::newest: return "newest";
    }
    return "hot";
}

/// Descending by the mode's key; ties by newer first, then id. Supports
/// count as upvotes with no downvotes.
inline std::vector<Petition> rank_petitions(std::vector<Petition> petitions, RankMode mode,
                                            const HotScoreParams& params = {})
{
    struct Keyed {
        double key;
        Petition petition;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(petitions.size());
    for (auto& p : petitions) {
        double key = 0.0;
        switch (mode) {
        case RankMode::hot: key = hot_score(p.supports, 0, p.created_at, params); break;
        case RankMode::supports: key = static_cast<double>(p.supports); break;
        case RankMode::newest: key = static_cast<double>(p.created_at.time_since_epoch().count()); break;
        }
        keyed.push_back(Keyed{key, std::move(p)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.key != b.key)
            return a.key > b.key;
        if (a.petition.created_at != b.petition.created_at)
            return a.petition.created_at > b.petition.created_at;
        return a.petition.id < b.petition.id;
    });
    std::vector<Petition> out;
    out.reserve(keyed.size());
    for (auto& k : keyed)
        out.push_back(std::move(k.petition));
    return out;
}

} // namespace decide
