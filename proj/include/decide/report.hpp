#pragma once

// JSON documents and the plain-text topic table. Field order is fixed
// (ordered_json) so identical input gives byte-identical output.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "decide/layout.hpp"
#include "decide/petition.hpp"
#include "decide/stc.hpp"
#include "decide/unicode.hpp"

namespace decide {

using OrderedJson = nlohmann::ordered_json;

/// 9388 -> "9,388".
inline std::string format_count(std::int64_t n)
{
    const bool negative = n < 0;
    const std::uint64_t magnitude =
        negative ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    const std::string digits = std::to_string(magnitude);
    std::string out;
    const std::size_t lead = digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i % 3) == lead % 3)
            out += ',';
        out += digits[i];
    }
    return negative ? "-" + out : out;
}

inline std::string plural(std::size_t n, std::string_view word)
{
    return format_count(static_cast<std::int64_t>(n)) + " " + std::string(word) + (n == 1 ? "" : "s");
}

/// "Impuesto de Basuras \u2014 3 petitions \u2014 1,234 supports" (em dash separators)
inline std::string topic_tooltip(const Topic& t)
{
    return t.label + " — " + plural(t.petition_count, "petition") + " — " +
           plural(static_cast<std::size_t>(std::max<std::int64_t>(t.total_supports, 0)), "support");
}

inline std::string petition_tooltip(const Petition& p)
{
    return p.title + " — " + plural(static_cast<std::size_t>(p.supports), "support");
}

inline OrderedJson tile_to_json(const Tile& t)
{
    OrderedJson j;
    j["x"] = t.x;
    j["y"] = t.y;
    j["width"] = t.width;
    j["height"] = t.height;
    return j;
}

inline OrderedJson topic_to_json(const Topic& t, const Tile* tile)
{
    OrderedJson j;
    j["id"] = t.id;
    j["label"] = t.label;
    j["petition_count"] = t.petition_count;
    j["total_supports"] = t.total_supports;
    j["color_index"] = t.color_index;
    j["tooltip"] = topic_tooltip(t);
    j["petition_ids"] = t.petition_ids;
    j["phrases"] = t.phrases;
    j["tile"] = tile ? tile_to_json(*tile) : OrderedJson(nullptr);
    return j;
}

/// Weighted items for the mosaic: every topic, then the residual bucket when
/// it is non-empty. Weight is the support sum.
inline std::vector<WeightedItem> mosaic_items(const TopicSet& set)
{
    std::vector<WeightedItem> items;
    for (const auto& t : set.topics)
        items.push_back({t.id, static_cast<double>(t.total_supports)});
    if (set.other.petition_count > 0)
        items.push_back({set.other.id, static_cast<double>(set.other.total_supports)});
    return items;
}

/// `tiles` may be empty (no geometry requested); otherwise it is the
/// mosaic_layout output for mosaic_items(set).
inline OrderedJson topic_set_to_json(const TopicSet& set, const std::vector<Tile>& tiles = {},
                                     const Canvas* canvas = nullptr)
{
    const auto tile_for = [&](const std::string& id) -> const Tile* {
        for (const auto& t : tiles) {
            if (t.topic_id == id)
                return &t;
        }
        return nullptr;
    };
    OrderedJson j;
    j["query"] = set.query;
    j["total_petitions"] = set.total_petitions;
    if (canvas)
        j["canvas"] = OrderedJson{{"width", canvas->width}, {"height", canvas->height}};
    j["topics"] = OrderedJson::array();
    for (const auto& t : set.topics)
        j["topics"].push_back(topic_to_json(t, tile_for(t.id)));
    j["other"] = topic_to_json(set.other, tile_for(set.other.id));
    return j;
}

inline OrderedJson petition_view_to_json(const Topic& topic, const std::vector<const Petition*>& members,
                                         const PackResult& packed, std::uint64_t seed)
{
    OrderedJson j;
    j["topic_id"] = topic.id;
    j["label"] = topic.label;
    j["seed"] = seed;
    j["canvas"] = OrderedJson{{"width", packed.canvas.width}, {"height", packed.canvas.height}};
    j["petitions"] = OrderedJson::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Petition& p = *members[i];
        const CirclePlacement& c = packed.circles[i];
        OrderedJson e;
        e["id"] = p.id;
        e["title"] = p.title;
        e["supports"] = p.supports;
        e["url"] = p.url;
        e["tooltip"] = petition_tooltip(p);
        e["circle"] = OrderedJson{{"cx", c.cx}, {"cy", c.cy}, {"radius", c.radius}};
        j["petitions"].push_back(std::move(e));
    }
    return j;
}

namespace detail {

inline std::size_t display_width(std::string_view s) { return unicode::decode(s).size(); }

inline std::string pad_right(std::string_view s, std::size_t width)
{
    std::string out(s);
    out.append(width - std::min(width, display_width(s)), ' ');
    return out;
}

inline std::string pad_left(std::string_view s, std::size_t width)
{
    std::string out(width - std::min(width, display_width(s)), ' ');
    out += s;
    return out;
}

} // namespace detail

/// Three columns: Topic | Petitions | Supports, topics in rank order and
/// the residual bucket last.
inline std::string format_topic_table(const TopicSet& set)
{
    struct Row {
        std::string label, count, supports;
    };
    std::vector<Row> rows;
    for (const auto& t : set.topics)
        rows.push_back({t.label, format_count(static_cast<std::int64_t>(t.petition_count)), format_count(t.total_supports)});
    rows.push_back({set.other.label, format_count(static_cast<std::int64_t>(set.other.petition_count)),
                    format_count(set.other.total_supports)});

    const Row header{"Topic", "Petitions", "Supports"};
    std::size_t w0 = detail::display_width(header.label);
    std::size_t w1 = header.count.size();
    std::size_t w2 = header.supports.size();
    for (const auto& r : rows) {
        w0 = std::max(w0, detail::display_width(r.label));
        w1 = std::max(w1, r.count.size());
        w2 = std::max(w2, r.supports.size());
    }
    const auto line = [&](const Row& r, bool head) {
        return detail::pad_right(r.label, w0) + " | " + (head ? detail::pad_right(r.count, w1) : detail::pad_left(r.count, w1)) +
               " | " + (head ? detail::pad_right(r.supports, w2) : detail::pad_left(r.supports, w2)) + "\n";
    };
    std::string out = line(header, true);
    out += std::string(w0, '-') + "-+-" + std::string(w1, '-') + "-+-" + std::string(w2, '-') + "\n";
    for (const auto& r : rows)
        out += line(r, false);
    return out;
}

} // namespace decide
