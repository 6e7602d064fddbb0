#pragma once

// Geometry for the two discovery views: a squarified treemap of topics
// (tile area ∝ weight) and an overlap-free random circle layout of
// petitions (circle area ∝ supports). Coordinates are canvas units with the
// origin at the top-left corner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "decide/error.hpp"

namespace decide {

struct Canvas {
    double width = 0.0;
    double height = 0.0;

    [[nodiscard]] double area() const noexcept { return width * height; }
    [[nodiscard]] double diagonal() const noexcept { return std::hypot(width, height); }
};

struct WeightedItem {
    std::string id;
    double weight = 0.0;
};

struct Tile {
    std::string topic_id;
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::size_t color_index = 0;

    [[nodiscard]] double area() const noexcept { return width * height; }
};

struct MosaicOptions {
    /// Substituted for zero weights so empty topics stay clickable.
    double zero_weight_floor = 1.0;
};

namespace detail {

// Worst aspect ratio of a row of areas laid along a side of length `side`.
inline double worst_ratio(std::span<const double> row, double side)
{
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    const auto [mn, mx] = std::minmax_element(row.begin(), row.end());
    const double s2 = side * side;
    const double sum2 = sum * sum;
    return std::max(s2 * *mx / sum2, sum2 / (s2 * *mn));
}

} // namespace detail

/// Squarified treemap. Items are laid out largest first (input order breaks
/// ties); each row is closed when adding the next item would worsen its
/// worst aspect ratio. The final tile of every row and of the whole layout
/// absorbs rounding so tiles tile the canvas exactly. Tiles are returned in
/// input order; color_index is the input position.
inline std::vector<Tile> mosaic_layout(std::span<const WeightedItem> items, Canvas canvas,
                                       const MosaicOptions& options = {})
{
    if (items.empty())
        throw Error(ErrorCode::EmptyInput, "mosaic needs at least one item");
    if (!(canvas.width > 0.0) || !(canvas.height > 0.0) || !std::isfinite(canvas.width) ||
        !std::isfinite(canvas.height))
        throw Error(ErrorCode::NonpositiveCanvas, "canvas must have positive finite size");

    std::vector<double> weights;
    weights.reserve(items.size());
    for (const auto& it : items) {
        if (it.weight < 0.0 || !std::isfinite(it.weight))
            throw Error(ErrorCode::InvalidWeight, "weight of '" + it.id + "' must be finite and non-negative");
        weights.push_back(it.weight == 0.0 ? options.zero_weight_floor : it.weight);
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0))
        throw Error(ErrorCode::InvalidWeight, "total weight must be positive");

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });

    const double scale = canvas.area() / total;
    std::vector<double> areas(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        areas[i] = weights[order[i]] * scale;

    std::vector<Tile> placed(items.size());
    // Free rectangle, tracked by its edges so neighbouring tiles share
    // bit-identical coordinates.
    double left = 0.0;
    double top = 0.0;
    const double right = canvas.width;
    const double bottom = canvas.height;

    std::size_t next = 0;
    while (next < areas.size()) {
        const double free_w = right - left;
        const double free_h = bottom - top;
        const bool horizontal_strip = free_w < free_h;  // row runs along the shorter side
        const double side = horizontal_strip ? free_w : free_h;

        std::size_t end = next + 1;
        while (end < areas.size()) {
            std::span<const double> current(areas.data() + next, end - next);
            std::span<const double> extended(areas.data() + next, end - next + 1);
            if (detail::worst_ratio(extended, side) > detail::worst_ratio(current, side))
                break;
            ++end;
        }
        const bool last_row = end == areas.size();
        const double row_area = std::accumulate(areas.begin() + static_cast<std::ptrdiff_t>(next),
                                                areas.begin() + static_cast<std::ptrdiff_t>(end), 0.0);

        if (horizontal_strip) {
            const double strip_bottom = last_row ? bottom : std::min(bottom, top + row_area / free_w);
            const double thickness = strip_bottom - top;
            double cursor = left;
            for (std::size_t k = next; k < end; ++k) {
                const double edge = (k + 1 == end) ? right : cursor + areas[k] / thickness;
                Tile& t = placed[order[k]];
                t.x = cursor;
                t.y = top;
                t.width = edge - cursor;
                t.height = thickness;
                cursor = edge;
            }
            top = strip_bottom;
        } else {
            const double strip_right = last_row ? right : std::min(right, left + row_area / free_h);
            const double thickness = strip_right - left;
            double cursor = top;
            for (std::size_t k = next; k < end; ++k) {
                const double edge = (k + 1 == end) ? bottom : cursor + areas[k] / thickness;
                Tile& t = placed[order[k]];
                t.x = left;
                t.y = cursor;
                t.width = thickness;
                t.height = edge - cursor;
                cursor = edge;
            }
            left = strip_right;
        }
        next = end;
    }

    for (std::size_t i = 0; i < items.size(); ++i) {
        placed[i].topic_id = items[i].id;
        placed[i].color_index = i;
    }
    return placed;
}

/// Circle area proportional to supports, floored at `min_radius`.
inline double circle_radius(std::int64_t supports, double scale, double min_radius)
{
    if (!(scale > 0.0))
        throw Error(ErrorCode::InvalidConfig, "radius scale must be positive");
    const double r = scale * std::sqrt(static_cast<double>(std::max<std::int64_t>(supports, 0)));
    return std::max(min_radius, r);
}

struct CircleInput {
    std::string id;
    double radius = 0.0;
};

struct CirclePlacement {
    std::string petition_id;
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
};

struct PackOptions {
    std::size_t max_iterations = 500;
    /// Total circle area may use at most this share of the canvas before the
    /// canvas is enlarged.
    double max_fill = 0.7;
    /// Growth applied when relaxation does not converge.
    double growth = 1.25;
    /// Cap on the linear enlargement relative to the requested canvas.
    double max_scale = 64.0;
    /// Allowed overlap as a fraction of the canvas diagonal.
    double tolerance = 1e-6;
};

struct PackResult {
    std::vector<CirclePlacement> circles;
    /// Canvas actually used; larger than requested when the circles did not fit.
    Canvas canvas;
    std::size_t iterations = 0;
};

/// Seeded deterministic uniform doubles in [0, 1). Built directly on the
/// mt19937_64 bit stream because standard distributions differ across
/// library implementations.
class UnitRandom {
public:
    explicit UnitRandom(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline double max_overlap(std::span<const CirclePlacement> c)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double d = std::hypot(c[j].cx - c[i].cx, c[j].cy - c[i].cy);
            worst = std::max(worst, c[i].radius + c[j].radius - d);
        }
    }
    return worst;
}

// Position-based relaxation on a fixed canvas: overlapping pairs are pushed
// apart along their center line (the smaller circle moves more), then every
// circle is clamped inside the canvas. Returns the iterations used, or
// nullopt when max_iterations ran out.
inline std::optional<std::size_t> relax(std::vector<CirclePlacement>& c, Canvas canvas, const PackOptions& opt,
                                        UnitRandom& rng)
{
    const double eps = opt.tolerance * canvas.diagonal();
    // Pairs are separated slightly beyond contact so clamping cannot undo it.
    const double slack = eps * 0.5;
    const auto clamp_inside = [&](CirclePlacement& p) {
        p.cx = std::clamp(p.cx, p.radius, canvas.width - p.radius);
        p.cy = std::clamp(p.cy, p.radius, canvas.height - p.radius);
    };
    for (auto& p : c)
        clamp_inside(p);

    for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
        bool moved = false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                const double min_d = c[i].radius + c[j].radius;
                double dx = c[j].cx - c[i].cx;
                double dy = c[j].cy - c[i].cy;
                if (std::abs(dx) >= min_d || std::abs(dy) >= min_d)
                    continue;
                double d = std::hypot(dx, dy);
                if (d >= min_d)
                    continue;
                if (d < 1e-12) {
                    // coincident centers: pick a random direction
                    const double angle = rng.next() * 2.0 * 3.14159265358979323846;
                    d = 1e-9;
                    dx = std::cos(angle) * d;
                    dy = std::sin(angle) * d;
                }
                const double push = min_d - d + slack;
                const double wi = c[j].radius * c[j].radius;
                const double wj = c[i].radius * c[i].radius;
                const double share_i = wi / (wi + wj);
                const double ux = dx / d;
                const double uy = dy / d;
                c[i].cx -= ux * push * share_i;
                c[i].cy -= uy * push * share_i;
                c[j].cx += ux * push * (1.0 - share_i);
                c[j].cy += uy * push * (1.0 - share_i);
                clamp_inside(c[i]);
                clamp_inside(c[j]);
                moved = true;
            }
        }
        if (!moved || max_overlap(c) < eps)
            return iter + 1;
    }
    return max_overlap(c) < eps ? std::optional<std::size_t>{opt.max_iterations} : std::nullopt;
}

} // namespace detail

/// Random, non-overlapping circle layout. Starting points are drawn from a
/// seeded generator in a central region sized to the total circle area, then
/// relaxed. If relaxation does not converge the canvas grows and the layout
/// restarts from the same seed, until `max_scale` is exceeded.
inline PackResult pack_circles(std::span<const CircleInput> inputs, Canvas canvas, std::uint64_t seed,
                               const PackOptions& options = {})
{
    if (!(canvas.width > 0.0) || !(canvas.height > 0.0) || !std::isfinite(canvas.width) ||
        !std::isfinite(canvas.height))
        throw Error(ErrorCode::NonpositiveCanvas, "canvas must have positive finite size");
    for (const auto& in : inputs) {
        if (!(in.radius > 0.0) || !std::isfinite(in.radius))
            throw Error(ErrorCode::InvalidWeight, "radius of '" + in.id + "' must be positive");
    }

    PackResult result;
    result.canvas = canvas;
    if (inputs.empty())
        return result;

    double circle_area = 0.0;
    double max_diameter = 0.0;
    for (const auto& in : inputs) {
        circle_area += 3.14159265358979323846 * in.radius * in.radius;
        max_diameter = std::max(max_diameter, 2.0 * in.radius);
    }
    double scale = 1.0;
    scale = std::max(scale, std::sqrt(circle_area / (options.max_fill * canvas.area())));
    scale = std::max(scale, max_diameter / std::min(canvas.width, canvas.height));

    while (scale <= options.max_scale) {
        const Canvas current{canvas.width * scale, canvas.height * scale};
        UnitRandom rng(seed);
        // Spread grows with density: a lone small circle starts near the center.
        const double fill = circle_area / current.area();
        const double spread = std::clamp(1.5 * std::sqrt(fill), 0.25, 1.0);
        std::vector<CirclePlacement> circles;
        circles.reserve(inputs.size());
        for (const auto& in : inputs) {
            const double rx = rng.next();
            const double ry = rng.next();
            CirclePlacement p;
            p.petition_id = in.id;
            p.radius = in.radius;
            p.cx = current.width * (0.5 + (rx - 0.5) * spread);
            p.cy = current.height * (0.5 + (ry - 0.5) * spread);
            circles.push_back(std::move(p));
        }
        if (const auto iters = detail::relax(circles, current, options, rng)) {
            result.circles = std::move(circles);
            result.canvas = current;
            result.iterations = *iters;
            return result;
        }
        scale *= options.growth;
    }
    throw Error(ErrorCode::CannotFit, std::to_string(inputs.size()) + " circles do not fit within " +
                                          std::to_string(options.max_scale) + "x the requested canvas");
}

} // namespace decide
