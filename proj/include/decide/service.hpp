#pragma once

// Request handling for the discovery API, independent of any HTTP server:
// handlers map (path, params) to (status, body). The per-query result cache
// lets the petitions endpoint resolve topic ids handed out by /api/topics.

#include <charconv>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "decide/config.hpp"
#include "decide/error.hpp"
#include "decide/hash.hpp"
#include "decide/ingestion.hpp"
#include "decide/layout.hpp"
#include "decide/report.hpp"
#include "decide/stc.hpp"

namespace decide {

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

using Params = std::map<std::string, std::string>;
using Clock = std::function<std::chrono::steady_clock::time_point()>;
using PetitionFetcher = std::function<std::vector<Petition>(std::string_view query)>;

inline int http_status(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyQuery: return 400;
    case ErrorCode::SourceUnavailable:
    case ErrorCode::SchemaMismatch: return 502;
    case ErrorCode::NonpositiveCanvas:
    case ErrorCode::InvalidWeight: return 422;
    case ErrorCode::UnknownTopic: return 404;
    case ErrorCode::ExpiredQueryCache: return 410;
    case ErrorCode::CannotFit: return 422;
    default: return 500;
    }
}

inline Response error_response(const Error& e)
{
    OrderedJson j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    return Response{http_status(e.code()), "application/json", j.dump()};
}

class DiscoveryService {
public:
    explicit DiscoveryService(DiscoveryConfig config, PetitionFetcher fetcher = {}, Clock clock = {})
        : config_(std::move(config)), analyzer_(config_.analyzer()), fetcher_(std::move(fetcher)),
          clock_(clock ? std::move(clock) : Clock([] { return std::chrono::steady_clock::now(); }))
    {
        config_.validate();
        if (!fetcher_) {
            fetcher_ = [this](std::string_view q) {
                return fetch_petitions(q, config_.source(), config_.fetch_options());
            };
        }
    }

    [[nodiscard]] const DiscoveryConfig& config() const noexcept { return config_; }

    /// GET /api/topics?q=&w=&h=
    Response topics(const Params& params)
    {
        try {
            const std::string query = param(params, "q").value_or("");
            if (unicode::trim(query).empty())
                throw Error(ErrorCode::EmptyQuery, "parameter q must contain a search term");
            const Canvas canvas = dimensions(params);
            const auto entry = resolve_query(query);
            const auto items = mosaic_items(entry->topics);
            std::vector<Tile> tiles;
            if (!items.empty())
                tiles = mosaic_layout(items, canvas, config_.mosaic_options());
            return Response{200, "application/json", topic_set_to_json(entry->topics, tiles, &canvas).dump()};
        } catch (const Error& e) {
            return error_response(e);
        }
    }

    /// GET /api/topics/{id}/petitions?w=&h=&seed=
    Response petitions(const std::string& topic_id, const Params& params)
    {
        try {
            const Canvas canvas = dimensions(params);
            std::uint64_t seed = config_.seed;
            if (auto s = param(params, "seed"))
                seed = parse_uint(*s, "seed");
            const auto entry = lookup_topic(topic_id);
            const Topic* topic = entry->topics.find(topic_id);
            std::vector<const Petition*> members;
            std::vector<CircleInput> circles;
            for (const auto& id : topic->petition_ids) {
                const Petition& p = entry->petitions.at(id);
                members.push_back(&p);
                circles.push_back({p.id, circle_radius(p.supports, config_.radius_scale, config_.min_radius)});
            }
            const auto packed = pack_circles(circles, canvas, seed, config_.pack_options());
            return Response{200, "application/json", petition_view_to_json(*topic, members, packed, seed).dump()};
        } catch (const Error& e) {
            return error_response(e);
        }
    }

    Response health() const { return Response{200, "text/plain", "ok"}; }

    /// Routes a GET request path.
    Response handle(std::string_view path, const Params& params)
    {
        if (path == "/healthz")
            return health();
        if (path == "/api/topics")
            return topics(params);
        constexpr std::string_view prefix = "/api/topics/";
        constexpr std::string_view suffix = "/petitions";
        if (path.starts_with(prefix) && path.ends_with(suffix) && path.size() > prefix.size() + suffix.size()) {
            const auto id = path.substr(prefix.size(), path.size() - prefix.size() - suffix.size());
            if (id.find('/') == std::string_view::npos)
                return petitions(std::string(id), params);
        }
        OrderedJson j;
        j["error"] = "NotFound";
        j["message"] = "no route for " + std::string(path);
        return Response{404, "application/json", j.dump()};
    }

    /// Drops expired cache entries; their topic ids then answer 410.
    void purge_expired()
    {
        std::lock_guard lock(mutex_);
        purge_locked(clock_());
    }

private:
    struct Entry {
        TopicSet topics;
        std::unordered_map<std::string, Petition> petitions;
        std::chrono::steady_clock::time_point expires;
    };

    static std::optional<std::string> param(const Params& params, const std::string& key)
    {
        if (auto it = params.find(key); it != params.end())
            return it->second;
        return std::nullopt;
    }

    static std::uint64_t parse_uint(const std::string& s, const char* name)
    {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw Error(ErrorCode::NonpositiveCanvas, std::string("parameter ") + name + " must be a non-negative integer");
        return v;
    }

    Canvas dimensions(const Params& params) const
    {
        Canvas c{config_.canvas_width, config_.canvas_height};
        const auto read = [&](const char* key, double& out) {
            if (auto s = param(params, key)) {
                const auto v = parse_uint(*s, key);
                if (v == 0 || v > 100000)
                    throw Error(ErrorCode::NonpositiveCanvas, std::string("parameter ") + key + " must be in [1, 100000]");
                out = static_cast<double>(v);
            }
        };
        read("w", c.width);
        read("h", c.height);
        return c;
    }

    static std::string query_key(std::string_view query) { return unicode::fold_key(unicode::trim(query)); }

    std::shared_ptr<const Entry> resolve_query(const std::string& query)
    {
        const auto key = query_key(query);
        {
            std::lock_guard lock(mutex_);
            const auto now = clock_();
            purge_locked(now);
            if (auto it = cache_.find(key); it != cache_.end())
                return it->second;
        }
        // Pipeline runs outside the lock; concurrent identical queries just
        // compute the same result twice.
        auto petitions = fetcher_(query);
        auto entry = std::make_shared<Entry>();
        entry->topics = cluster_topics(query, petitions, analyzer_, config_.clustering());
        for (auto& p : petitions)
            entry->petitions.emplace(p.id, std::move(p));

        std::lock_guard lock(mutex_);
        entry->expires = clock_() + std::chrono::seconds{config_.query_cache_ttl_seconds};
        index_locked(key, *entry);
        cache_[key] = entry;
        return entry;
    }

    std::shared_ptr<const Entry> lookup_topic(const std::string& topic_id)
    {
        std::lock_guard lock(mutex_);
        purge_locked(clock_());
        if (auto it = topic_index_.find(topic_id); it != topic_index_.end()) {
            if (auto c = cache_.find(it->second); c != cache_.end())
                return c->second;
        }
        if (tombstones_.count(topic_id))
            throw Error(ErrorCode::ExpiredQueryCache, "results for topic " + topic_id + " expired; repeat the query");
        throw Error(ErrorCode::UnknownTopic, "no topic with id " + topic_id);
    }

    void index_locked(const std::string& key, const Entry& entry)
    {
        const auto add = [&](const Topic& t) {
            topic_index_[t.id] = key;
            tombstones_.erase(t.id);
        };
        for (const auto& t : entry.topics.topics)
            add(t);
        add(entry.topics.other);
    }

    void purge_locked(std::chrono::steady_clock::time_point now)
    {
        for (auto it = cache_.begin(); it != cache_.end();) {
            if (it->second->expires > now) {
                ++it;
                continue;
            }
            const auto bury = [&](const Topic& t) {
                topic_index_.erase(t.id);
                tombstones_.insert(t.id);
            };
            for (const auto& t : it->second->topics.topics)
                bury(t);
            bury(it->second->topics.other);
            it = cache_.erase(it);
        }
    }

    DiscoveryConfig config_;
    Analyzer analyzer_;
    PetitionFetcher fetcher_;
    Clock clock_;

    std::mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<const Entry>> cache_;
    std::unordered_map<std::string, std::string> topic_index_;
    std::unordered_set<std::string> tombstones_;
};

} // namespace decide
