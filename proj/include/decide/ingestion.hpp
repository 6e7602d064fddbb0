#pragma once

// Query-driven petition retrieval from a corpus file or from the platform's
// GraphQL endpoint, with an optional on-disk result cache.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "decide/corpus.hpp"
#include "decide/error.hpp"
#include "decide/hash.hpp"
#include "decide/petition.hpp"
#include "decide/unicode.hpp"

namespace decide {

enum class SourceKind { live_api, file };

constexpr std::string_view to_string(SourceKind k) noexcept { return k == SourceKind::file ? "file" : "live-api"; }

inline SourceKind parse_source_kind(std::string_view s)
{
    if (s == "file")
        return SourceKind::file;
    if (s == "live-api")
        return SourceKind::live_api;
    throw Error(ErrorCode::InvalidConfig, "unknown source kind '" + std::string(s) + "'");
}

struct CorpusSource {
    SourceKind kind = SourceKind::file;
    /// Corpus path for file sources, GraphQL endpoint URL for live ones.
    std::string location;
    std::optional<std::filesystem::path> cache_dir;
    std::chrono::seconds cache_ttl{3600};

    static CorpusSource file(std::string path)
    {
        CorpusSource s;
        s.location = std::move(path);
        return s;
    }
    static CorpusSource live(std::string url)
    {
        CorpusSource s;
        s.kind = SourceKind::live_api;
        s.location = std::move(url);
        return s;
    }
};

enum class MatchScope { full_text, title_only };

/// Posts `body` to `url` and returns the response body; throws on any
/// transport failure or non-2xx status.
using Transport =
    std::function<std::string(const std::string& url, const std::string& body, std::chrono::milliseconds timeout)>;

struct FetchOptions {
    MatchScope scope = MatchScope::full_text;
    std::chrono::milliseconds timeout{10000};
    unsigned attempts = 3;
    std::chrono::milliseconds backoff{250};
    unsigned page_size = 25;
    unsigned max_pages = 4000;
    /// Required for live sources.
    Transport transport;
};

inline bool matches_query(const Petition& p, std::string_view folded_query, MatchScope scope)
{
    if (unicode::fold_key(p.title).find(folded_query) != std::string::npos)
        return true;
    if (scope == MatchScope::title_only)
        return false;
    return unicode::fold_key(p.summary).find(folded_query) != std::string::npos ||
           unicode::fold_key(p.body).find(folded_query) != std::string::npos;
}

inline void sort_by_id(std::vector<Petition>& petitions)
{
    std::sort(petitions.begin(), petitions.end(), [](const Petition& a, const Petition& b) { return id_less(a.id, b.id); });
}

namespace detail {

// Crude HTML to text: tags dropped, block ends become line breaks, common
// entities decoded.
inline std::string strip_html(std::string_view html)
{
    std::string out;
    out.reserve(html.size());
    for (std::size_t i = 0; i < html.size();) {
        if (html[i] == '<') {
            const auto close = html.find('>', i);
            if (close == std::string_view::npos)
                break;
            const auto tag = unicode::lower(html.substr(i + 1, close - i - 1));
            if (tag.starts_with("/p") || tag.starts_with("br") || tag.starts_with("/li") || tag.starts_with("/h") ||
                tag.starts_with("/div"))
                out += '\n';
            else
                out += ' ';
            i = close + 1;
            continue;
        }
        if (html[i] == '&') {
            static constexpr std::pair<std::string_view, std::string_view> entities[] = {
                {"&amp;", "&"}, {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"}, {"&nbsp;", " "}};
            bool hit = false;
            for (auto [from, to] : entities) {
                if (html.substr(i, from.size()) == from) {
                    out += to;
                    i += from.size();
                    hit = true;
                    break;
                }
            }
            if (hit)
                continue;
        }
        out += html[i++];
    }
    return std::string(unicode::trim(out));
}

// ISO-8601, or the Rails default "YYYY-MM-DD HH:MM:SS +HHMM" / "... UTC".
inline std::optional<Timestamp> parse_api_timestamp(std::string_view s)
{
    if (auto ts = parse_iso8601(s))
        return ts;
    std::string t(unicode::trim(s));
    if (t.ends_with(" UTC"))
        return parse_iso8601(t.substr(0, t.size() - 4) + "Z");
    if (t.size() >= 6 && t[t.size() - 6] == ' ' && (t[t.size() - 5] == '+' || t[t.size() - 5] == '-'))
        return parse_iso8601(t.substr(0, t.size() - 6) + t.substr(t.size() - 5, 3) + ":" + t.substr(t.size() - 2));
    return std::nullopt;
}

inline std::string site_base(std::string_view endpoint)
{
    std::string base(endpoint);
    while (!base.empty() && base.back() == '/')
        base.pop_back();
    for (std::string_view suffix : {"/graphql", "/graphiql"}) {
        if (base.ends_with(suffix)) {
            base.resize(base.size() - suffix.size());
            break;
        }
    }
    return base;
}

} // namespace detail

/// Pages through every proposal on a Consul-style GraphQL endpoint. The
/// API has no text search, so filtering happens client-side.
class GraphQlClient {
public:
    GraphQlClient(std::string endpoint, FetchOptions options)
        : endpoint_(std::move(endpoint)), options_(std::move(options))
    {
        if (!options_.transport)
            throw Error(ErrorCode::SourceUnavailable, "no HTTP transport available for " + endpoint_);
        if (options_.attempts == 0)
            options_.attempts = 1;
    }

    [[nodiscard]] static std::string page_query(unsigned first, const std::optional<std::string>& after)
    {
        std::string args = "first: " + std::to_string(first);
        if (after)
            args += ", after: " + nlohmann::json(*after).dump();
        return "{ proposals(" + args +
               ") { pageInfo { hasNextPage endCursor } edges { node { id title summary description "
               "cached_votes_up public_created_at } } } }";
    }

    [[nodiscard]] std::vector<Petition> fetch_all() const
    {
        std::vector<Petition> out;
        std::unordered_set<std::string> seen;
        std::optional<std::string> cursor;
        for (unsigned page = 0; page < options_.max_pages; ++page) {
            const auto response = post(page_query(options_.page_size, cursor));
            try {
                const auto& conn = response.at("data").at("proposals");
                for (const auto& edge : conn.at("edges")) {
                    Petition p = to_petition(edge.at("node"));
                    if (seen.insert(p.id).second)
                        out.push_back(std::move(p));
                }
                const auto& info = conn.at("pageInfo");
                if (!info.at("hasNextPage").get<bool>())
                    return out;
                cursor = info.at("endCursor").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::SchemaMismatch, endpoint_ + ": " + e.what());
            }
        }
        return out;
    }

private:
    [[nodiscard]] nlohmann::json post(const std::string& query) const
    {
        const std::string body = nlohmann::json{{"query", query}}.dump();
        std::string last_error;
        for (unsigned attempt = 1; attempt <= options_.attempts; ++attempt) {
            std::string raw;
            try {
                raw = options_.transport(endpoint_, body, options_.timeout);
            } catch (const std::exception& e) {
                last_error = e.what();
                if (attempt < options_.attempts && options_.backoff.count() > 0)
                    std::this_thread::sleep_for(options_.backoff * attempt);
                continue;
            }
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(raw);
            } catch (const nlohmann::json::parse_error& e) {
                throw Error(ErrorCode::SchemaMismatch, endpoint_ + " returned invalid JSON: " + e.what());
            }
            if (j.contains("errors"))
                throw Error(ErrorCode::SchemaMismatch, endpoint_ + " rejected the query: " + j["errors"].dump());
            if (!j.contains("data") || !j["data"].is_object() || !j["data"].contains("proposals") ||
                !j["data"]["proposals"].is_object() || !j["data"]["proposals"].contains("edges") ||
                !j["data"]["proposals"]["edges"].is_array() || !j["data"]["proposals"].contains("pageInfo"))
                throw Error(ErrorCode::SchemaMismatch, endpoint_ + " response lacks data.proposals.{edges,pageInfo}");
            return j;
        }
        throw Error(ErrorCode::SourceUnavailable, endpoint_ + " failed after " + std::to_string(options_.attempts) +
                                                      " attempt(s): " + last_error);
    }

    [[nodiscard]] Petition to_petition(const nlohmann::json& node) const
    {
        const auto need = [&](const char* field) -> const nlohmann::json& {
            if (!node.is_object() || !node.contains(field) || node[field].is_null())
                throw Error(ErrorCode::SchemaMismatch, std::string("proposal lacks field '") + field + "'");
            return node[field];
        };
        Petition p;
        const auto& id = need("id");
        p.id = id.is_string() ? id.get<std::string>() : id.dump();
        const auto str = [&](const char* field) {
            const auto& v = need(field);
            if (!v.is_string())
                throw Error(ErrorCode::SchemaMismatch, std::string("proposal field '") + field + "' is not a string");
            return v.get<std::string>();
        };
        p.title = str("title");
        p.summary = str("summary");
        p.body = detail::strip_html(str("description"));
        const auto& votes = need("cached_votes_up");
        if (!votes.is_number_integer() || votes.get<std::int64_t>() < 0)
            throw Error(ErrorCode::SchemaMismatch, "proposal " + p.id + " has invalid cached_votes_up");
        p.supports = votes.get<std::int64_t>();
        const auto created = str("public_created_at");
        const auto ts = detail::parse_api_timestamp(created);
        if (!ts)
            throw Error(ErrorCode::SchemaMismatch, "proposal " + p.id + " has unparseable date '" + created + "'");
        p.created_at = *ts;
        p.url = detail::site_base(endpoint_) + "/proposals/" + p.id;
        if (p.id.empty() || p.title.empty())
            throw Error(ErrorCode::SchemaMismatch, "proposal with empty id or title");
        return p;
    }

    std::string endpoint_;
    FetchOptions options_;
};

/// Name of the cache file for a (query, source, scope) triple.
inline std::string cache_key(std::string_view query, const CorpusSource& source, MatchScope scope)
{
    Fnv1a h;
    h.field(unicode::fold_key(unicode::trim(query)));
    h.field(to_string(source.kind));
    h.field(source.location);
    h.field(scope == MatchScope::full_text ? "full" : "title");
    return h.hex();
}

/// All petitions from `source` whose text contains `query` (case and accent
/// insensitive), ordered by id.
inline std::vector<Petition> fetch_petitions(std::string_view query, const CorpusSource& source,
                                             const FetchOptions& options = {})
{
    namespace fs = std::filesystem;
    const auto trimmed = unicode::trim(query);
    if (trimmed.empty())
        throw Error(ErrorCode::EmptyQuery, "query must contain a search term");
    const std::string folded = unicode::fold_key(trimmed);

    std::optional<fs::path> cache_file;
    if (source.cache_dir) {
        cache_file = *source.cache_dir / (cache_key(query, source, options.scope) + ".jsonl");
        std::error_code ec;
        const auto mtime = fs::last_write_time(*cache_file, ec);
        if (!ec && fs::file_time_type::clock::now() - mtime < source.cache_ttl) {
            try {
                auto cached = load_corpus(*cache_file).petitions;
                sort_by_id(cached);
                return cached;
            } catch (const Error&) {
                // unreadable cache entry: fall through and refetch
            }
        }
    }

    std::vector<Petition> all;
    if (source.kind == SourceKind::file) {
        all = load_corpus(source.location).petitions;
    } else {
        all = GraphQlClient(source.location, options).fetch_all();
    }

    std::vector<Petition> matched;
    for (auto& p : all) {
        if (matches_query(p, folded, options.scope))
            matched.push_back(std::move(p));
    }
    sort_by_id(matched);

    if (cache_file) {
        try {
            write_corpus(*cache_file, matched);
        } catch (const Error&) {
            // a read-only cache dir must not fail the request
        }
    }
    return matched;
}

} // namespace decide
