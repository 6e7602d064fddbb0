#pragma once

// Runtime configuration as a flat `key = value` text file. Every field
// round-trips through to_text()/parse_config().

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "decide/error.hpp"
#include "decide/ingestion.hpp"
#include "decide/layout.hpp"
#include "decide/ranking.hpp"
#include "decide/stc.hpp"
#include "decide/stopwords.hpp"
#include "decide/text_pipeline.hpp"

namespace decide {

struct DiscoveryConfig {
    // source
    SourceKind source_kind = SourceKind::file;
    std::string corpus_path = "data/fixtures/basuras.jsonl";
    std::string api_url = "https://decide.madrid.es/graphql";
    std::string cache_dir;  // empty: no cache
    std::int64_t cache_ttl_seconds = 3600;
    std::int64_t request_timeout_ms = 10000;
    std::int64_t request_attempts = 3;
    bool title_only = false;

    // text
    Language language = Language::es;
    std::string stopwords_path;  // empty: bundled list
    bool index_body = false;

    // clustering
    StcParams stc;

    // layout
    double radius_scale = 0.25;
    double min_radius = 4.0;
    std::int64_t max_iterations = 500;
    std::uint64_t seed = 42;
    double zero_weight_floor = 1.0;
    double canvas_width = 960.0;
    double canvas_height = 600.0;

    // ranking
    std::string hot_epoch = "2015-06-15T00:00:00Z";
    double hot_decay_divisor = 45000.0;

    // service
    std::string bind = "127.0.0.1:8080";
    std::int64_t query_cache_ttl_seconds = 900;

    [[nodiscard]] CorpusSource source() const
    {
        CorpusSource s = source_kind == SourceKind::file ? CorpusSource::file(corpus_path) : CorpusSource::live(api_url);
        if (!cache_dir.empty())
            s.cache_dir = cache_dir;
        s.cache_ttl = std::chrono::seconds{cache_ttl_seconds};
        return s;
    }

    [[nodiscard]] FetchOptions fetch_options() const
    {
        FetchOptions o;
        o.scope = title_only ? MatchScope::title_only : MatchScope::full_text;
        o.timeout = std::chrono::milliseconds{request_timeout_ms};
        o.attempts = static_cast<unsigned>(request_attempts);
        return o;
    }

    [[nodiscard]] ClusteringOptions clustering() const
    {
        ClusteringOptions o;
        o.stc = stc;
        o.fields.body = index_body;
        return o;
    }

    [[nodiscard]] Analyzer analyzer() const
    {
        if (stopwords_path.empty())
            return Analyzer(language);
        return Analyzer(language, StopwordSet::from_file(stopwords_path));
    }

    [[nodiscard]] HotScoreParams hot_params() const
    {
        HotScoreParams p;
        p.epoch = *parse_iso8601(hot_epoch);
        p.decay_divisor = hot_decay_divisor;
        return p;
    }

    [[nodiscard]] PackOptions pack_options() const
    {
        PackOptions p;
        p.max_iterations = static_cast<std::size_t>(max_iterations);
        return p;
    }

    [[nodiscard]] MosaicOptions mosaic_options() const
    {
        MosaicOptions m;
        m.zero_weight_floor = zero_weight_floor;
        return m;
    }

    void validate() const;
    [[nodiscard]] std::string to_text() const;
};

namespace detail {

template <class T>
inline T parse_number(const std::string& key, const std::string& value)
{
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw Error(ErrorCode::InvalidConfig, "'" + key + "' expects a number, got '" + value + "'");
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw Error(ErrorCode::InvalidConfig, "'" + key + "' expects true/false, got '" + value + "'");
}

inline std::string format_double(double v)
{
    // shortest representation that parses back to the same value
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Binds every config key to its field once, for both directions.
struct ConfigField {
    std::function<std::string(const DiscoveryConfig&)> get;
    std::function<void(DiscoveryConfig&, const std::string& key, const std::string& value)> set;
};

template <class T>
ConfigField integer_field(T DiscoveryConfig::*member)
{
    return {[member](const DiscoveryConfig& c) { return std::to_string(c.*member); },
            [member](DiscoveryConfig& c, const std::string& k, const std::string& v) {
                c.*member = parse_number<T>(k, v);
            }};
}

inline ConfigField real_field(double DiscoveryConfig::*member)
{
    return {[member](const DiscoveryConfig& c) { return format_double(c.*member); },
            [member](DiscoveryConfig& c, const std::string& k, const std::string& v) {
                c.*member = parse_number<double>(k, v);
            }};
}

inline ConfigField text_field(std::string DiscoveryConfig::*member)
{
    return {[member](const DiscoveryConfig& c) { return c.*member; },
            [member](DiscoveryConfig& c, const std::string&, const std::string& v) { c.*member = v; }};
}

inline ConfigField bool_field(bool DiscoveryConfig::*member)
{
    return {[member](const DiscoveryConfig& c) { return std::string(c.*member ? "true" : "false"); },
            [member](DiscoveryConfig& c, const std::string& k, const std::string& v) { c.*member = parse_bool(k, v); }};
}

template <class T>
ConfigField stc_integer(T StcParams::*member)
{
    return {[member](const DiscoveryConfig& c) { return std::to_string(c.stc.*member); },
            [member](DiscoveryConfig& c, const std::string& k, const std::string& v) {
                c.stc.*member = parse_number<T>(k, v);
            }};
}

inline ConfigField stc_real(double StcParams::*member)
{
    return {[member](const DiscoveryConfig& c) { return format_double(c.stc.*member); },
            [member](DiscoveryConfig& c, const std::string& k, const std::string& v) {
                c.stc.*member = parse_number<double>(k, v);
            }};
}

inline const std::map<std::string, ConfigField>& config_fields()
{
    static const std::map<std::string, ConfigField> fields = {
        {"source", {[](const DiscoveryConfig& c) { return std::string(to_string(c.source_kind)); },
                    [](DiscoveryConfig& c, const std::string&, const std::string& v) {
                        c.source_kind = parse_source_kind(v);
                    }}},
        {"corpus_path", text_field(&DiscoveryConfig::corpus_path)},
        {"api_url", text_field(&DiscoveryConfig::api_url)},
        {"cache_dir", text_field(&DiscoveryConfig::cache_dir)},
        {"cache_ttl_seconds", integer_field(&DiscoveryConfig::cache_ttl_seconds)},
        {"request_timeout_ms", integer_field(&DiscoveryConfig::request_timeout_ms)},
        {"request_attempts", integer_field(&DiscoveryConfig::request_attempts)},
        {"title_only", bool_field(&DiscoveryConfig::title_only)},
        {"language", {[](const DiscoveryConfig& c) { return std::string(to_string(c.language)); },
                      [](DiscoveryConfig& c, const std::string&, const std::string& v) {
                          c.language = parse_language(v);
                      }}},
        {"stopwords_path", text_field(&DiscoveryConfig::stopwords_path)},
        {"index_body", bool_field(&DiscoveryConfig::index_body)},
        {"min_docs", stc_integer(&StcParams::min_docs)},
        {"max_phrase_len", stc_integer(&StcParams::max_phrase_len)},
        {"merge_threshold", stc_real(&StcParams::merge_threshold)},
        {"max_base_clusters", stc_integer(&StcParams::max_base_clusters)},
        {"single_word_factor", stc_real(&StcParams::single_word_factor)},
        {"length_cap", stc_integer(&StcParams::length_cap)},
        {"min_doc_freq", stc_integer(&StcParams::min_doc_freq)},
        {"max_doc_freq_ratio", stc_real(&StcParams::max_doc_freq_ratio)},
        {"radius_scale", real_field(&DiscoveryConfig::radius_scale)},
        {"min_radius", real_field(&DiscoveryConfig::min_radius)},
        {"max_iterations", integer_field(&DiscoveryConfig::max_iterations)},
        {"seed", integer_field(&DiscoveryConfig::seed)},
        {"zero_weight_floor", real_field(&DiscoveryConfig::zero_weight_floor)},
        {"canvas_width", real_field(&DiscoveryConfig::canvas_width)},
        {"canvas_height", real_field(&DiscoveryConfig::canvas_height)},
        {"hot_epoch", text_field(&DiscoveryConfig::hot_epoch)},
        {"hot_decay_divisor", real_field(&DiscoveryConfig::hot_decay_divisor)},
        {"bind", text_field(&DiscoveryConfig::bind)},
        {"query_cache_ttl_seconds", integer_field(&DiscoveryConfig::query_cache_ttl_seconds)},
    };
    return fields;
}

} // namespace detail

inline void DiscoveryConfig::validate() const
{
    const auto bad = [](const std::string& msg) { return Error(ErrorCode::InvalidConfig, msg); };
    if (source_kind == SourceKind::file && corpus_path.empty())
        throw bad("corpus_path is required for file sources");
    if (source_kind == SourceKind::live_api && !is_absolute_url(api_url))
        throw bad("api_url must be an absolute URL");
    if (cache_ttl_seconds < 0)
        throw bad("cache_ttl_seconds must be >= 0");
    if (request_timeout_ms <= 0)
        throw bad("request_timeout_ms must be > 0");
    if (request_attempts < 1 || request_attempts > 20)
        throw bad("request_attempts must be in [1, 20]");
    if (stc.min_docs < 2)
        throw bad("min_docs must be >= 2");
    if (stc.max_phrase_len < 1)
        throw bad("max_phrase_len must be >= 1");
    if (!(stc.merge_threshold > 0.0 && stc.merge_threshold <= 1.0))
        throw bad("merge_threshold must be in (0, 1]");
    if (stc.max_base_clusters < 1)
        throw bad("max_base_clusters must be >= 1");
    if (!(stc.single_word_factor > 0.0 && stc.single_word_factor <= 1.0))
        throw bad("single_word_factor must be in (0, 1]");
    if (stc.length_cap < 1)
        throw bad("length_cap must be >= 1");
    if (!(stc.max_doc_freq_ratio > 0.0 && stc.max_doc_freq_ratio <= 1.0))
        throw bad("max_doc_freq_ratio must be in (0, 1]");
    if (!(radius_scale > 0.0) || !std::isfinite(radius_scale))
        throw bad("radius_scale must be > 0");
    if (!(min_radius > 0.0) || !std::isfinite(min_radius))
        throw bad("min_radius must be > 0");
    if (max_iterations < 1)
        throw bad("max_iterations must be >= 1");
    if (!(zero_weight_floor > 0.0))
        throw bad("zero_weight_floor must be > 0");
    if (!(canvas_width > 0.0) || !(canvas_height > 0.0))
        throw bad("canvas dimensions must be > 0");
    if (!parse_iso8601(hot_epoch))
        throw bad("hot_epoch is not an ISO-8601 timestamp");
    if (!(hot_decay_divisor > 0.0))
        throw bad("hot_decay_divisor must be > 0");
    if (bind.find(':') == std::string::npos)
        throw bad("bind must be host:port");
    if (query_cache_ttl_seconds < 1)
        throw bad("query_cache_ttl_seconds must be >= 1");
}

inline std::string DiscoveryConfig::to_text() const
{
    std::string out;
    for (const auto& [key, field] : detail::config_fields())
        out += key + " = " + field.get(*this) + "\n";
    return out;
}

/// `#` starts a comment line. Unknown keys are rejected so typos surface.
inline DiscoveryConfig parse_config(std::string_view text, DiscoveryConfig base = {})
{
    const auto& fields = detail::config_fields();
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto trimmed = unicode::trim(line);
        if (trimmed.empty() || trimmed.front() == '#')
            continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::InvalidConfig, "expected key = value", number);
        const std::string key(unicode::trim(trimmed.substr(0, eq)));
        const std::string value(unicode::trim(trimmed.substr(eq + 1)));
        const auto it = fields.find(key);
        if (it == fields.end())
            throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "'", number);
        try {
            it->second.set(base, key, value);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidConfig, e.what(), number);
        }
    }
    base.validate();
    return base;
}

inline DiscoveryConfig load_config(const std::filesystem::path& path, DiscoveryConfig base = {})
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::InvalidConfig, "cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

using EnvLookup = std::function<const char*(const char*)>;

/// DISCOVERY_CONFIG names a config file; DISCOVERY_API_URL switches to the
/// live source; DISCOVERY_BIND overrides the listen address.
inline DiscoveryConfig config_from_environment(DiscoveryConfig base = {}, const EnvLookup& env = std::getenv)
{
    if (const char* path = env("DISCOVERY_CONFIG"); path && *path)
        base = load_config(path, std::move(base));
    if (const char* url = env("DISCOVERY_API_URL"); url && *url) {
        base.api_url = url;
        base.source_kind = SourceKind::live_api;
    }
    if (const char* bind = env("DISCOVERY_BIND"); bind && *bind)
        base.bind = bind;
    base.validate();
    return base;
}

} // namespace decide
