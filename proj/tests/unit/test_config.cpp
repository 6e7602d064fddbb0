#include <gtest/gtest.h>

#include "support.hpp"

using namespace decide;

namespace {

ErrorCode code_of(const std::function<void()>& fn, std::optional<std::size_t>* line = nullptr)
{
    try {
        fn();
    } catch (const Error& e) {
        if (line)
            *line = e.line();
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::EmptyQuery;
}

} // namespace

TEST(Config, DefaultsValidate)
{
    const DiscoveryConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.canvas_width, 960.0);
    EXPECT_EQ(c.canvas_height, 600.0);
    EXPECT_EQ(c.query_cache_ttl_seconds, 900);
    EXPECT_EQ(c.stc.merge_threshold, 0.5);
    EXPECT_EQ(c.stc.max_base_clusters, 500u);
    EXPECT_EQ(format_iso8601(c.hot_params().epoch), "2015-06-15T00:00:00Z");
}

TEST(Config, TextRoundTrip)
{
    DiscoveryConfig c;
    c.source_kind = SourceKind::live_api;
    c.api_url = "https://example.org/graphql";
    c.cache_dir = "/tmp/x y";
    c.title_only = true;
    c.language = Language::en;
    c.stc.merge_threshold = 0.65;
    c.stc.max_doc_freq_ratio = 0.123456789012345;
    c.radius_scale = 1.0 / 3.0;
    c.seed = 18446744073709551615ull;
    c.canvas_width = 1280.5;
    c.bind = "0.0.0.0:9000";
    const auto text = c.to_text();
    const auto back = parse_config(text);
    EXPECT_EQ(back.to_text(), text);
    EXPECT_EQ(back.radius_scale, c.radius_scale);
    EXPECT_EQ(back.stc.max_doc_freq_ratio, c.stc.max_doc_freq_ratio);
    EXPECT_EQ(back.seed, c.seed);
    EXPECT_EQ(back.cache_dir, "/tmp/x y");
    EXPECT_EQ(back.source().kind, SourceKind::live_api);
    EXPECT_EQ(back.fetch_options().scope, MatchScope::title_only);
}

TEST(Config, CommentsAndOverlay)
{
    DiscoveryConfig base;
    base.seed = 7;
    const auto c = parse_config("# comment\n\n  merge_threshold = 0.3 \ncanvas_height=400\n", base);
    EXPECT_EQ(c.stc.merge_threshold, 0.3);
    EXPECT_EQ(c.canvas_height, 400.0);
    EXPECT_EQ(c.seed, 7u);
}

TEST(Config, ErrorsCarryLineNumbers)
{
    std::optional<std::size_t> line;
    EXPECT_EQ(code_of([&] { (void)parse_config("seed = 1\nmerge_treshold = 0.5\n"); }, &line), ErrorCode::InvalidConfig);
    EXPECT_EQ(line, 2u);
    EXPECT_EQ(code_of([&] { (void)parse_config("\n\nseed = abc\n"); }, &line), ErrorCode::InvalidConfig);
    EXPECT_EQ(line, 3u);
    EXPECT_EQ(code_of([&] { (void)parse_config("no equals sign"); }, &line), ErrorCode::InvalidConfig);
    EXPECT_EQ(line, 1u);
    EXPECT_EQ(code_of([&] { (void)parse_config("title_only = maybe"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([&] { (void)parse_config("language = fr"); }), ErrorCode::InvalidConfig);
}

TEST(Config, ValidationRanges)
{
    for (const char* text : {"merge_threshold = 0", "merge_threshold = 1.5", "canvas_width = 0", "min_docs = 1",
                             "radius_scale = -1", "hot_epoch = yesterday", "hot_decay_divisor = 0", "bind = nowhere",
                             "request_attempts = 0", "source = live-api\napi_url = not-a-url"}) {
        EXPECT_EQ(code_of([&] { (void)parse_config(text); }), ErrorCode::InvalidConfig) << text;
    }
    EXPECT_NO_THROW((void)parse_config("merge_threshold = 1"));
}

TEST(Config, LoadFromFile)
{
    const auto path = std::filesystem::temp_directory_path() / "decide_test_config.conf";
    std::ofstream(path) << "seed = 99\ncorpus_path = data/fixtures/sample5.jsonl\n";
    const auto c = load_config(path);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.source().location, "data/fixtures/sample5.jsonl");
    EXPECT_EQ(code_of([] { (void)load_config("/nonexistent/x.conf"); }), ErrorCode::InvalidConfig);
}

TEST(Config, EnvironmentOverrides)
{
    const auto path = std::filesystem::temp_directory_path() / "decide_test_env.conf";
    std::ofstream(path) << "seed = 5\nbind = 127.0.0.1:1\n";
    std::map<std::string, std::string> env = {{"DISCOVERY_CONFIG", path.string()},
                                              {"DISCOVERY_API_URL", "https://decide.example/graphql"},
                                              {"DISCOVERY_BIND", "0.0.0.0:8081"}};
    const auto lookup = [&](const char* k) -> const char* {
        const auto it = env.find(k);
        return it == env.end() ? nullptr : it->second.c_str();
    };
    const auto c = config_from_environment({}, lookup);
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.source_kind, SourceKind::live_api);
    EXPECT_EQ(c.api_url, "https://decide.example/graphql");
    EXPECT_EQ(c.bind, "0.0.0.0:8081");

    env.clear();
    const auto d = config_from_environment({}, lookup);
    EXPECT_EQ(d.source_kind, SourceKind::file);
}

TEST(Config, DerivedOptions)
{
    auto c = parse_config("index_body = true\nmax_iterations = 77\nzero_weight_floor = 2.5\ncache_dir = /tmp/c\n");
    EXPECT_TRUE(c.clustering().fields.body);
    EXPECT_EQ(c.pack_options().max_iterations, 77u);
    EXPECT_EQ(c.mosaic_options().zero_weight_floor, 2.5);
    ASSERT_TRUE(c.source().cache_dir);
    EXPECT_EQ(c.source().cache_dir->string(), "/tmp/c");
}
