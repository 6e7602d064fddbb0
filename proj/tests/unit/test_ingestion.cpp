#include <gtest/gtest.h>

#include <thread>

#include "support.hpp"

using namespace decide;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("decide_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

std::string record(const std::string& id, const std::string& title = "Titulo", std::int64_t supports = 1)
{
    return R"({"id":")" + id + R"(","title":")" + title + R"(","summary":"s","body":"b","supports":)" +
           std::to_string(supports) + R"(,"created_at":"2018-01-01T00:00:00Z","url":"https://decide.madrid.es/proposals/)" +
           id + "\"}";
}

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
    return ErrorCode::InvalidConfig;
}

std::string fixture(const char* name) { return support::source_path(std::string("data/fixtures/") + name).string(); }

} // namespace

TEST(LoadCorpus, WellFormedFile)
{
    const auto dir = temp_dir("load");
    const auto p = write(dir / "c.jsonl", record("1") + "\n" + record("2") + "\n\n" + record("3") + "\n");
    const auto r = load_corpus(p);
    EXPECT_EQ(r.petitions.size(), 3u);
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_EQ(r.petitions[2].url, "https://decide.madrid.es/proposals/3");
    EXPECT_EQ(format_iso8601(r.petitions[0].created_at), "2018-01-01T00:00:00Z");
}

TEST(LoadCorpus, DuplicateIdReportsLine)
{
    const auto dir = temp_dir("dup");
    const auto p = write(dir / "c.jsonl", record("7") + "\n" + record("7") + "\n");
    std::optional<std::size_t> line;
    EXPECT_EQ(code_of([&] { (void)load_corpus(p); }, &line), ErrorCode::DuplicateId);
    EXPECT_EQ(line, 2u);
}

TEST(LoadCorpus, EmptyFileWarns)
{
    const auto dir = temp_dir("empty");
    const auto r = load_corpus(write(dir / "c.jsonl", ""));
    EXPECT_TRUE(r.petitions.empty());
    ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(LoadCorpus, SchemaViolationsCarryLineNumbers)
{
    const auto dir = temp_dir("schema");
    const std::vector<std::string> bad = {
        "{not json",
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":1,"created_at":"2018-01-01","url":"https://x.org"})"
        R"(   )",  // valid, used as control below
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":-1,"created_at":"2018-01-01","url":"https://x.org"})",
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":1,"created_at":"yesterday","url":"https://x.org"})",
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":1,"created_at":"2018-01-01","url":"not a url"})",
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":1,"created_at":"2018-01-01"})",
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":1,"created_at":"2018-01-01","url":"https://x.org","extra":1})",
        R"({"id":"","title":"t","summary":"s","body":"b","supports":1,"created_at":"2018-01-01","url":"https://x.org"})",
        R"({"id":"1","title":"","summary":"s","body":"b","supports":1,"created_at":"2018-01-01","url":"https://x.org"})",
        R"({"id":1,"title":"t","summary":"s","body":"b","supports":1,"created_at":"2018-01-01","url":"https://x.org"})",
        R"({"id":"1","title":"t","summary":"s","body":"b","supports":1.5,"created_at":"2018-01-01","url":"https://x.org"})",
    };
    for (std::size_t i = 0; i < bad.size(); ++i) {
        const auto p = write(dir / "c.jsonl", record("0") + "\n" + bad[i] + "\n");
        if (i == 1) {
            EXPECT_EQ(load_corpus(p).petitions.size(), 2u);
            continue;
        }
        std::optional<std::size_t> line;
        EXPECT_EQ(code_of([&] { (void)load_corpus(p); }, &line), ErrorCode::ParseError) << bad[i];
        EXPECT_EQ(line, 2u) << bad[i];
    }
}

TEST(LoadCorpus, MissingFileNamesPath)
{
    try {
        (void)load_corpus("/nonexistent/corpus.jsonl");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SourceUnavailable);
        EXPECT_NE(std::string(e.what()).find("/nonexistent/corpus.jsonl"), std::string::npos);
    }
}

TEST(LoadCorpus, WriteRoundTrip)
{
    const auto dir = temp_dir("roundtrip");
    const auto original = load_corpus(fixture("basuras.jsonl")).petitions;
    write_corpus(dir / "sub" / "copy.jsonl", original);
    EXPECT_EQ(load_corpus(dir / "sub" / "copy.jsonl").petitions, original);
    std::istringstream again(serialize_corpus(original));
    EXPECT_EQ(parse_corpus(again).petitions, original);
    for (const auto& entry : fs::directory_iterator(dir / "sub"))
        EXPECT_EQ(entry.path().filename(), "copy.jsonl");  // no temp files left behind
}

TEST(Iso8601, Formats)
{
    EXPECT_EQ(format_iso8601(*parse_iso8601("2018-03-04")), "2018-03-04T00:00:00Z");
    EXPECT_EQ(format_iso8601(*parse_iso8601("2018-03-04T05:06:07.890+02:00")), "2018-03-04T03:06:07Z");
    EXPECT_EQ(format_iso8601(*parse_iso8601("2018-03-04 05:06:07Z")), "2018-03-04T05:06:07Z");
    EXPECT_FALSE(parse_iso8601("2018-02-30"));
    EXPECT_FALSE(parse_iso8601("2018-03-04T25:00:00Z"));
    EXPECT_FALSE(parse_iso8601("04/03/2018"));
}

TEST(FetchPetitions, FixtureMatching)
{
    const auto src = CorpusSource::file(fixture("sample5.jsonl"));
    const auto got = fetch_petitions("reciclaje", src);
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0].id, "31");
    EXPECT_EQ(got[1].id, "34");  // matched in the summary, upper case
    EXPECT_TRUE(fetch_petitions("zzzz-no-match", src).empty());
    EXPECT_EQ(fetch_petitions("ALEMAN", src).size(), 1u);  // accent-insensitive
    EXPECT_EQ(fetch_petitions("  reciclaje  ", src), got);
}

TEST(FetchPetitions, MatchesIndependentScan)
{
    const auto all = load_corpus(fixture("basuras.jsonl")).petitions;
    const auto src = CorpusSource::file(fixture("basuras.jsonl"));
    for (const char* q : {"basuras", "reciclaje", "de", "Impuesto", "calle", "xyz"}) {
        const auto got = fetch_petitions(q, src);
        std::vector<std::string> expected;
        for (const auto& p : all) {
            const std::string hay = unicode::fold_key(p.title + "\n" + p.summary + "\n" + p.body);
            if (hay.find(unicode::fold_key(q)) != std::string::npos)
                expected.push_back(p.id);
        }
        std::vector<std::string> ids;
        for (const auto& p : got)
            ids.push_back(p.id);
        EXPECT_EQ(ids, expected) << q;
    }
}

TEST(FetchPetitions, TitleOnlyScope)
{
    FetchOptions opt;
    opt.scope = MatchScope::title_only;
    const auto got = fetch_petitions("reciclaje", CorpusSource::file(fixture("sample5.jsonl")), opt);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].id, "31");
}

TEST(FetchPetitions, BlankQueryRejected)
{
    const auto src = CorpusSource::file(fixture("sample5.jsonl"));
    EXPECT_EQ(code_of([&] { (void)fetch_petitions("", src); }), ErrorCode::EmptyQuery);
    EXPECT_EQ(code_of([&] { (void)fetch_petitions(" \t ", src); }), ErrorCode::EmptyQuery);
}

TEST(FetchPetitions, OrderedById)
{
    const auto dir = temp_dir("order");
    const auto p = write(dir / "c.jsonl", record("10") + "\n" + record("9") + "\n" + record("100") + "\n" + record("a") + "\n");
    std::vector<std::string> ids;
    for (const auto& x : fetch_petitions("titulo", CorpusSource::file(p.string())))
        ids.push_back(x.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"9", "10", "100", "a"}));
}

TEST(FetchPetitions, CacheIsTransparentAndExpires)
{
    const auto dir = temp_dir("cache");
    const auto corpus = write(dir / "c.jsonl", record("1", "reciclaje uno") + "\n" + record("2", "otra cosa") + "\n");
    auto src = CorpusSource::file(corpus.string());
    src.cache_dir = dir / "cache";
    src.cache_ttl = std::chrono::seconds(3600);

    const auto first = fetch_petitions("reciclaje", src);
    const auto cache_file = *src.cache_dir / (cache_key("reciclaje", src, MatchScope::full_text) + ".jsonl");
    ASSERT_TRUE(fs::exists(cache_file));
    const auto uncached = fetch_petitions("reciclaje", CorpusSource::file(corpus.string()));
    EXPECT_EQ(first, uncached);

    // Change the source: within the ttl the cached answer is served.
    write(corpus, record("1", "reciclaje uno") + "\n" + record("3", "reciclaje tres") + "\n");
    EXPECT_EQ(fetch_petitions("reciclaje", src), first);

    // Age the cache entry past the ttl: the source is read again.
    fs::last_write_time(cache_file, fs::file_time_type::clock::now() - std::chrono::hours(2));
    EXPECT_EQ(fetch_petitions("reciclaje", src).size(), 2u);
    EXPECT_EQ(fetch_petitions("reciclaje", src).size(), 2u);
}

TEST(FetchPetitions, ConcurrentFetchesAgree)
{
    const auto dir = temp_dir("concurrent");
    auto src = CorpusSource::file(fixture("basuras.jsonl"));
    src.cache_dir = dir;
    const auto expected = fetch_petitions("basuras", CorpusSource::file(fixture("basuras.jsonl")));
    std::vector<std::thread> threads;
    std::vector<std::vector<Petition>> results(8);
    for (std::size_t i = 0; i < results.size(); ++i)
        threads.emplace_back([&, i] { results[i] = fetch_petitions("basuras", src); });
    for (auto& t : threads)
        t.join();
    for (const auto& r : results)
        EXPECT_EQ(r, expected);
}

namespace {

std::string page(const std::vector<std::string>& nodes, bool next, const std::string& cursor)
{
    std::string edges;
    for (const auto& n : nodes)
        edges += (edges.empty() ? "" : ",") + std::string(R"({"node":)") + n + "}";
    return R"({"data":{"proposals":{"pageInfo":{"hasNextPage":)" + std::string(next ? "true" : "false") +
           R"(,"endCursor":")" + cursor + R"("},"edges":[)" + edges + "]}}}";
}

std::string node(int id, const std::string& title, int votes)
{
    return R"({"id":)" + std::to_string(id) + R"(,"title":")" + title +
           R"(","summary":"Resumen","description":"<p>Primer p&aacute;rrafo.</p><p>Segundo &amp; final</p>","cached_votes_up":)" +
           std::to_string(votes) + R"(,"public_created_at":"2017-11-15 10:00:00 +0100"})";
}

} // namespace

TEST(GraphQl, PagesAndFilters)
{
    std::vector<std::string> requests;
    FetchOptions opt;
    opt.backoff = std::chrono::milliseconds(0);
    opt.page_size = 2;
    opt.transport = [&](const std::string& url, const std::string& body, std::chrono::milliseconds) {
        EXPECT_EQ(url, "https://decide.example/graphql");
        requests.push_back(body);
        if (requests.size() == 1)
            return page({node(5, "Reducir basuras", 10), node(3, "Otra cosa", 2)}, true, "abc");
        return page({node(12, "Tasa de basuras", 99)}, false, "def");
    };
    const auto got = fetch_petitions("basuras", CorpusSource::live("https://decide.example/graphql"), opt);
    ASSERT_EQ(requests.size(), 2u);
    EXPECT_NE(requests[1].find(R"(after: \"abc\")"), std::string::npos) << requests[1];
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0].id, "5");
    EXPECT_EQ(got[1].id, "12");
    EXPECT_EQ(got[1].supports, 99);
    EXPECT_EQ(got[1].url, "https://decide.example/proposals/12");
    EXPECT_EQ(format_iso8601(got[0].created_at), "2017-11-15T09:00:00Z");
    EXPECT_EQ(got[0].body.find("<p>"), std::string::npos);
    EXPECT_NE(got[0].body.find("Segundo & final"), std::string::npos);
}

TEST(GraphQl, RetriesThenReportsAttemptCount)
{
    int calls = 0;
    FetchOptions opt;
    opt.attempts = 4;
    opt.backoff = std::chrono::milliseconds(0);
    opt.transport = [&](const std::string&, const std::string&, std::chrono::milliseconds) -> std::string {
        ++calls;
        throw std::runtime_error("connection refused");
    };
    try {
        (void)fetch_petitions("x", CorpusSource::live("https://decide.example/graphql"), opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SourceUnavailable);
        EXPECT_NE(std::string(e.what()).find("4 attempt"), std::string::npos) << e.what();
    }
    EXPECT_EQ(calls, 4);

    // transient failure then success
    calls = 0;
    opt.transport = [&](const std::string&, const std::string&, std::chrono::milliseconds) -> std::string {
        if (++calls < 3)
            throw std::runtime_error("timeout");
        return page({node(1, "basuras", 1)}, false, "");
    };
    EXPECT_EQ(fetch_petitions("basuras", CorpusSource::live("https://decide.example/graphql"), opt).size(), 1u);
}

TEST(GraphQl, SchemaMismatch)
{
    FetchOptions opt;
    opt.backoff = std::chrono::milliseconds(0);
    for (const std::string& response :
         {std::string(R"({"data":{}})"), std::string(R"({"errors":[{"message":"Field 'x' doesn't exist"}]})"),
          std::string("<html>"), page({R"({"id":1,"title":"basuras"})"}, false, "")}) {
        opt.transport = [&](const std::string&, const std::string&, std::chrono::milliseconds) { return response; };
        EXPECT_EQ(code_of([&] { (void)fetch_petitions("x", CorpusSource::live("https://d.example/graphql"), opt); }),
                  ErrorCode::SchemaMismatch)
            << response;
    }
}

TEST(GraphQl, NoTransportIsUnavailable)
{
    EXPECT_EQ(code_of([] { (void)fetch_petitions("x", CorpusSource::live("https://d.example/graphql")); }),
              ErrorCode::SourceUnavailable);
}
