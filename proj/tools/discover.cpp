// discover: offline clustering, baseline ranking and the HTTP service.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "decide/decide.hpp"
#include "decide/http.hpp"

namespace {

using namespace decide;

struct SourceFlags {
    std::string config_path;
    std::string corpus;
    std::string api_url;
    std::string lang;
    bool title_only = false;
    bool index_body = false;

    void add_to(CLI::App* app, bool with_source = true)
    {
        app->add_option("--config", config_path, "key=value config file (overrides DISCOVERY_CONFIG)");
        if (with_source) {
            app->add_option("--corpus", corpus, "JSONL corpus file");
            app->add_option("--api-url", api_url, "GraphQL endpoint to fetch from instead of a corpus file");
        }
        app->add_option("--lang", lang, "text language (es|en)");
        app->add_flag("--title-only", title_only, "match the query against titles only");
        app->add_flag("--index-body", index_body, "include petition bodies in clustering");
    }

    [[nodiscard]] DiscoveryConfig resolve() const
    {
        DiscoveryConfig cfg = config_from_environment();
        if (!config_path.empty())
            cfg = load_config(config_path, cfg);
        if (!corpus.empty()) {
            cfg.source_kind = SourceKind::file;
            cfg.corpus_path = corpus;
        }
        if (!api_url.empty()) {
            cfg.source_kind = SourceKind::live_api;
            cfg.api_url = api_url;
        }
        if (!lang.empty())
            cfg.language = parse_language(lang);
        if (title_only)
            cfg.title_only = true;
        if (index_body)
            cfg.index_body = true;
        cfg.validate();
        return cfg;
    }
};

FetchOptions fetch_options(const DiscoveryConfig& cfg)
{
    FetchOptions o = cfg.fetch_options();
    o.transport = httplib_transport();
    return o;
}

std::vector<Petition> fetch(const DiscoveryConfig& cfg, std::string_view query)
{
    return fetch_petitions(query, cfg.source(), fetch_options(cfg));
}

std::vector<Petition> fetch_everything(const DiscoveryConfig& cfg)
{
    if (cfg.source_kind == SourceKind::file) {
        auto loaded = load_corpus(cfg.corpus_path);
        for (const auto& w : loaded.warnings)
            std::cerr << "warning: " << w << "\n";
        sort_by_id(loaded.petitions);
        return loaded.petitions;
    }
    auto all = GraphQlClient(cfg.api_url, fetch_options(cfg)).fetch_all();
    sort_by_id(all);
    return all;
}

int run_cluster(const DiscoveryConfig& cfg, const std::string& query, const std::string& format, double width,
                double height)
{
    const auto petitions = fetch(cfg, query);
    const auto set = cluster_topics(query, petitions, cfg.analyzer(), cfg.clustering());
    if (format == "table") {
        std::cout << format_topic_table(set);
        return 0;
    }
    std::vector<Tile> tiles;
    std::optional<Canvas> canvas;
    if (width > 0 && height > 0) {
        canvas = Canvas{width, height};
        const auto items = mosaic_items(set);
        if (!items.empty())
            tiles = mosaic_layout(items, *canvas, cfg.mosaic_options());
    }
    std::cout << topic_set_to_json(set, tiles, canvas ? &*canvas : nullptr).dump(2) << "\n";
    return 0;
}

int run_rank(const DiscoveryConfig& cfg, const std::string& query, const std::string& mode_text, std::size_t limit,
             const std::string& format)
{
    const auto mode = parse_rank_mode(mode_text);
    const auto params = cfg.hot_params();
    auto petitions = query.empty() ? fetch_everything(cfg) : fetch(cfg, query);
    const auto ranked = rank_petitions(std::move(petitions), mode, params);
    const std::size_t n = limit == 0 ? ranked.size() : std::min(limit, ranked.size());

    if (format == "json") {
        OrderedJson out = OrderedJson::array();
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = ranked[i];
            OrderedJson e;
            e["rank"] = i + 1;
            e["id"] = p.id;
            e["title"] = p.title;
            e["supports"] = p.supports;
            e["created_at"] = format_iso8601(p.created_at);
            e["hot_score"] = hot_score(p.supports, 0, p.created_at, params);
            e["reached_threshold"] = p.reached_threshold();
            out.push_back(std::move(e));
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::printf("%4s  %-10s %10s  %-20s %12s  %s\n", "#", "id", "supports", "created_at", "hot", "title");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = ranked[i];
        std::printf("%4zu  %-10s %10s  %-20s %12.7f  %s\n", i + 1, p.id.c_str(), format_count(p.supports).c_str(),
                    format_iso8601(p.created_at).c_str(), hot_score(p.supports, 0, p.created_at, params),
                    p.title.c_str());
    }
    return 0;
}

int run_serve(DiscoveryConfig cfg, const std::string& bind)
{
    if (!bind.empty())
        cfg.bind = bind;
    const auto [host, port] = parse_bind(cfg.bind);
    const auto options = fetch_options(cfg);
    const auto source = cfg.source();
    DiscoveryService service(cfg, [source, options](std::string_view q) { return fetch_petitions(q, source, options); });

    httplib::Server server;
    mount(server, service);
    static httplib::Server* running = nullptr;
    running = &server;
    std::signal(SIGINT, [](int) { if (running) running->stop(); });
    std::signal(SIGTERM, [](int) { if (running) running->stop(); });

    const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
    if (bound < 0)
        throw Error(ErrorCode::InvalidConfig, "cannot listen on " + cfg.bind);
    std::cerr << "listening on http://" << host << ":" << bound << "\n";
    server.listen_after_bind();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Topic discovery over petition corpora"};
    app.require_subcommand(1);

    SourceFlags cluster_flags;
    std::string query;
    std::string format = "table";
    double width = 0;
    double height = 0;
    auto* cluster = app.add_subcommand("cluster", "group petitions matching a query into topics");
    cluster_flags.add_to(cluster);
    cluster->add_option("--query,-q", query, "search term")->required();
    cluster->add_option("--format", format, "output format")->check(CLI::IsMember({"table", "json"}));
    cluster->add_option("--width", width, "with --height: add mosaic tiles to json output");
    cluster->add_option("--height", height);

    SourceFlags rank_flags;
    std::string rank_query;
    std::string mode = "hot";
    std::size_t limit = 0;
    std::string rank_format = "table";
    auto* rank = app.add_subcommand("rank", "order petitions by the hot-score baseline");
    rank_flags.add_to(rank);
    rank->add_option("--query,-q", rank_query, "restrict to petitions matching this term");
    rank->add_option("--mode", mode, "ranking key")->check(CLI::IsMember({"hot", "supports", "newest"}));
    rank->add_option("--limit", limit, "print at most N rows (0 = all)");
    rank->add_option("--format", rank_format, "output format")->check(CLI::IsMember({"table", "json"}));

    SourceFlags serve_flags;
    std::string bind;
    auto* serve = app.add_subcommand("serve", "run the HTTP API");
    serve_flags.add_to(serve);
    serve->add_option("--bind", bind, "host:port (overrides DISCOVERY_BIND)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cluster->parsed())
            return run_cluster(cluster_flags.resolve(), query, format, width, height);
        if (rank->parsed())
            return run_rank(rank_flags.resolve(), rank_query, mode, limit, rank_format);
        if (serve->parsed())
            return run_serve(serve_flags.resolve(), bind);
    } catch (const std::exception& e) {
        std::cerr << "discover: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
