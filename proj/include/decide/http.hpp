#pragma once

// cpp-httplib glue: mounts DiscoveryService on a server and provides the
// HTTP transport used by the live GraphQL client. Kept out of the core
// headers so the library itself has no networking dependency.
// Define CPPHTTPLIB_OPENSSL_SUPPORT (and link OpenSSL) for https endpoints.

#include <chrono>
#include <stdexcept>
#include <string>

#include "httplib.h"

#include "decide/ingestion.hpp"
#include "decide/service.hpp"

namespace decide {

inline void mount(httplib::Server& server, DiscoveryService& service)
{
    const auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type + (r.content_type == "text/plain" ? "" : "; charset=utf-8"));
    };
    const auto params_of = [](const httplib::Request& req) {
        Params p;
        for (const auto& [k, v] : req.params)
            p.emplace(k, v);  // first value wins for repeated keys
        return p;
    };
    server.Get("/healthz", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.health());
    });
    server.Get("/api/topics", [&service, reply, params_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.topics(params_of(req)));
    });
    server.Get(R"(/api/topics/([0-9a-zA-Z_\-]+)/petitions)",
               [&service, reply, params_of](const httplib::Request& req, httplib::Response& res) {
                   reply(res, service.petitions(req.matches[1].str(), params_of(req)));
               });
}

/// Splits "host:port"; throws InvalidConfig on anything else.
inline std::pair<std::string, int> parse_bind(const std::string& bind)
{
    const auto colon = bind.rfind(':');
    if (colon == std::string::npos || colon == 0)
        throw Error(ErrorCode::InvalidConfig, "bind must be host:port, got '" + bind + "'");
    const std::string port_text = bind.substr(colon + 1);
    int port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 || port > 65535)
        throw Error(ErrorCode::InvalidConfig, "bad port in '" + bind + "'");
    return {bind.substr(0, colon), port};
}

/// POSTs JSON with cpp-httplib. Non-2xx and connection failures throw.
inline Transport httplib_transport()
{
    return [](const std::string& url, const std::string& body, std::chrono::milliseconds timeout) -> std::string {
        const auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            throw std::runtime_error("not an absolute URL: " + url);
        const auto path_start = url.find('/', scheme_end + 3);
        const std::string origin = url.substr(0, path_start);
        const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
        httplib::Client client(origin);
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
        const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
        client.set_connection_timeout(secs.count(), usecs.count());
        client.set_read_timeout(secs.count(), usecs.count());
        client.set_follow_location(true);
        auto res = client.Post(path, body, "application/json");
        if (!res)
            throw std::runtime_error("request to " + url + " failed: " + httplib::to_string(res.error()));
        if (res->status < 200 || res->status >= 300)
            throw std::runtime_error("request to " + url + " returned HTTP " + std::to_string(res->status));
        return res->body;
    };
}

} // namespace decide
