#pragma once

// Line-delimited JSON corpus files: one petition object per line with
// exactly the fields id, title, summary, body, supports, created_at, url.

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "decide/error.hpp"
#include "decide/petition.hpp"

namespace decide {

inline constexpr std::array<std::string_view, 7> kPetitionFields = {"id",       "title",      "summary", "body",
                                                                    "supports", "created_at", "url"};

inline nlohmann::ordered_json petition_to_json(const Petition& p)
{
    nlohmann::ordered_json j;
    j["id"] = p.id;
    j["title"] = p.title;
    j["summary"] = p.summary;
    j["body"] = p.body;
    j["supports"] = p.supports;
    j["created_at"] = format_iso8601(p.created_at);
    j["url"] = p.url;
    return j;
}

/// Validates one record. `line` only feeds the error.
inline Petition petition_from_json(const nlohmann::json& j, std::size_t line)
{
    const auto fail = [line](const std::string& msg) -> Error { return Error(ErrorCode::ParseError, msg, line); };
    if (!j.is_object())
        throw fail("record is not a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(kPetitionFields.begin(), kPetitionFields.end(), key) == kPetitionFields.end())
            throw fail("unknown field '" + key + "'");
    }
    for (auto field : kPetitionFields) {
        if (!j.contains(field))
            throw fail("missing field '" + std::string(field) + "'");
    }
    const auto text = [&](const char* field) {
        const auto& v = j.at(field);
        if (!v.is_string())
            throw fail(std::string("field '") + field + "' must be a string");
        return v.get<std::string>();
    };

    Petition p;
    p.id = text("id");
    if (p.id.empty())
        throw fail("empty id");
    p.title = text("title");
    if (p.title.empty())
        throw fail("empty title for id " + p.id);
    p.summary = text("summary");
    p.body = text("body");

    const auto& s = j.at("supports");
    if (!s.is_number_integer())
        throw fail("supports must be an integer");
    p.supports = s.get<std::int64_t>();
    if (p.supports < 0)
        throw fail("negative supports for id " + p.id);

    const auto created = text("created_at");
    const auto ts = parse_iso8601(created);
    if (!ts)
        throw fail("bad created_at '" + created + "'");
    p.created_at = *ts;

    p.url = text("url");
    if (!is_absolute_url(p.url))
        throw fail("url is not absolute: '" + p.url + "'");
    return p;
}

struct LoadResult {
    std::vector<Petition> petitions;
    std::vector<std::string> warnings;
};

/// Blank lines are skipped; line numbers are 1-based physical lines.
inline LoadResult parse_corpus(std::istream& in, const std::string& name = "<stream>")
{
    LoadResult result;
    std::unordered_map<std::string, std::size_t> seen;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r')
            text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos)
            continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::ParseError, name + ": " + e.what(), line);
        }
        Petition p = petition_from_json(j, line);
        if (auto [it, fresh] = seen.emplace(p.id, line); !fresh)
            throw Error(ErrorCode::DuplicateId,
                        name + ": id '" + p.id + "' already defined on line " + std::to_string(it->second), line);
        result.petitions.push_back(std::move(p));
    }
    if (result.petitions.empty())
        result.warnings.push_back(name + ": corpus contains no records");
    return result;
}

inline LoadResult load_corpus(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::SourceUnavailable, "cannot open corpus file '" + path.string() + "' (1 attempt)");
    return parse_corpus(in, path.string());
}

inline std::string serialize_corpus(const std::vector<Petition>& petitions)
{
    std::string out;
    for (const auto& p : petitions) {
        out += petition_to_json(p).dump();
        out += '\n';
    }
    return out;
}

/// Writes through a sibling temp file and renames it into place, so readers
/// never see a partial file and concurrent writers resolve last-wins.
inline void write_corpus(const std::filesystem::path& path, const std::vector<Petition>& petitions)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::random_device rd;
    auto tmp = path;
    tmp += ".tmp" + std::to_string(rd()) + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::SourceUnavailable, "cannot write '" + tmp.string() + "'");
        out << serialize_corpus(petitions);
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error(ErrorCode::SourceUnavailable, "short write to '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::SourceUnavailable, "cannot replace '" + path.string() + "': " + ec.message());
    }
}

} // namespace decide
