#pragma once

// Independent oracles and generators shared by the unit and acceptance
// suites. None of this calls into the code under test except to build
// inputs.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "decide/decide.hpp"

#ifndef DECIDE_SOURCE_DIR
#define DECIDE_SOURCE_DIR "."
#endif

namespace support {

using namespace decide;

inline std::filesystem::path source_path(const std::string& rel) { return std::filesystem::path(DECIDE_SOURCE_DIR) / rel; }

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// A document whose tokens are the given words verbatim (stem = word).
inline TokenizedDocument make_doc(std::string id, const std::vector<std::vector<std::string>>& sentences,
                                  const std::set<std::string>& stopwords = {})
{
    TokenizedDocument doc;
    doc.petition_id = std::move(id);
    for (const auto& words : sentences) {
        Sentence s;
        for (std::size_t i = 0; i < words.size(); ++i)
            s.push_back(Token{words[i], words[i], stopwords.count(words[i]) > 0, i});
        if (!s.empty())
            doc.sentences.push_back(std::move(s));
    }
    return doc;
}

struct OracleNgram {
    std::set<std::string> docs;
    // Next term after each occurrence, or a per-sentence end marker.
    std::set<std::string> continuations;
};

/// Every contiguous within-sentence n-gram with its documents and right
/// continuations, by direct enumeration.
inline std::map<std::vector<Term>, OracleNgram> enumerate_ngrams(const std::vector<TokenizedDocument>& docs)
{
    std::map<std::vector<Term>, OracleNgram> out;
    std::size_t sentence_no = 0;
    for (const auto& doc : docs) {
        for (const auto& s : doc.sentences) {
            ++sentence_no;
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<Term> phrase;
                for (std::size_t j = i; j < s.size(); ++j) {
                    phrase.push_back(Term{s[j].stem, s[j].is_stopword});
                    auto& entry = out[phrase];
                    entry.docs.insert(doc.petition_id);
                    if (j + 1 < s.size())
                        entry.continuations.insert((s[j + 1].is_stopword ? "s:" : "w:") + s[j + 1].stem);
                    else
                        entry.continuations.insert("$" + std::to_string(sentence_no));
                }
            }
        }
    }
    return out;
}

/// Phrases a word-level suffix tree must expose as internal nodes: n-grams
/// with two or more distinct right continuations, filtered like
/// phrase_nodes(). Keyed by phrase, valued by sorted doc ids.
inline std::map<std::vector<Term>, std::vector<std::string>>
oracle_phrases(const std::vector<TokenizedDocument>& docs, std::size_t min_docs, std::size_t max_len)
{
    std::map<std::vector<Term>, std::vector<std::string>> out;
    for (const auto& [phrase, info] : enumerate_ngrams(docs)) {
        if (info.continuations.size() < 2 || info.docs.size() < min_docs || phrase.size() > max_len)
            continue;
        if (std::all_of(phrase.begin(), phrase.end(), [](const Term& t) { return t.is_stopword; }))
            continue;
        out[phrase] = std::vector<std::string>(info.docs.begin(), info.docs.end());
    }
    return out;
}

/// Random corpus over a small vocabulary so phrases repeat.
inline std::vector<TokenizedDocument> random_corpus(std::mt19937_64& rng, std::size_t max_docs = 20,
                                                    std::size_t max_tokens = 30, std::size_t vocab = 6)
{
    static const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f", "g", "h", "de", "la"};
    const std::set<std::string> stop = {"de", "la"};
    std::uniform_int_distribution<std::size_t> ndocs(1, max_docs);
    std::uniform_int_distribution<std::size_t> ntok(1, max_tokens);
    std::uniform_int_distribution<std::size_t> pick(0, std::min(vocab, words.size()) - 1);
    std::uniform_int_distribution<int> coin(0, 9);
    std::vector<TokenizedDocument> docs;
    const std::size_t n = ndocs(rng);
    for (std::size_t d = 0; d < n; ++d) {
        std::vector<std::vector<std::string>> sentences(1);
        const std::size_t tokens = ntok(rng);
        for (std::size_t t = 0; t < tokens; ++t) {
            if (coin(rng) == 0 && !sentences.back().empty())
                sentences.emplace_back();
            // occasional stopwords from the tail of the vocabulary
            sentences.back().push_back(coin(rng) == 1 ? words[8 + (t % 2)] : words[pick(rng)]);
        }
        docs.push_back(make_doc("d" + std::to_string(d + 1), sentences, stop));
    }
    return docs;
}

/// Union-find over the pairwise overlap predicate, written from the
/// definition: both ratios above the threshold, or identical sets.
inline std::set<std::set<std::string>> union_find_components(const std::vector<BaseCluster>& bases, double threshold)
{
    const std::size_t n = bases.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::set<std::string> a(bases[i].phrase.documents.begin(), bases[i].phrase.documents.end());
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::set<std::string> b(bases[j].phrase.documents.begin(), bases[j].phrase.documents.end());
            std::size_t common = 0;
            for (const auto& x : a)
                common += b.count(x);
            const double ra = static_cast<double>(common) / static_cast<double>(a.size());
            const double rb = static_cast<double>(common) / static_cast<double>(b.size());
            if ((ra > threshold && rb > threshold) || a == b)
                parent[find(i)] = find(j);
        }
    }
    std::map<std::size_t, std::set<std::string>> groups;
    for (std::size_t i = 0; i < n; ++i)
        groups[find(i)].insert(bases[i].key());
    std::set<std::set<std::string>> out;
    for (auto& [_, g] : groups)
        out.insert(std::move(g));
    return out;
}

inline std::set<std::set<std::string>> component_keys(const std::vector<ClusterComponent>& comps)
{
    std::set<std::set<std::string>> out;
    for (const auto& c : comps) {
        std::set<std::string> keys;
        for (const auto& b : c)
            keys.insert(b.key());
        out.insert(std::move(keys));
    }
    return out;
}

/// Random scored base clusters with distinct phrases.
inline std::vector<BaseCluster> random_bases(std::mt19937_64& rng, std::size_t max_clusters = 50, std::size_t max_docs = 30)
{
    std::uniform_int_distribution<std::size_t> nclusters(1, max_clusters);
    std::uniform_int_distribution<std::size_t> ndocs(2, max_docs);
    std::uniform_real_distribution<double> score(0.5, 20.0);
    const std::size_t docs = ndocs(rng);
    std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(docs, 8));
    std::uniform_int_distribution<std::size_t> doc(1, docs);
    std::vector<BaseCluster> out;
    const std::size_t n = nclusters(rng);
    for (std::size_t i = 0; i < n; ++i) {
        std::set<std::string> members;
        const std::size_t k = size(rng);
        while (members.size() < k)
            members.insert("p" + std::to_string(doc(rng)));
        BaseCluster b;
        b.phrase.phrase = {Term{"w" + std::to_string(i), false}};
        b.phrase.documents.assign(members.begin(), members.end());
        b.phrase.surface = "w" + std::to_string(i);
        // a few duplicates of the same doc set to exercise the identity rule
        if (i > 0 && i % 7 == 0)
            b.phrase.documents = out[i - 1].phrase.documents;
        b.score = std::round(score(rng) * 4.0) / 4.0;
        out.push_back(std::move(b));
    }
    return out;
}

struct PackStats {
    double max_overlap = 0.0;
    double max_escape = 0.0;  // how far any circle pokes out of the canvas
};

inline PackStats pack_stats(const PackResult& r)
{
    PackStats s;
    const auto& c = r.circles;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s.max_escape = std::max({s.max_escape, c[i].radius - c[i].cx, c[i].cx + c[i].radius - r.canvas.width,
                                 c[i].radius - c[i].cy, c[i].cy + c[i].radius - r.canvas.height});
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double dx = c[i].cx - c[j].cx;
            const double dy = c[i].cy - c[j].cy;
            s.max_overlap = std::max(s.max_overlap, c[i].radius + c[j].radius - std::sqrt(dx * dx + dy * dy));
        }
    }
    return s;
}

/// Heavy-tailed supports like a real petition site: most petitions have a
/// handful of votes, a few have tens of thousands.
inline std::vector<CircleInput> petition_circles(std::mt19937_64& rng, std::size_t n, double scale = 0.25,
                                                 double min_radius = 4.0)
{
    std::lognormal_distribution<double> votes(4.0, 2.0);
    std::vector<CircleInput> out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto supports = static_cast<std::int64_t>(std::min(votes(rng), 60000.0));
        out.push_back({"c" + std::to_string(i), circle_radius(supports, scale, min_radius)});
    }
    return out;
}

struct MosaicCheck {
    double max_relative_area_error = 0.0;
    double coverage_relative_error = 0.0;
    double overlap_area = 0.0;  // in grid cells
    bool inside = true;
    bool positive = true;
};

inline MosaicCheck check_mosaic(const std::vector<Tile>& tiles, const std::vector<double>& weights, Canvas canvas)
{
    MosaicCheck m;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const auto& t = tiles[i];
        const double expected = weights[i] / total * canvas.area();
        m.max_relative_area_error = std::max(m.max_relative_area_error, std::abs(t.area() - expected) / expected);
        sum += t.area();
        m.positive = m.positive && t.width > 0 && t.height > 0;
        m.inside = m.inside && t.x >= 0 && t.y >= 0 && t.x + t.width <= canvas.width && t.y + t.height <= canvas.height;
        for (std::size_t j = i + 1; j < tiles.size(); ++j) {
            // Integer grid of 1e-9 canvas units: touching edges land on the
            // same grid line, real overlaps do not vanish.
            const auto q = [&](double v) { return std::llround(v / (std::max(canvas.width, canvas.height) * 1e-9)); };
            const auto& u = tiles[j];
            const long long w = std::min(q(t.x + t.width), q(u.x + u.width)) - std::max(q(t.x), q(u.x));
            const long long h = std::min(q(t.y + t.height), q(u.y + u.height)) - std::max(q(t.y), q(u.y));
            if (w > 0 && h > 0)
                m.overlap_area += static_cast<double>(w) * static_cast<double>(h);
        }
    }
    m.coverage_relative_error = std::abs(sum - canvas.area()) / canvas.area();
    return m;
}

} // namespace support
