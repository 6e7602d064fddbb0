#pragma once

// Suffix Tree Clustering: phrase nodes become scored base clusters, base
// clusters with strongly overlapping document sets are merged, and every
// merged group becomes a labeled topic. Petitions reached by no cluster end
// up in the "Other Topics" bucket.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "decide/error.hpp"
#include "decide/hash.hpp"
#include "decide/petition.hpp"
#include "decide/suffix_tree.hpp"
#include "decide/text_pipeline.hpp"
#include "decide/unicode.hpp"

namespace decide {

struct StcParams {
    /// A phrase must be shared by this many documents to form a base cluster.
    std::size_t min_docs = 2;
    /// Longer phrase nodes are not considered.
    std::size_t max_phrase_len = 6;
    /// Overlap ratio both clusters must exceed to be linked.
    double merge_threshold = 0.5;
    /// Base clusters kept after scoring.
    std::size_t max_base_clusters = 500;
    /// Length factor of a phrase with a single effective word.
    double single_word_factor = 0.5;
    /// Effective lengths above this are clamped.
    std::size_t length_cap = 6;
    /// A word counts toward effective length only within these document
    /// frequency bounds.
    std::size_t min_doc_freq = 3;
    double max_doc_freq_ratio = 0.4;
};

/// Per-stem document frequencies over the clustered collection.
class CorpusStats {
public:
    CorpusStats() = default;

    explicit CorpusStats(std::span<const TokenizedDocument> docs) : doc_count_(docs.size())
    {
        for (const auto& doc : docs) {
            std::unordered_set<std::string> seen;
            for (const auto& sentence : doc.sentences) {
                for (const auto& tok : sentence)
                    seen.insert(tok.stem);
            }
            for (const auto& stem : seen)
                ++df_[stem];
        }
    }

    CorpusStats(std::size_t doc_count, std::unordered_map<std::string, std::size_t> df)
        : doc_count_(doc_count), df_(std::move(df))
    {}

    [[nodiscard]] std::size_t doc_count() const noexcept { return doc_count_; }

    [[nodiscard]] std::size_t doc_freq(const std::string& stem) const
    {
        const auto it = df_.find(stem);
        return it == df_.end() ? 0 : it->second;
    }

private:
    std::size_t doc_count_ = 0;
    std::unordered_map<std::string, std::size_t> df_;
};

/// Number of phrase words that are not stopwords and whose document
/// frequency lies in [min_doc_freq, max_doc_freq_ratio · N].
inline std::size_t effective_length(std::span<const Term> phrase, const CorpusStats& stats, const StcParams& params = {})
{
    const double ceiling = params.max_doc_freq_ratio * static_cast<double>(stats.doc_count());
    std::size_t n = 0;
    for (const auto& t : phrase) {
        if (t.is_stopword)
            continue;
        const std::size_t df = stats.doc_freq(t.stem);
        if (df >= params.min_doc_freq && static_cast<double>(df) <= ceiling)
            ++n;
    }
    return n;
}

/// f(P): 0 drops the cluster, one word is penalized, long phrases are capped.
inline double length_factor(std::size_t effective, const StcParams& params = {})
{
    if (effective == 0)
        return 0.0;
    if (effective == 1)
        return params.single_word_factor;
    return static_cast<double>(std::min(effective, params.length_cap));
}

struct BaseCluster {
    PhraseOccurrence phrase;
    double score = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return phrase.documents.size(); }
    [[nodiscard]] std::string key() const { return phrase.key(); }
};

/// Strict ranking: score desc, then document count desc, then phrase.
inline bool ranks_before(const BaseCluster& a, const BaseCluster& b)
{
    if (a.score != b.score)
        return a.score > b.score;
    if (a.size() != b.size())
        return a.size() > b.size();
    const auto ka = a.key();
    const auto kb = b.key();
    return ka != kb ? ka < kb : a.phrase.phrase < b.phrase.phrase;
}

/// s(B) = |B| · f(P); clusters with f(P) = 0 are dropped, the rest ranked
/// and truncated to `max_base_clusters`.
inline std::vector<BaseCluster> score_base_clusters(std::vector<PhraseOccurrence> occurrences, const CorpusStats& stats,
                                                    const StcParams& params = {})
{
    std::vector<BaseCluster> out;
    for (auto& occ : occurrences) {
        const double f = length_factor(effective_length(occ.phrase, stats, params), params);
        if (f <= 0.0 || occ.documents.size() < params.min_docs)
            continue;
        const double score = static_cast<double>(occ.documents.size()) * f;
        out.push_back(BaseCluster{std::move(occ), score});
    }
    std::sort(out.begin(), out.end(), ranks_before);
    if (out.size() > params.max_base_clusters)
        out.resize(params.max_base_clusters);
    return out;
}

inline std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

/// Both overlap ratios must exceed `threshold`. Identical document sets are
/// linked at every threshold, including 1.
inline bool should_merge(const BaseCluster& m, const BaseCluster& n, double threshold)
{
    const std::size_t common = intersection_size(m.phrase.documents, n.phrase.documents);
    if (common == 0)
        return false;
    const auto ratio_ok = [&](std::size_t size) {
        const double r = static_cast<double>(common) / static_cast<double>(size);
        return r > threshold || common == size;
    };
    return ratio_ok(m.size()) && ratio_ok(n.size());
}

using ClusterComponent = std::vector<BaseCluster>;

/// Connected components of the overlap graph. Members of a component are
/// ordered by ranks_before, components by their best member, so the result
/// does not depend on the input order.
inline std::vector<ClusterComponent> merge_clusters(std::vector<BaseCluster> bases, double threshold = 0.5)
{
    if (!(threshold > 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::InvalidThreshold, "threshold must lie in (0, 1], got " + std::to_string(threshold));

    std::sort(bases.begin(), bases.end(), ranks_before);
    const std::size_t n = bases.size();
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (should_merge(bases[i], bases[j], threshold)) {
                adjacency[i].push_back(j);
                adjacency[j].push_back(i);
            }
        }
    }

    std::vector<bool> seen(n, false);
    std::vector<ClusterComponent> components;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        std::vector<std::size_t> members;
        std::vector<std::size_t> stack{root};
        seen[root] = true;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            for (std::size_t next : adjacency[cur]) {
                if (!seen[next]) {
                    seen[next] = true;
                    stack.push_back(next);
                }
            }
        }
        std::sort(members.begin(), members.end());
        ClusterComponent comp;
        comp.reserve(members.size());
        for (std::size_t m : members)
            comp.push_back(bases[m]);
        components.push_back(std::move(comp));
    }
    return components;
}

struct Topic {
    std::string id;
    std::string label;
    std::vector<std::string> petition_ids;
    std::size_t petition_count = 0;
    std::int64_t total_supports = 0;
    std::size_t color_index = 0;
    /// Phrase keys of the constituent base clusters, best first.
    std::vector<std::string> phrases;
};

inline constexpr std::string_view kOtherTopicsLabel = "Other Topics";

struct TopicSet {
    std::string query;
    std::vector<Topic> topics;
    Topic other;
    std::size_t total_petitions = 0;

    [[nodiscard]] const Topic* find(std::string_view topic_id) const
    {
        if (other.id == topic_id)
            return &other;
        for (const auto& t : topics) {
            if (t.id == topic_id)
                return &t;
        }
        return nullptr;
    }
};

/// Capitalizes the first word and every non-stopword of a surface phrase.
inline std::string title_case(std::string_view surface, std::span<const Term> terms)
{
    std::u32string text = unicode::decode(surface);
    std::size_t word = 0;
    bool at_word_start = true;
    for (auto& c : text) {
        if (c == U' ') {
            if (!at_word_start)
                ++word;
            at_word_start = true;
            continue;
        }
        if (at_word_start) {
            const bool stop = word < terms.size() && terms[word].is_stopword;
            if (word == 0 || !stop)
                c = unicode::to_upper(c);
            at_word_start = false;
        }
    }
    return unicode::encode(text);
}

/// Topic ids hash the normalized query with the member phrases, so they
/// stay stable for identical input and distinct across queries.
inline std::string topic_id(std::string_view query, std::span<const std::string> phrase_keys)
{
    Fnv1a h;
    h.field(unicode::fold_key(unicode::trim(query)));
    std::vector<std::string> sorted(phrase_keys.begin(), phrase_keys.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto& k : sorted)
        h.field(k);
    return h.hex();
}

inline std::string other_topic_id(std::string_view query)
{
    Fnv1a h;
    h.field(unicode::fold_key(unicode::trim(query)));
    h.field("\x01other");
    return h.hex();
}

inline TopicSet assemble_topics(const std::vector<ClusterComponent>& components, std::span<const Petition> petitions,
                                std::string_view query)
{
    std::unordered_map<std::string, const Petition*> by_id;
    for (const auto& p : petitions)
        by_id.emplace(p.id, &p);
    const auto supports_of = [&](const std::vector<std::string>& ids) {
        std::int64_t total = 0;
        for (const auto& id : ids) {
            if (auto it = by_id.find(id); it != by_id.end())
                total += it->second->supports;
        }
        return total;
    };

    TopicSet set;
    set.query = std::string(unicode::trim(query));
    set.total_petitions = petitions.size();

    std::unordered_set<std::string> assigned;
    for (const auto& comp : components) {
        if (comp.empty())
            continue;
        const BaseCluster* best = &comp.front();
        for (const auto& b : comp) {
            if (ranks_before(b, *best))
                best = &b;
        }
        Topic t;
        std::vector<std::string> members;
        for (const auto& b : comp) {
            members.insert(members.end(), b.phrase.documents.begin(), b.phrase.documents.end());
            t.phrases.push_back(b.key());
        }
        std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return id_less(a, b); });
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::erase_if(members, [&](const std::string& id) { return by_id.count(id) == 0; });
        if (members.empty())
            continue;
        t.label = title_case(best->phrase.surface, best->phrase.phrase);
        t.id = topic_id(query, t.phrases);
        t.petition_ids = std::move(members);
        t.petition_count = t.petition_ids.size();
        t.total_supports = supports_of(t.petition_ids);
        assigned.insert(t.petition_ids.begin(), t.petition_ids.end());
        set.topics.push_back(std::move(t));
    }

    std::sort(set.topics.begin(), set.topics.end(), [](const Topic& a, const Topic& b) {
        if (a.petition_count != b.petition_count)
            return a.petition_count > b.petition_count;
        if (a.total_supports != b.total_supports)
            return a.total_supports > b.total_supports;
        if (a.label != b.label)
            return a.label < b.label;
        return a.id < b.id;
    });
    for (std::size_t i = 0; i < set.topics.size(); ++i)
        set.topics[i].color_index = i;

    set.other.id = other_topic_id(query);
    set.other.label = std::string(kOtherTopicsLabel);
    for (const auto& p : petitions) {
        if (!assigned.count(p.id))
            set.other.petition_ids.push_back(p.id);
    }
    std::sort(set.other.petition_ids.begin(), set.other.petition_ids.end(),
              [](const auto& a, const auto& b) { return id_less(a, b); });
    set.other.petition_count = set.other.petition_ids.size();
    set.other.total_supports = supports_of(set.other.petition_ids);
    set.other.color_index = set.topics.size();
    return set;
}

struct ClusteringOptions {
    StcParams stc;
    TextFields fields;
};

/// The whole pipeline for one query: tokenize, build the tree, score,
/// merge, assemble. An empty petition list, or one without any indexable
/// text, yields a TopicSet with everything in "Other Topics".
inline TopicSet cluster_topics(std::string_view query, std::span<const Petition> petitions, const Analyzer& analyzer,
                               const ClusteringOptions& options = {})
{
    std::vector<TokenizedDocument> docs;
    docs.reserve(petitions.size());
    bool any_text = false;
    for (const auto& p : petitions) {
        docs.push_back(analyzer.analyze(p, options.fields));
        any_text = any_text || !docs.back().sentences.empty();
    }
    if (!any_text)
        return assemble_topics({}, petitions, query);

    const auto tree = GeneralizedSuffixTree::build(docs);
    const CorpusStats stats(docs);
    auto occurrences = tree.phrase_nodes(options.stc.min_docs, options.stc.max_phrase_len);
    auto bases = score_base_clusters(std::move(occurrences), stats, options.stc);
    const auto components = merge_clusters(std::move(bases), options.stc.merge_threshold);
    return assemble_topics(components, petitions, query);
}

} // namespace decide
