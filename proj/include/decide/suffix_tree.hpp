#pragma once

// Word-level generalized suffix tree over the sentences of a document
// collection.
//
// Every sentence is inserted on its own with a terminator symbol unique to
// that sentence, so no path ever crosses a sentence boundary and every
// suffix ends at its own leaf. Internal nodes are therefore exactly the
// right-branching phrases of the collection: a phrase is a node iff its
// occurrences are followed by at least two distinct continuations (a
// sentence end counts as a continuation unique to that sentence).
//
// Construction inserts suffixes one by one, splitting edges on mismatch.
// That is quadratic in sentence length, which is irrelevant for petition
// text where sentences stay short.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "decide/error.hpp"
#include "decide/text_pipeline.hpp"

namespace decide {

/// One word of a phrase: its matching key and whether it is a stopword.
struct Term {
    std::string stem;
    bool is_stopword = false;

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

/// Space-joined stems; the canonical identity of a phrase.
inline std::string phrase_key(std::span<const Term> terms)
{
    std::string key;
    for (const auto& t : terms) {
        if (!key.empty())
            key += ' ';
        key += t.stem;
    }
    return key;
}

struct PhraseOccurrence {
    std::vector<Term> phrase;
    /// Sorted petition ids of the documents containing the phrase.
    std::vector<std::string> documents;
    /// Most frequent lowercase surface form across all occurrences.
    std::string surface;

    [[nodiscard]] std::string key() const { return phrase_key(phrase); }
};

class GeneralizedSuffixTree {
public:
    using Symbol = std::uint32_t;
    using NodeId = std::uint32_t;
    using DocIndex = std::uint32_t;

    static constexpr NodeId kRoot = 0;
    static constexpr NodeId kNone = UINT32_MAX;
    static constexpr Symbol kTerminatorBit = 0x8000'0000u;

    struct Node {
        NodeId parent = kNone;
        // Edge label: sequences_[seq][begin, end).
        std::uint32_t seq = 0;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        /// Tokens on the root path, excluding any terminator.
        std::uint32_t depth = 0;
        /// Children ordered by first edge symbol.
        std::vector<std::pair<Symbol, NodeId>> children;
        /// Sorted, unique.
        std::vector<DocIndex> docs;
        /// For leaves: where the suffix starts in sequences_[seq].
        std::uint32_t suffix_start = 0;

        [[nodiscard]] bool is_leaf() const noexcept { return children.empty(); }
    };

    static GeneralizedSuffixTree build(std::span<const TokenizedDocument> docs)
    {
        GeneralizedSuffixTree tree;
        tree.nodes_.emplace_back();
        for (DocIndex d = 0; d < docs.size(); ++d) {
            tree.doc_ids_.push_back(docs[d].petition_id);
            for (const auto& sentence : docs[d].sentences) {
                if (sentence.empty())
                    continue;
                tree.add_sentence(d, sentence);
            }
        }
        if (tree.sequences_.empty())
            throw Error(ErrorCode::EmptyCorpus, "no non-empty sentence to index");
        tree.finalize();
        return tree;
    }

    [[nodiscard]] std::span<const Node> nodes() const noexcept { return nodes_; }
    [[nodiscard]] const Node& node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] std::size_t document_count() const noexcept { return doc_ids_.size(); }
    [[nodiscard]] const std::string& document_id(DocIndex d) const { return doc_ids_.at(d); }
    [[nodiscard]] std::size_t sequence_count() const noexcept { return sequences_.size(); }
    [[nodiscard]] std::span<const Symbol> sequence(std::size_t s) const { return sequences_.at(s); }
    [[nodiscard]] DocIndex sequence_document(std::size_t s) const { return sequence_doc_.at(s); }
    [[nodiscard]] const Term& term(Symbol sym) const { return terms_.at(sym); }

    static constexpr bool is_terminator(Symbol s) noexcept { return (s & kTerminatorBit) != 0; }

    /// Label of the edge entering `id`.
    [[nodiscard]] std::span<const Symbol> edge_label(NodeId id) const
    {
        const Node& n = nodes_.at(id);
        return std::span<const Symbol>(sequences_[n.seq]).subspan(n.begin, n.end - n.begin);
    }

    /// Terms spelled from the root down to `id` (terminator excluded).
    [[nodiscard]] std::vector<Term> path_terms(NodeId id) const
    {
        std::vector<Symbol> symbols;
        for (NodeId cur = id; cur != kRoot; cur = nodes_[cur].parent) {
            auto label = edge_label(cur);
            for (auto it = label.rbegin(); it != label.rend(); ++it) {
                if (!is_terminator(*it))
                    symbols.push_back(*it);
            }
        }
        std::vector<Term> out;
        out.reserve(symbols.size());
        for (auto it = symbols.rbegin(); it != symbols.rend(); ++it)
            out.push_back(terms_[*it]);
        return out;
    }

    /// Internal nodes shared by at least `min_docs` documents, spelling at
    /// most `max_phrase_len` terms, with at least one non-stopword. Ordered
    /// by phrase key.
    [[nodiscard]] std::vector<PhraseOccurrence> phrase_nodes(std::size_t min_docs, std::size_t max_phrase_len) const
    {
        std::vector<bool> selected(nodes_.size(), false);
        for (NodeId id = 1; id < nodes_.size(); ++id) {
            const Node& n = nodes_[id];
            if (n.is_leaf() || n.docs.size() < min_docs || n.depth > max_phrase_len)
                continue;
            const auto terms = path_terms(id);
            selected[id] = std::any_of(terms.begin(), terms.end(), [](const Term& t) { return !t.is_stopword; });
        }

        // Surface variants per selected node, gathered from the leaves below.
        std::unordered_map<NodeId, std::map<std::string, std::size_t>> variants;
        for (NodeId id = 1; id < nodes_.size(); ++id) {
            const Node& leaf = nodes_[id];
            if (!leaf.is_leaf())
                continue;
            for (NodeId up = leaf.parent; up != kRoot && up != kNone; up = nodes_[up].parent) {
                if (!selected[up])
                    continue;
                const auto& words = surfaces_[leaf.seq];
                std::string surface;
                for (std::uint32_t k = 0; k < nodes_[up].depth; ++k) {
                    if (k)
                        surface += ' ';
                    surface += words[leaf.suffix_start + k];
                }
                ++variants[up][surface];
            }
        }

        std::vector<PhraseOccurrence> out;
        for (NodeId id = 1; id < nodes_.size(); ++id) {
            if (!selected[id])
                continue;
            PhraseOccurrence occ;
            occ.phrase = path_terms(id);
            for (DocIndex d : nodes_[id].docs)
                occ.documents.push_back(doc_ids_[d]);
            std::sort(occ.documents.begin(), occ.documents.end());
            std::size_t best = 0;
            for (const auto& [surface, count] : variants[id]) {
                // std::map iterates in order, so ties keep the smallest surface.
                if (count > best) {
                    best = count;
                    occ.surface = surface;
                }
            }
            out.push_back(std::move(occ));
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            const auto ka = a.key();
            const auto kb = b.key();
            return ka != kb ? ka < kb : a.phrase < b.phrase;
        });
        return out;
    }

    /// Petition ids of the documents containing `phrase` as a contiguous
    /// within-sentence run. Unknown terms yield an empty set.
    [[nodiscard]] std::vector<std::string> contains(std::span<const Term> phrase) const
    {
        if (phrase.empty())
            throw Error(ErrorCode::EmptyPhrase, "phrase has no terms");
        std::vector<Symbol> query;
        for (const auto& t : phrase) {
            const auto it = symbols_.find(symbol_key(t.stem, t.is_stopword));
            if (it == symbols_.end())
                return {};
            query.push_back(it->second);
        }
        return docs_of(query);
    }

    /// Same lookup by bare stems; a stem that is both a stopword key and a
    /// content stem resolves to the content stem.
    [[nodiscard]] std::vector<std::string> contains(std::span<const std::string> stems) const
    {
        if (stems.empty())
            throw Error(ErrorCode::EmptyPhrase, "phrase has no terms");
        std::vector<Symbol> query;
        for (const auto& stem : stems) {
            auto it = symbols_.find(symbol_key(stem, false));
            if (it == symbols_.end())
                it = symbols_.find(symbol_key(stem, true));
            if (it == symbols_.end())
                return {};
            query.push_back(it->second);
        }
        return docs_of(query);
    }

    /// Indented text rendering; children sorted by label so the output is
    /// independent of insertion order.
    [[nodiscard]] std::string dump() const
    {
        std::string out;
        dump_node(kRoot, 0, out);
        return out;
    }

private:
    void add_sentence(DocIndex doc, const Sentence& sentence)
    {
        const auto seq = static_cast<std::uint32_t>(sequences_.size());
        std::vector<Symbol> symbols;
        std::vector<std::string> words;
        symbols.reserve(sentence.size() + 1);
        for (const auto& tok : sentence) {
            symbols.push_back(intern(tok));
            words.push_back(unicode::lower(tok.surface));
        }
        symbols.push_back(kTerminatorBit | seq);
        sequences_.push_back(std::move(symbols));
        surfaces_.push_back(std::move(words));
        sequence_doc_.push_back(doc);

        const auto len = static_cast<std::uint32_t>(sequences_[seq].size());
        for (std::uint32_t start = 0; start + 1 < len; ++start)
            insert_suffix(seq, start);
    }

    static std::string symbol_key(const std::string& stem, bool is_stopword)
    {
        return is_stopword ? "\x01" + stem : stem;
    }

    Symbol intern(const Token& tok)
    {
        auto [it, inserted] =
            symbols_.try_emplace(symbol_key(tok.stem, tok.is_stopword), static_cast<Symbol>(terms_.size()));
        if (inserted)
            terms_.push_back(Term{tok.stem, tok.is_stopword});
        return it->second;
    }

    std::vector<std::string> docs_of(std::span<const Symbol> query) const
    {
        NodeId cur = kRoot;
        std::size_t matched = 0;
        while (matched < query.size()) {
            const NodeId child = find_child(cur, query[matched]);
            if (child == kNone)
                return {};
            auto label = edge_label(child);
            for (std::size_t k = 0; k < label.size() && matched < query.size(); ++k, ++matched) {
                if (label[k] != query[matched])
                    return {};
            }
            cur = child;
        }
        std::vector<std::string> out;
        for (DocIndex d : nodes_[cur].docs)
            out.push_back(doc_ids_[d]);
        std::sort(out.begin(), out.end());
        return out;
    }

    NodeId find_child(NodeId parent, Symbol sym) const
    {
        const auto& ch = nodes_[parent].children;
        auto it = std::lower_bound(ch.begin(), ch.end(), sym, [](const auto& e, Symbol s) { return e.first < s; });
        return (it != ch.end() && it->first == sym) ? it->second : kNone;
    }

    void attach(NodeId parent, Symbol sym, NodeId child)
    {
        auto& ch = nodes_[parent].children;
        auto it = std::lower_bound(ch.begin(), ch.end(), sym, [](const auto& e, Symbol s) { return e.first < s; });
        if (it != ch.end() && it->first == sym)
            it->second = child;
        else
            ch.insert(it, {sym, child});
        nodes_[child].parent = parent;
    }

    NodeId new_leaf(NodeId parent, std::uint32_t seq, std::uint32_t begin, std::uint32_t suffix_start)
    {
        Node leaf;
        leaf.seq = seq;
        leaf.begin = begin;
        leaf.end = static_cast<std::uint32_t>(sequences_[seq].size());
        leaf.suffix_start = suffix_start;
        const auto id = static_cast<NodeId>(nodes_.size());
        nodes_.push_back(std::move(leaf));
        attach(parent, sequences_[seq][begin], id);
        return id;
    }

    void insert_suffix(std::uint32_t seq, std::uint32_t start)
    {
        const auto& s = sequences_[seq];
        const auto len = static_cast<std::uint32_t>(s.size());
        NodeId cur = kRoot;
        std::uint32_t pos = start;
        while (pos < len) {
            const NodeId child = find_child(cur, s[pos]);
            if (child == kNone) {
                new_leaf(cur, seq, pos, start);
                return;
            }
            auto label = edge_label(child);
            std::uint32_t k = 0;
            while (k < label.size() && pos < len && label[k] == s[pos]) {
                ++k;
                ++pos;
            }
            if (k == label.size()) {
                cur = child;
                continue;
            }
            // Mismatch inside the edge: split it at k.
            Node mid;
            mid.seq = nodes_[child].seq;
            mid.begin = nodes_[child].begin;
            mid.end = mid.begin + k;
            const auto mid_id = static_cast<NodeId>(nodes_.size());
            const Symbol child_first = label[0];
            const Symbol rest_first = label[k];
            nodes_.push_back(std::move(mid));
            nodes_[child].begin += k;
            attach(cur, child_first, mid_id);
            attach(mid_id, rest_first, child);
            new_leaf(mid_id, seq, pos, start);
            return;
        }
    }

    void finalize()
    {
        // Node ids do not follow tree order after splits, so walk top-down
        // for depths and reverse the walk for the bottom-up doc-set union.
        std::vector<NodeId> order;
        order.reserve(nodes_.size());
        std::vector<NodeId> stack{kRoot};
        while (!stack.empty()) {
            const NodeId id = stack.back();
            stack.pop_back();
            order.push_back(id);
            for (const auto& [sym, child] : nodes_[id].children) {
                auto label = edge_label(child);
                std::uint32_t words = 0;
                for (Symbol x : label)
                    words += is_terminator(x) ? 0 : 1;
                nodes_[child].depth = nodes_[id].depth + words;
                stack.push_back(child);
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            Node& n = nodes_[*it];
            if (n.is_leaf()) {
                n.docs = {sequence_doc_[n.seq]};
                continue;
            }
            std::vector<DocIndex> merged;
            for (const auto& [sym, child] : n.children)
                merged.insert(merged.end(), nodes_[child].docs.begin(), nodes_[child].docs.end());
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            n.docs = std::move(merged);
        }
    }

    [[nodiscard]] std::string symbol_text(Symbol sym) const
    {
        if (is_terminator(sym))
            return "$" + std::to_string(sym & ~kTerminatorBit);
        return terms_[sym].stem;
    }

    void dump_node(NodeId id, int indent, std::string& out) const
    {
        if (id != kRoot) {
            out.append(static_cast<std::size_t>(indent - 1) * 2, ' ');
            std::string label;
            for (Symbol s : edge_label(id)) {
                if (!label.empty())
                    label += ' ';
                label += symbol_text(s);
            }
            out += label;
            out += " {";
            for (std::size_t i = 0; i < nodes_[id].docs.size(); ++i) {
                if (i)
                    out += ',';
                out += doc_ids_[nodes_[id].docs[i]];
            }
            out += "}\n";
        }
        std::vector<std::pair<std::string, NodeId>> kids;
        for (const auto& [sym, child] : nodes_[id].children)
            kids.emplace_back(symbol_text(sym), child);
        std::sort(kids.begin(), kids.end());
        for (const auto& [text, child] : kids)
            dump_node(child, indent + 1, out);
    }

    std::vector<Node> nodes_;
    std::vector<std::vector<Symbol>> sequences_;
    std::vector<std::vector<std::string>> surfaces_;
    std::vector<DocIndex> sequence_doc_;
    std::vector<std::string> doc_ids_;
    std::vector<Term> terms_;
    std::unordered_map<std::string, Symbol> symbols_;
};

} // namespace decide
