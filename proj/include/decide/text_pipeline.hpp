#pragma once

// Petition text → sentences → normalized tokens.
//
// Surfaces keep the original spelling for label display. Stems are the
// matching keys: lowercase, stemmed and accent-folded, repeated until
// stable. Stopwords are flagged, never removed, and are keyed by their
// folded surface instead of a stem so that a stopword and a content word
// can never collide.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decide/petition.hpp"
#include "decide/stemmer.hpp"
#include "decide/stopwords.hpp"
#include "decide/unicode.hpp"

namespace decide {

struct Token {
    std::string surface;
    std::string stem;
    bool is_stopword = false;
    std::size_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

using Sentence = std::vector<Token>;

struct TokenizedDocument {
    std::string petition_id;
    std::vector<Sentence> sentences;
};

/// Splits at '.', '!', '?' and newlines. Terminator runs stay attached to the
/// sentence they end; a '.' between two digits is not a boundary. Segments
/// without any letter or digit are dropped.
inline std::vector<std::string> sentence_split(std::string_view text)
{
    std::vector<std::string> out;
    const auto flush = [&](std::string_view piece) {
        piece = unicode::trim(piece);
        if (piece.empty())
            return;
        for (char32_t c : unicode::decode(piece)) {
            if (unicode::is_word_char(c)) {
                out.emplace_back(piece);
                return;
            }
        }
    };
    const auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n' || c == '\r') {
            flush(text.substr(start, i - start));
            start = ++i;
            continue;
        }
        const bool terminator = c == '!' || c == '?' ||
            (c == '.' && !(i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) && is_digit(text[i + 1])));
        if (!terminator) {
            ++i;
            continue;
        }
        while (i < text.size() && (text[i] == '.' || text[i] == '!' || text[i] == '?'))
            ++i;
        // Closing quotes and brackets belong to the sentence they close.
        while (i < text.size() && (text[i] == '"' || text[i] == '\'' || text[i] == ')'))
            ++i;
        flush(text.substr(start, i - start));
        start = i;
    }
    flush(text.substr(start));
    return out;
}

/// Which petition fields feed the clustering.
struct TextFields {
    bool title = true;
    bool summary = true;
    bool body = false;
};

class Analyzer {
public:
    explicit Analyzer(Language lang) : lang_(lang), stopwords_(StopwordSet::builtin(lang)) {}
    Analyzer(Language lang, StopwordSet stopwords) : lang_(lang), stopwords_(std::move(stopwords)) {}

    [[nodiscard]] Language language() const noexcept { return lang_; }
    [[nodiscard]] const StopwordSet& stopwords() const noexcept { return stopwords_; }

    /// Matching key for a single word.
    [[nodiscard]] std::string stem_word(std::u32string_view word, bool* is_stopword = nullptr) const
    {
        const std::u32string lowered = unicode::lower(word);
        const std::u32string folded = unicode::fold_key(lowered);
        const std::string folded_utf8 = unicode::encode(folded);
        const bool stop = stopwords_.contains_key(folded_utf8);
        if (is_stopword)
            *is_stopword = stop;
        if (stop)
            return folded_utf8;
        // Snowball output is not always a fixed point (papeleras -> papeler
        // -> papel), so re-stem until the key stops moving. Length never
        // grows, the cap is only a guard.
        std::u32string key = lowered;
        for (int round = 0; round < 16; ++round) {
            std::u32string next = lang_ == Language::es ? stem::spanish(key) : stem::english(key);
            next = next.empty() ? key : unicode::fold_key(next);
            if (next == key)
                break;
            key = std::move(next);
            // re-tokenizing a stopword key takes the stopword path, so it is final
            if (stopwords_.contains_key(unicode::encode(key)))
                break;
        }
        return unicode::encode(key);
    }

    [[nodiscard]] std::vector<Token> tokenize(std::string_view sentence) const
    {
        std::vector<Token> tokens;
        const std::u32string text = unicode::decode(sentence);
        std::size_t i = 0;
        while (i < text.size()) {
            if (!unicode::is_word_char(text[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < text.size() && unicode::is_word_char(text[j]))
                ++j;
            const std::u32string_view word(text.data() + i, j - i);
            Token tok;
            tok.surface = unicode::encode(word);
            tok.stem = stem_word(word, &tok.is_stopword);
            tok.position = tokens.size();
            tokens.push_back(std::move(tok));
            i = j;
        }
        return tokens;
    }

    [[nodiscard]] TokenizedDocument analyze(const Petition& p, TextFields fields = {}) const
    {
        TokenizedDocument doc;
        doc.petition_id = p.id;
        const auto add = [&](std::string_view text) {
            for (const auto& s : sentence_split(text)) {
                auto tokens = tokenize(s);
                if (!tokens.empty())
                    doc.sentences.push_back(std::move(tokens));
            }
        };
        if (fields.title)
            add(p.title);
        if (fields.summary)
            add(p.summary);
        if (fields.body)
            add(p.body);
        return doc;
    }

private:
    Language lang_;
    StopwordSet stopwords_;
};

/// Tokenizes one sentence with the built-in resources for `lang`.
inline std::vector<Token> tokenize_normalize(std::string_view sentence, Language lang)
{
    return Analyzer(lang).tokenize(sentence);
}

inline std::vector<Token> tokenize_normalize(std::string_view sentence, std::string_view lang_code)
{
    return tokenize_normalize(sentence, parse_language(lang_code));
}

} // namespace decide
