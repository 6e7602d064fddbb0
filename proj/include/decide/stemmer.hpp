#pragma once

// Snowball stemmers for Spanish and English, operating on
// lowercase UTF-32 words. Both follow the published Snowball algorithms:
// regions are computed once up front, suffix lists are matched
// longest-first, and a failed region test aborts the step without trying a
// shorter suffix.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <string_view>

namespace decide::stem {

namespace detail {

using Word = std::u32string;
using Suffix = std::u32string_view;

inline bool ends_with(const Word& w, Suffix s)
{
    return w.size() >= s.size() && std::u32string_view(w).substr(w.size() - s.size()) == s;
}

/// Longest suffix of `w` (restricted to w[floor..]) from `list`, or empty.
inline Suffix longest_suffix(const Word& w, std::initializer_list<Suffix> list, std::size_t floor = 0)
{
    Suffix best;
    for (Suffix s : list) {
        if (s.size() > best.size() && w.size() >= floor + s.size() && ends_with(w, s))
            best = s;
    }
    return best;
}

inline bool in(Suffix hit, std::initializer_list<Suffix> group)
{
    return std::find(group.begin(), group.end(), hit) != group.end();
}

inline void replace_suffix(Word& w, std::size_t len, Suffix with)
{
    w.resize(w.size() - len);
    w.append(with);
}

} // namespace detail

inline std::u32string spanish(std::u32string w)
{
    using namespace detail;
    const auto is_v = [](char32_t c) {
        switch (c) {
        case U'a': case U'e': case U'i': case U'o': case U'u':
        case U'á': case U'é': case U'í': case U'ó': case U'ú': case U'ü':
            return true;
        default:
            return false;
        }
    };

    const std::size_t n = w.size();
    std::size_t pV = n;
    std::size_t p1 = n;
    std::size_t p2 = n;

    const auto gopast = [&](std::size_t from, bool vowel) -> std::size_t {
        for (std::size_t i = from; i < w.size(); ++i) {
            if (is_v(w[i]) == vowel)
                return i + 1;
        }
        return std::u32string::npos;
    };

    if (n >= 2) {
        std::size_t mark = std::u32string::npos;
        if (is_v(w[0])) {
            mark = is_v(w[1]) ? gopast(2, false) : gopast(2, true);
        } else if (!is_v(w[1])) {
            mark = gopast(2, true);
        } else if (n >= 3) {
            mark = 3;
        }
        if (mark != std::u32string::npos)
            pV = mark;
    }
    if (auto a = gopast(0, true); a != std::u32string::npos) {
        if (auto b = gopast(a, false); b != std::u32string::npos) {
            p1 = b;
            if (auto c = gopast(p1, true); c != std::u32string::npos) {
                if (auto d = gopast(c, false); d != std::u32string::npos)
                    p2 = d;
            }
        }
    }

    const auto start_of = [&](Suffix s) { return w.size() - s.size(); };

    // Attached pronoun after a gerund or infinitive.
    if (Suffix pron = longest_suffix(w, {U"me", U"se", U"sela", U"selo", U"selas", U"selos", U"la", U"le",
                                         U"lo", U"las", U"les", U"los", U"nos"});
        !pron.empty()) {
        Word head = w.substr(0, w.size() - pron.size());
        Suffix ending = longest_suffix(head, {U"iéndo", U"ándo", U"ár", U"ér", U"ír",
                                              U"ando", U"iendo", U"ar", U"er", U"ir", U"yendo"});
        if (!ending.empty()) {
            const std::size_t at = head.size() - ending.size();
            if (at >= pV) {
                if (ending == U"iéndo") {
                    head.resize(at);
                    w = head + U"iendo";
                } else if (ending == U"ándo") {
                    head.resize(at);
                    w = head + U"ando";
                } else if (ending == U"ár") {
                    head.resize(at);
                    w = head + U"ar";
                } else if (ending == U"ér") {
                    head.resize(at);
                    w = head + U"er";
                } else if (ending == U"ír") {
                    head.resize(at);
                    w = head + U"ir";
                } else if (ending == U"yendo") {
                    if (at >= 1 && head[at - 1] == U'u')
                        w = head;
                } else {
                    w = head;
                }
            }
        }
    }

    const auto standard_suffix = [&]() -> bool {
        Suffix s = longest_suffix(
            w, {U"anza", U"anzas", U"ico", U"ica", U"icos", U"icas", U"ismo", U"ismos", U"able", U"ables",
                U"ible", U"ibles", U"ista", U"istas", U"oso", U"osa", U"osos", U"osas", U"amiento", U"amientos",
                U"imiento", U"imientos", U"adora", U"ador", U"ación", U"adoras", U"adores", U"aciones",
                U"ante", U"antes", U"ancia", U"ancias", U"logía", U"logías", U"ución",
                U"uciones", U"encia", U"encias", U"amente", U"mente", U"idad", U"idades", U"iva", U"ivo",
                U"ivas", U"ivos"});
        if (s.empty())
            return false;
        const std::size_t at = start_of(s);
        const auto r2_delete_trailing = [&](Suffix t) {
            if (ends_with(w, t) && start_of(t) >= p2)
                w.resize(start_of(t));
        };

        if (in(s, {U"anza", U"anzas", U"ico", U"ica", U"icos", U"icas", U"ismo", U"ismos", U"able", U"ables",
                   U"ible", U"ibles", U"ista", U"istas", U"oso", U"osa", U"osos", U"osas", U"amiento",
                   U"amientos", U"imiento", U"imientos"})) {
            if (at < p2)
                return false;
            w.resize(at);
        } else if (in(s, {U"adora", U"ador", U"ación", U"adoras", U"adores", U"aciones", U"ante", U"antes",
                          U"ancia", U"ancias"})) {
            if (at < p2)
                return false;
            w.resize(at);
            r2_delete_trailing(U"ic");
        } else if (in(s, {U"logía", U"logías"})) {
            if (at < p2)
                return false;
            replace_suffix(w, s.size(), U"log");
        } else if (in(s, {U"ución", U"uciones"})) {
            if (at < p2)
                return false;
            replace_suffix(w, s.size(), U"u");
        } else if (in(s, {U"encia", U"encias"})) {
            if (at < p2)
                return false;
            replace_suffix(w, s.size(), U"ente");
        } else if (s == U"amente") {
            if (at < p1)
                return false;
            w.resize(at);
            Suffix t = longest_suffix(w, {U"iv", U"os", U"ic", U"ad"});
            if (!t.empty() && start_of(t) >= p2) {
                w.resize(start_of(t));
                if (t == U"iv")
                    r2_delete_trailing(U"at");
            }
        } else if (s == U"mente") {
            if (at < p2)
                return false;
            w.resize(at);
            Suffix t = longest_suffix(w, {U"ante", U"able", U"ible"});
            if (!t.empty() && start_of(t) >= p2)
                w.resize(start_of(t));
        } else if (in(s, {U"idad", U"idades"})) {
            if (at < p2)
                return false;
            w.resize(at);
            Suffix t = longest_suffix(w, {U"abil", U"ic", U"iv"});
            if (!t.empty() && start_of(t) >= p2)
                w.resize(start_of(t));
        } else {
            // iva ivo ivas ivos
            if (at < p2)
                return false;
            w.resize(at);
            r2_delete_trailing(U"at");
        }
        return true;
    };

    const auto y_verb_suffix = [&]() -> bool {
        Suffix s = longest_suffix(w, {U"ya", U"ye", U"yan", U"yen", U"yeron", U"yendo", U"yo", U"yó", U"yas",
                                      U"yes", U"yais", U"yamos"},
                                  pV);
        if (s.empty())
            return false;
        const std::size_t at = start_of(s);
        if (at == 0 || w[at - 1] != U'u')
            return false;
        w.resize(at);
        return true;
    };

    const auto verb_suffix = [&]() -> bool {
        Suffix s = longest_suffix(
            w,
            {U"en", U"es", U"éis", U"emos",
             U"arían", U"arías", U"arán", U"arás", U"aríais", U"aría", U"aréis",
             U"aríamos", U"aremos", U"ará", U"aré",
             U"erían", U"erías", U"erán", U"erás", U"eríais", U"ería", U"eréis",
             U"eríamos", U"eremos", U"erá", U"eré",
             U"irían", U"irías", U"irán", U"irás", U"iríais", U"iría", U"iréis",
             U"iríamos", U"iremos", U"irá", U"iré",
             U"aba", U"ada", U"ida", U"ía", U"ara", U"iera", U"ad", U"ed", U"id", U"ase", U"iese", U"aste",
             U"iste", U"an", U"aban", U"ían", U"aran", U"ieran", U"asen", U"iesen", U"aron", U"ieron", U"ado",
             U"ido", U"ando", U"iendo", U"ió", U"ar", U"er", U"ir", U"as", U"abas", U"adas", U"idas",
             U"ías", U"aras", U"ieras", U"ases", U"ieses", U"ís", U"áis", U"abais", U"íais",
             U"arais", U"ierais", U"aseis", U"ieseis", U"asteis", U"isteis", U"ados", U"idos", U"amos",
             U"ábamos", U"íamos", U"imos", U"áramos", U"iéramos", U"iésemos",
             U"ásemos"},
            pV);
        if (s.empty())
            return false;
        std::size_t at = start_of(s);
        if (in(s, {U"en", U"es", U"éis", U"emos"}) && at >= 2 && w[at - 1] == U'u' && w[at - 2] == U'g')
            --at;
        w.resize(at);
        return true;
    };

    if (!standard_suffix() && !y_verb_suffix())
        verb_suffix();

    // Residual suffix.
    if (Suffix s = longest_suffix(w, {U"os", U"a", U"o", U"á", U"í", U"ó", U"e", U"é"});
        !s.empty() && start_of(s) >= pV) {
        w.resize(start_of(s));
        if ((s == U"e" || s == U"é") && ends_with(w, U"gu") && w.size() - 1 >= pV)
            w.pop_back();
    }

    for (auto& c : w) {
        switch (c) {
        case U'á': c = U'a'; break;
        case U'é': c = U'e'; break;
        case U'í': c = U'i'; break;
        case U'ó': c = U'o'; break;
        case U'ú': c = U'u'; break;
        default: break;
        }
    }
    return w;
}

inline std::u32string english(std::u32string w)
{
    using namespace detail;

    // Exceptional forms matched against the whole word.
    static constexpr std::pair<Suffix, Suffix> exceptions[] = {
        {U"skis", U"ski"},       {U"skies", U"sky"},   {U"idly", U"idl"},     {U"gently", U"gentl"},
        {U"ugly", U"ugli"},      {U"early", U"earli"}, {U"only", U"onli"},    {U"singly", U"singl"},
        {U"sky", U"sky"},        {U"news", U"news"},   {U"howe", U"howe"},    {U"atlas", U"atlas"},
        {U"cosmos", U"cosmos"},  {U"bias", U"bias"},   {U"andes", U"andes"},
    };
    for (const auto& [from, to] : exceptions) {
        if (w == from)
            return std::u32string(to);
    }
    if (w.size() < 3)
        return w;

    // Y marks a consonantal y.
    constexpr char32_t Y = U'Y';
    const auto is_v = [](char32_t c) {
        return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y';
    };

    if (w.front() == U'\'')
        w.erase(w.begin());
    bool y_found = false;
    if (!w.empty() && w.front() == U'y') {
        w.front() = Y;
        y_found = true;
    }
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i] == U'y' && is_v(w[i - 1])) {
            w[i] = Y;
            y_found = true;
        }
    }

    const std::size_t n = w.size();
    std::size_t p1 = n;
    std::size_t p2 = n;
    const auto gopast = [&](std::size_t from, bool vowel) -> std::size_t {
        for (std::size_t i = from; i < w.size(); ++i) {
            if (is_v(w[i]) == vowel)
                return i + 1;
        }
        return std::u32string::npos;
    };
    {
        std::size_t mark = std::u32string::npos;
        for (Suffix prefix : {U"arsen", U"commun", U"emerg", U"gener", U"inter", U"later", U"organ", U"past",
                              U"univers"}) {
            if (std::u32string_view(w).substr(0, prefix.size()) == prefix) {
                mark = prefix.size();
                break;
            }
        }
        if (mark == std::u32string::npos) {
            if (auto a = gopast(0, true); a != std::u32string::npos)
                mark = gopast(a, false);
        }
        if (mark != std::u32string::npos) {
            p1 = mark;
            if (auto c = gopast(p1, true); c != std::u32string::npos) {
                if (auto d = gopast(c, false); d != std::u32string::npos)
                    p2 = d;
            }
        }
    }

    const auto start_of = [&](Suffix s) { return w.size() - s.size(); };
    // Short syllable ending at `end` (exclusive); a trailing "past" also counts.
    const auto short_syllable_at = [&](std::size_t end) {
        if (end >= 3) {
            char32_t a = w[end - 3];
            char32_t b = w[end - 2];
            char32_t c = w[end - 1];
            if (!is_v(c) && c != U'w' && c != U'x' && c != Y && is_v(b) && !is_v(a))
                return true;
        }
        if (end == 2 && is_v(w[0]) && !is_v(w[1]))
            return true;
        return end >= 4 && std::u32string_view(w).substr(end - 4, 4) == U"past";
    };

    // Step 1a
    if (Suffix s = longest_suffix(w, {U"'", U"'s", U"'s'"}); !s.empty())
        w.resize(start_of(s));
    if (Suffix s = longest_suffix(w, {U"sses", U"ied", U"ies", U"s", U"us", U"ss"}); !s.empty()) {
        const std::size_t at = start_of(s);
        if (s == U"sses") {
            replace_suffix(w, s.size(), U"ss");
        } else if (s == U"ied" || s == U"ies") {
            replace_suffix(w, s.size(), at > 1 ? U"i" : U"ie");
        } else if (s == U"s") {
            if (at >= 2 && std::any_of(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at - 1), is_v))
                w.pop_back();
        }
    }

    // Step 1b
    if (Suffix s = longest_suffix(w, {U"eed", U"eedly", U"ed", U"edly", U"ing", U"ingly"}); !s.empty()) {
        const std::size_t at = start_of(s);
        const std::u32string_view head = std::u32string_view(w).substr(0, at);
        bool strip = true;
        if (s == U"eed" || s == U"eedly") {
            strip = false;
            if (at >= p1 && head != U"succ" && head != U"proc" && head != U"exc")
                replace_suffix(w, s.size(), U"ee");
        } else if (s == U"ing") {
            if (head.size() == 2 && head[1] == U'y' && !is_v(head[0])) {
                // dying -> die
                strip = false;
                w.resize(1);
                w += U"ie";
            } else if (head == U"even" || head == U"cann" || head == U"inn" || head == U"earr" ||
                       head == U"herr" || head == U"out") {
                strip = false;
            }
        }
        if (strip && std::any_of(head.begin(), head.end(), is_v)) {
            w.resize(at);
            if (ends_with(w, U"at") || ends_with(w, U"bl") || ends_with(w, U"iz")) {
                w.push_back(U'e');
            } else if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
                       std::u32string_view(U"bdfgmnprt").find(w.back()) != std::u32string_view::npos) {
                // A double after a word-initial a/e/o stays (add, ebb, odd).
                const bool keep = w.size() == 3 && std::u32string_view(U"aeo").find(w[0]) != std::u32string_view::npos;
                if (!keep)
                    w.pop_back();
            } else if (p1 == w.size() && short_syllable_at(w.size())) {
                w.push_back(U'e');
            }
        }
    }

    // Step 1c
    if (w.size() > 2 && (w.back() == U'y' || w.back() == Y) && !is_v(w[w.size() - 2]))
        w.back() = U'i';

    // Step 2
    if (Suffix s = longest_suffix(w, {U"tional", U"enci", U"anci", U"abli", U"entli", U"izer", U"ization",
                                      U"ational", U"ation", U"ator", U"alism", U"aliti", U"alli", U"fulness",
                                      U"ousli", U"ousness", U"iveness", U"iviti", U"biliti", U"bli", U"ogi",
                                      U"ogist", U"fulli", U"lessli", U"li"});
        !s.empty() && start_of(s) >= p1) {
        const std::size_t at = start_of(s);
        if (s == U"tional") replace_suffix(w, s.size(), U"tion");
        else if (s == U"enci") replace_suffix(w, s.size(), U"ence");
        else if (s == U"anci") replace_suffix(w, s.size(), U"ance");
        else if (s == U"abli") replace_suffix(w, s.size(), U"able");
        else if (s == U"entli") replace_suffix(w, s.size(), U"ent");
        else if (in(s, {U"izer", U"ization"})) replace_suffix(w, s.size(), U"ize");
        else if (in(s, {U"ational", U"ation", U"ator"})) replace_suffix(w, s.size(), U"ate");
        else if (in(s, {U"alism", U"aliti", U"alli"})) replace_suffix(w, s.size(), U"al");
        else if (s == U"fulness") replace_suffix(w, s.size(), U"ful");
        else if (in(s, {U"ousli", U"ousness"})) replace_suffix(w, s.size(), U"ous");
        else if (in(s, {U"iveness", U"iviti"})) replace_suffix(w, s.size(), U"ive");
        else if (in(s, {U"biliti", U"bli"})) replace_suffix(w, s.size(), U"ble");
        else if (s == U"ogist") replace_suffix(w, s.size(), U"og");
        else if (s == U"ogi") {
            if (at >= 1 && w[at - 1] == U'l')
                replace_suffix(w, s.size(), U"og");
        } else if (s == U"fulli") replace_suffix(w, s.size(), U"ful");
        else if (s == U"lessli") replace_suffix(w, s.size(), U"less");
        else if (s == U"li") {
            if (at >= 1 && std::u32string_view(U"cdeghkmnrt").find(w[at - 1]) != std::u32string_view::npos)
                w.resize(at);
        }
    }

    // Step 3
    if (Suffix s = longest_suffix(w, {U"tional", U"ational", U"alize", U"icate", U"iciti", U"ical", U"ful",
                                      U"ness", U"ative"});
        !s.empty() && start_of(s) >= p1) {
        const std::size_t at = start_of(s);
        if (s == U"tional") replace_suffix(w, s.size(), U"tion");
        else if (s == U"ational") replace_suffix(w, s.size(), U"ate");
        else if (s == U"alize") replace_suffix(w, s.size(), U"al");
        else if (in(s, {U"icate", U"iciti", U"ical"})) replace_suffix(w, s.size(), U"ic");
        else if (in(s, {U"ful", U"ness"})) w.resize(at);
        else if (at >= p2) w.resize(at);
    }

    // Step 4
    if (Suffix s = longest_suffix(w, {U"al", U"ance", U"ence", U"er", U"ic", U"able", U"ible", U"ant", U"ement",
                                      U"ment", U"ent", U"ism", U"ate", U"iti", U"ous", U"ive", U"ize", U"ion"});
        !s.empty() && start_of(s) >= p2) {
        const std::size_t at = start_of(s);
        if (s != U"ion")
            w.resize(at);
        else if (at >= 1 && (w[at - 1] == U's' || w[at - 1] == U't'))
            w.resize(at);
    }

    // Step 5
    if (!w.empty() && w.back() == U'e') {
        const std::size_t at = w.size() - 1;
        if (at >= p2 || (at >= p1 && !short_syllable_at(at)))
            w.pop_back();
    } else if (!w.empty() && w.back() == U'l') {
        const std::size_t at = w.size() - 1;
        if (at >= p2 && at >= 1 && w[at - 1] == U'l')
            w.pop_back();
    }

    if (y_found) {
        for (auto& c : w) {
            if (c == Y)
                c = U'y';
        }
    }
    return w;
}

} // namespace decide::stem
