#include "discourse/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "discourse/errors.hpp"
#include "discourse/unicode.hpp"

namespace discourse {

std::string_view to_string(Polarity p) {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::neutral: return "neutral";
    }
    return "neutral";
}

namespace {

std::string strip_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

bool is_comment_or_blank(const std::string& line) {
    return line.empty() || line[0] == '%';
}

}  // namespace

Lexicon load_lexicon(const std::filesystem::path& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path.string());
    Lexicon lex;
    lex.name = std::move(name);
    std::string line;
    while (std::getline(in, line)) {
        line = strip_line(std::move(line));
        if (is_comment_or_blank(line)) continue;
        std::string entry = normalize_text(line);
        if (entry.empty()) continue;
        lex.entries.insert(std::move(entry));
    }
    if (lex.entries.empty())
        throw DataError("lexicon \"" + lex.name + "\" is empty after filtering: " + path.string());
    return lex;
}

PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open polarity lexicon: " + path.string());
    PolarityLexicon lex;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        line = strip_line(std::move(line));
        if (is_comment_or_blank(line)) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("polarity line " + std::to_string(line_number) +
                            " has no tab separator");
        std::string token = normalize_text(line.substr(0, tab));
        const std::string cls = line.substr(tab + 1);
        if (token.empty())
            throw DataError("polarity line " + std::to_string(line_number) + " has empty token");
        if (cls == "pos") {
            lex.positive.insert(std::move(token));
        } else if (cls == "neg") {
            lex.negative.insert(std::move(token));
        } else {
            throw DataError("polarity line " + std::to_string(line_number) +
                            " has unknown class \"" + cls + "\"");
        }
    }
    for (const auto& token : lex.positive)
        if (lex.negative.count(token))
            throw DataError("token \"" + token + "\" appears in both polarity classes");
    if (lex.positive.empty() && lex.negative.empty())
        throw DataError("polarity lexicon is empty: " + path.string());
    return lex;
}

std::string canonical_match_token(std::string_view token) {
    const bool is_hashtag = !token.empty() && token[0] == '#';
    if (!is_hashtag) return std::string(token);
    std::u32string mapped;
    for (char32_t cp : uni::decode_utf8(token)) {
        if (cp == U'#') continue;
        mapped.push_back(cp == U'_' ? uni::kZwnj : cp);
    }
    return uni::encode_utf8(mapped);
}

DiscourseCounts classify_tokens(const TokenStream& tokens, std::span<const Lexicon> lexicons) {
    DiscourseCounts counts(lexicons.size(), 0);
    for (const std::string& token : tokens.tokens) {
        const std::string canon = canonical_match_token(token);
        for (std::size_t i = 0; i < lexicons.size(); ++i)
            if (lexicons[i].entries.count(canon)) ++counts[i];
    }
    return counts;
}

std::string classify_post(const TweetRecord& record, std::span<const Lexicon> lexicons) {
    const DiscourseCounts counts = classify_tokens(tokenize(record.text), lexicons);
    std::uint64_t best = 0;
    std::size_t best_index = 0;
    bool tied = true;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > best) {
            best = counts[i];
            best_index = i;
            tied = false;
        } else if (counts[i] == best && best > 0) {
            tied = true;
        }
    }
    if (best == 0 || tied) return "none";
    return lexicons[best_index].name;
}

Tonality polarity_score(const TokenStream& tokens, const PolarityLexicon& polarity) {
    Tonality t;
    for (const std::string& token : tokens.tokens) {
        const std::string canon = canonical_match_token(token);
        if (polarity.positive.count(canon))
            ++t.positive_count;
        else if (polarity.negative.count(canon))
            ++t.negative_count;
        else
            ++t.neutral_count;
    }
    return t;
}

namespace {

// A token is bare punctuation when every codepoint is punctuation, '#', '_'
// or ZWNJ. (The tokenizer already splits on everything else.)
bool is_bare_punctuation(std::string_view token) {
    std::u32string cps = uni::decode_utf8(token);
    if (cps.empty()) return true;
    for (char32_t cp : cps) {
        if (cp == U'#' || cp == U'_' || cp == uni::kZwnj) continue;
        if (!uni::is_punctuation(cp)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::pair<std::string, std::uint64_t>> word_frequencies(
    std::span<const TweetRecord> records, const Lexicon& stopwords) {
    // std::map gives codepoint (byte) order for free; ties resolved below.
    std::map<std::string, std::uint64_t> counts;
    for (const TweetRecord& record : records) {
        for (const std::string& token : tokenize(record.text).tokens) {
            if (is_bare_punctuation(token)) continue;
            const std::string canon = canonical_match_token(token);
            if (stopwords.entries.count(canon)) continue;
            ++counts[canon];
        }
    }
    std::vector<std::pair<std::string, std::uint64_t>> out(counts.begin(), counts.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

}  // namespace discourse
