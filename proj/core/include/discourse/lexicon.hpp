#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "discourse/ingest.hpp"

namespace discourse {

/// A named dictionary of normalized tokens (discourse dictionary, stop-word
/// list). Immutable after load.
struct Lexicon {
    std::string name;
    std::unordered_set<std::string> entries;

    bool contains(std::string_view token) const {
        return entries.count(std::string(token)) > 0;
    }
};

struct PolarityLexicon {
    std::unordered_set<std::string> positive;
    std::unordered_set<std::string> negative;
};

/// Per-lexicon occurrence counts, positionally aligned with the lexicon list
/// handed to classify_tokens.
using DiscourseCounts = std::vector<std::uint64_t>;

enum class Polarity { positive, negative, neutral };

std::string_view to_string(Polarity p);

struct Tonality {
    std::uint64_t positive_count = 0;
    std::uint64_t negative_count = 0;
    std::uint64_t neutral_count = 0;

    /// positive iff positive_count > negative_count, negative iff the
    /// reverse, neutral on ties.
    Polarity label() const {
        if (positive_count > negative_count) return Polarity::positive;
        if (negative_count > positive_count) return Polarity::negative;
        return Polarity::neutral;
    }

    bool operator==(const Tonality&) const = default;
};

/// Loads a one-token-per-line UTF-8 lexicon. Blank lines and lines starting
/// with '%' are ignored; entries are normalized and deduplicated.
/// Errors: missing file (ConfigError), empty after filtering (DataError).
Lexicon load_lexicon(const std::filesystem::path& path, std::string name);

/// TSV `token<TAB>pos|neg`, '%' comments. A token in both classes is a
/// DataError (the classes must be disjoint).
PolarityLexicon load_polarity_lexicon(const std::filesystem::path& path);

/// The form a token is matched in: leading '#' stripped, '_' mapped to ZWNJ.
/// Plain words pass through unchanged.
std::string canonical_match_token(std::string_view token);

/// Occurrence counts (with multiplicity) of tokens whose canonical form is in
/// each lexicon. A token present in several lexicons increments each.
DiscourseCounts classify_tokens(const TokenStream& tokens, std::span<const Lexicon> lexicons);

/// argmax lexicon name by count over the post's text tokens; "none" when all
/// counts are zero or the maximum is tied.
std::string classify_post(const TweetRecord& record, std::span<const Lexicon> lexicons);

Tonality polarity_score(const TokenStream& tokens, const PolarityLexicon& polarity);

/// Corpus token frequencies, stop-words and bare-punctuation tokens excluded;
/// descending by count, ties by codepoint (byte) order of the token.
std::vector<std::pair<std::string, std::uint64_t>> word_frequencies(
    std::span<const TweetRecord> records, const Lexicon& stopwords);

}  // namespace discourse
