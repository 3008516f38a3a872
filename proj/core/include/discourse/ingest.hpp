#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace discourse {

/// One normalized post event. Immutable after parsing; safe to share across
/// threads for reading.
struct TweetRecord {
    std::string tweet_id;
    std::string user_id;
    std::int64_t timestamp_utc = 0;  // seconds since the Unix epoch, UTC
    std::string text;                // already passed through normalize_text
    std::vector<std::string> hashtags;  // '#'-stripped, '_' mapped to ZWNJ
    std::optional<std::string> retweet_of_user;
    std::optional<std::string> retweet_of_tweet;

    bool is_retweet() const { return retweet_of_user.has_value(); }

    bool operator==(const TweetRecord&) const = default;
};

struct TokenStream {
    std::vector<std::string> tokens;

    bool operator==(const TokenStream&) const = default;
};

/// Canonicalizes Persian/Arabic text so lexicon matching is deterministic:
/// Arabic yeh U+064A -> Persian yeh U+06CC, Arabic kaf U+0643 -> Persian kaf
/// U+06A9, tatweel U+0640 dropped, Arabic diacritics U+064B..U+0652 dropped,
/// then Unicode NFC. ZWNJ survives. Idempotent.
std::string normalize_text(std::string_view raw);

/// Splits normalized text on Unicode whitespace and punctuation. '#', '_' and
/// ZWNJ bind inside tokens; Latin letters are lowercased. '#'-initial tokens
/// are hashtags.
TokenStream tokenize(std::string_view normalized_text);

/// '#'-initial tokens, stripped of leading '#', with '_' mapped to ZWNJ.
/// Order preserved, duplicates kept.
std::vector<std::string> extract_hashtags(const TokenStream& tokens);

struct ParseError {
    std::size_t line_number = 0;  // 1-based
    std::string message;
};

struct ParseOptions {
    bool fail_fast = false;  // throw on the first malformed line instead of skipping
    unsigned threads = 1;    // records are independent; output order is stream order
};

struct ParseResult {
    std::vector<TweetRecord> records;
    std::vector<ParseError> errors;  // skipped lines when fail_fast is off
};

/// Parses a JSON Lines tweet stream. Required fields: tweet_id, user_id,
/// created_at (RFC 3339), text. Optional: hashtags, retweeted_user_id,
/// retweeted_tweet_id (the latter two must appear together).
/// Malformed lines are skipped and reported unless fail_fast is set (then
/// DataError). A duplicate tweet_id is a dataset-level DataError.
ParseResult parse_records(std::istream& in, const ParseOptions& options = {});
ParseResult parse_records(std::string_view text, const ParseOptions& options = {});

/// One JSONL line, inverse of parse_records for valid records.
std::string serialize_record(const TweetRecord& record);

/// RFC 3339 timestamp to UTC seconds (fractional seconds truncated).
std::optional<std::int64_t> parse_rfc3339(std::string_view s);
std::string format_rfc3339(std::int64_t utc_seconds);

}  // namespace discourse
