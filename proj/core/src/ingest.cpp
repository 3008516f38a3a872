#include "discourse/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "discourse/errors.hpp"
#include "discourse/unicode.hpp"

namespace discourse {

namespace {

using uni::kZwnj;

constexpr char32_t kArabicYeh = U'ي';
constexpr char32_t kPersianYeh = U'ی';
constexpr char32_t kArabicKaf = U'ك';
constexpr char32_t kPersianKaf = U'ک';
constexpr char32_t kTatweel = U'ـ';

bool is_arabic_diacritic(char32_t cp) { return cp >= 0x064B && cp <= 0x0652; }

bool is_token_delimiter(char32_t cp) {
    if (cp == U'#' || cp == U'_' || cp == kZwnj) return false;
    return uni::is_whitespace(cp) || uni::is_punctuation(cp);
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    std::u32string cps = uni::decode_utf8(raw);
    std::u32string mapped;
    mapped.reserve(cps.size());
    for (char32_t cp : cps) {
        if (cp == kTatweel || is_arabic_diacritic(cp)) continue;
        if (cp == kArabicYeh)
            mapped.push_back(kPersianYeh);
        else if (cp == kArabicKaf)
            mapped.push_back(kPersianKaf);
        else
            mapped.push_back(cp);
    }
    return uni::nfc(uni::encode_utf8(mapped));
}

TokenStream tokenize(std::string_view normalized_text) {
    TokenStream out;
    std::u32string cps = uni::decode_utf8(normalized_text);
    std::u32string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.tokens.push_back(uni::encode_utf8(cur));
            cur.clear();
        }
    };
    for (char32_t cp : cps) {
        if (is_token_delimiter(cp)) {
            flush();
            continue;
        }
        if (cp >= U'A' && cp <= U'Z') cp = cp - U'A' + U'a';
        cur.push_back(cp);
    }
    flush();
    return out;
}

std::vector<std::string> extract_hashtags(const TokenStream& tokens) {
    std::vector<std::string> out;
    for (const std::string& token : tokens.tokens) {
        if (token.empty() || token[0] != '#') continue;
        // every '#' goes ('#' binds inside tokens, so interior ones happen)
        std::u32string tag;
        for (char32_t cp : uni::decode_utf8(token)) {
            if (cp == U'#') continue;
            tag.push_back(cp == U'_' ? kZwnj : cp);
        }
        if (tag.empty()) continue;  // a bare "#" is punctuation, not a hashtag
        out.push_back(uni::encode_utf8(tag));
    }
    return out;
}

// ---------------------------------------------------------------------------
// RFC 3339 timestamps

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (civil calendar).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

}  // namespace

std::optional<std::int64_t> parse_rfc3339(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SS[.frac](Z|±HH:MM)
    unsigned year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    if (s.size() < 20) return std::nullopt;
    if (!parse_fixed_uint(s, 0, 4, year) || s[4] != '-' ||
        !parse_fixed_uint(s, 5, 2, month) || s[7] != '-' ||
        !parse_fixed_uint(s, 8, 2, day))
        return std::nullopt;
    if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
    if (!parse_fixed_uint(s, 11, 2, hour) || s[13] != ':' ||
        !parse_fixed_uint(s, 14, 2, minute) || s[16] != ':' ||
        !parse_fixed_uint(s, 17, 2, second))
        return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) ||
        hour > 23 || minute > 59 || second > 60)
        return std::nullopt;
    if (second == 60) second = 59;  // leap second: clamp

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;

    std::int64_t offset_seconds = 0;
    const char tz = s[pos];
    if (tz == 'Z' || tz == 'z') {
        ++pos;
    } else if (tz == '+' || tz == '-') {
        unsigned oh = 0, om = 0;
        if (!parse_fixed_uint(s, pos + 1, 2, oh)) return std::nullopt;
        if (pos + 3 >= s.size() || s[pos + 3] != ':') return std::nullopt;
        if (!parse_fixed_uint(s, pos + 4, 2, om)) return std::nullopt;
        if (oh > 23 || om > 59) return std::nullopt;
        offset_seconds = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (tz == '-') offset_seconds = -offset_seconds;
        pos += 6;
    } else {
        return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;

    const std::int64_t days = days_from_civil(year, month, day);
    const std::int64_t local = days * 86400 + hour * 3600 + minute * 60 + second;
    return local - offset_seconds;
}

std::string format_rfc3339(std::int64_t utc_seconds) {
    std::int64_t days = utc_seconds / 86400;
    std::int64_t rem = utc_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

// ---------------------------------------------------------------------------
// JSONL parsing

namespace {

using nlohmann::json;

bool has_whitespace(std::string_view token) {
    for (char32_t cp : uni::decode_utf8(token))
        if (uni::is_whitespace(cp)) return true;
    return false;
}

// Canonical hashtag form shared by the explicit-field and extracted paths.
std::string canonical_hashtag(std::string_view normalized) {
    std::u32string tag;
    for (char32_t cp : uni::decode_utf8(normalized)) {
        if (cp == U'#') continue;
        tag.push_back(cp == U'_' ? kZwnj : cp);
    }
    return uni::encode_utf8(tag);
}

TweetRecord parse_one(const std::string& line) {
    json j = json::parse(line);  // throws json::parse_error on bad input
    if (!j.is_object()) throw DataError("line is not a JSON object");

    auto require_string = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end()) throw DataError(std::string("missing field \"") + key + "\"");
        if (!it->is_string()) throw DataError(std::string("field \"") + key + "\" is not a string");
        return it->get<std::string>();
    };

    TweetRecord rec;
    rec.tweet_id = require_string("tweet_id");
    rec.user_id = require_string("user_id");
    if (rec.tweet_id.empty()) throw DataError("empty tweet_id");
    if (rec.user_id.empty()) throw DataError("empty user_id");

    const std::string created_at = require_string("created_at");
    auto ts = parse_rfc3339(created_at);
    if (!ts) throw DataError("created_at is not a valid RFC 3339 timestamp");
    rec.timestamp_utc = *ts;

    rec.text = normalize_text(require_string("text"));

    const bool has_rt_user = j.contains("retweeted_user_id");
    const bool has_rt_tweet = j.contains("retweeted_tweet_id");
    if (has_rt_user != has_rt_tweet)
        throw DataError("retweeted_user_id and retweeted_tweet_id must appear together");
    if (has_rt_user) {
        if (!j["retweeted_user_id"].is_string() || !j["retweeted_tweet_id"].is_string())
            throw DataError("retweet fields must be strings");
        rec.retweet_of_user = j["retweeted_user_id"].get<std::string>();
        rec.retweet_of_tweet = j["retweeted_tweet_id"].get<std::string>();
        if (rec.retweet_of_user->empty() || rec.retweet_of_tweet->empty())
            throw DataError("empty retweet field");
    }

    if (auto it = j.find("hashtags"); it != j.end()) {
        if (!it->is_array()) throw DataError("field \"hashtags\" is not an array");
        for (const auto& h : *it) {
            if (!h.is_string()) throw DataError("hashtag entry is not a string");
            std::string tag = canonical_hashtag(normalize_text(h.get<std::string>()));
            if (tag.empty()) throw DataError("empty hashtag entry");
            if (has_whitespace(tag)) throw DataError("hashtag contains whitespace");
            rec.hashtags.push_back(std::move(tag));
        }
    } else {
        rec.hashtags = extract_hashtags(tokenize(rec.text));
    }
    return rec;
}

struct LineSlot {
    std::string line;
    std::size_t line_number = 0;
};

}  // namespace

ParseResult parse_records(std::istream& in, const ParseOptions& options) {
    std::vector<LineSlot> slots;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;  // blank lines are not records
        slots.push_back({std::move(line), line_number});
    }

    const std::size_t n = slots.size();
    std::vector<std::optional<TweetRecord>> parsed(n);
    std::vector<std::optional<ParseError>> failures(n);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                parsed[i] = parse_one(slots[i].line);
            } catch (const json::parse_error& e) {
                failures[i] = ParseError{slots[i].line_number,
                                         std::string("invalid JSON: ") + e.what()};
            } catch (const DataError& e) {
                failures[i] = ParseError{slots[i].line_number, e.what()};
            }
        }
    };

    unsigned threads = options.threads ? options.threads : 1;
    threads = std::min<unsigned>(threads, std::max<std::size_t>(n / 1024, 1));
    if (threads <= 1 || n < 2) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min<std::size_t>(t * chunk, n);
            const std::size_t end = std::min<std::size_t>(begin + chunk, n);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    ParseResult result;
    result.records.reserve(n);
    std::unordered_set<std::string> seen_ids;
    seen_ids.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i]) {
            if (options.fail_fast)
                throw DataError("line " + std::to_string(failures[i]->line_number) + ": " +
                                failures[i]->message);
            result.errors.push_back(*failures[i]);
            continue;
        }
        TweetRecord& rec = *parsed[i];
        if (!seen_ids.insert(rec.tweet_id).second)
            throw DataError("duplicate tweet_id \"" + rec.tweet_id + "\" at line " +
                            std::to_string(slots[i].line_number));
        result.records.push_back(std::move(rec));
    }
    return result;
}

ParseResult parse_records(std::string_view text, const ParseOptions& options) {
    std::string buf(text);
    std::istringstream in(std::move(buf));
    return parse_records(in, options);
}

std::string serialize_record(const TweetRecord& record) {
    json j;
    j["tweet_id"] = record.tweet_id;
    j["user_id"] = record.user_id;
    j["created_at"] = format_rfc3339(record.timestamp_utc);
    j["text"] = record.text;
    j["hashtags"] = record.hashtags;
    if (record.retweet_of_user) {
        j["retweeted_user_id"] = *record.retweet_of_user;
        j["retweeted_tweet_id"] = *record.retweet_of_tweet;
    }
    return j.dump();
}

}  // namespace discourse
