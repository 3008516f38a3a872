#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discourse/ingest.hpp"
#include "discourse/lexicon.hpp"

namespace discourse {

/// Strictly increasing UTC boundaries defining half-open intervals
/// [b_k, b_{k+1}). boundaries.size() >= 2.
struct EpisodeSchedule {
    std::vector<std::int64_t> boundaries;

    int episode_count() const { return static_cast<int>(boundaries.size()) - 1; }

    /// Episode index k with b_k <= t < b_{k+1}, or nullopt outside the span.
    std::optional<int> assign(std::int64_t t) const;

    /// `episodes` equal intervals over [start, end) with integer boundaries.
    static EpisodeSchedule uniform(std::int64_t start, std::int64_t end, int episodes);

    /// JSON array of RFC 3339 instants.
    static EpisodeSchedule from_json_file(const std::filesystem::path& path);

    /// Eight equal intervals over 2020-01-25T00:00:00Z .. 2020-05-15T00:00:00Z.
    static EpisodeSchedule default_schedule();
};

std::optional<int> assign_episode(std::int64_t t, const EpisodeSchedule& schedule);

struct UserEpisodeProfile {
    std::string user;
    int episode = 0;
    DiscourseCounts discourse_counts;  // aligned with the configured lexicons
    Tonality tonality;
    std::uint64_t post_count = 0;
    std::uint64_t hashtag_count = 0;
};

/// One profile per (user, episode) with at least one post, ordered by
/// (user, episode). Discourse counts are summed over the user's posts in the
/// episode; tonality is scored over the concatenation of all their tokens.
std::vector<UserEpisodeProfile> build_profiles(std::span<const TweetRecord> records,
                                               std::span<const Lexicon> lexicons,
                                               const PolarityLexicon& polarity,
                                               const EpisodeSchedule& schedule);

/// Per-episode discourse totals for a user cohort: one series per user plus
/// the cohort aggregate. Missing (user, episode) pairs contribute zero.
struct EvolutionSeries {
    std::vector<std::string> users;          // cohort, order preserved
    std::vector<std::string> lexicon_names;
    int episodes = 0;
    // per_user_counts[u][e] aligned with lexicon_names; posts for the
    // optional per-episode normalization.
    std::vector<std::vector<DiscourseCounts>> per_user_counts;
    std::vector<std::vector<std::uint64_t>> per_user_posts;
    std::vector<DiscourseCounts> aggregate_counts;  // [e]
    std::vector<std::uint64_t> aggregate_posts;
};

EvolutionSeries discourse_evolution(std::span<const UserEpisodeProfile> profiles,
                                    std::span<const std::string> users,
                                    std::span<const std::string> lexicon_names,
                                    int episode_count);

/// One point per cohort user: totals of the two configured discourse
/// lexicons over all episodes plus the user's overall tonality label.
/// DataError unless exactly two lexicons are configured.
struct ScatterPoint {
    std::string user;
    std::uint64_t first_count = 0;
    std::uint64_t second_count = 0;
    Polarity tonality = Polarity::neutral;
};

std::vector<ScatterPoint> activity_scatter(std::span<const UserEpisodeProfile> profiles,
                                           std::span<const std::string> users);

}  // namespace discourse
