#include "discourse/profiles.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "discourse/errors.hpp"

namespace discourse {

std::optional<int> EpisodeSchedule::assign(std::int64_t t) const {
    if (boundaries.size() < 2 || t < boundaries.front() || t >= boundaries.back())
        return std::nullopt;
    const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), t);
    return static_cast<int>(it - boundaries.begin()) - 1;
}

EpisodeSchedule EpisodeSchedule::uniform(std::int64_t start, std::int64_t end, int episodes) {
    if (episodes < 1) throw ConfigError("schedule needs at least one episode");
    if (end - start < episodes) throw ConfigError("schedule span shorter than episode count");
    EpisodeSchedule s;
    s.boundaries.reserve(episodes + 1);
    const std::int64_t span = end - start;
    for (int k = 0; k <= episodes; ++k)
        s.boundaries.push_back(start + span * k / episodes);
    return s;
}

EpisodeSchedule EpisodeSchedule::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open schedule file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("schedule file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_array() || j.size() < 2)
        throw ConfigError("schedule must be a JSON array of at least two instants");
    EpisodeSchedule s;
    for (const auto& item : j) {
        if (!item.is_string()) throw ConfigError("schedule entries must be RFC 3339 strings");
        auto t = parse_rfc3339(item.get<std::string>());
        if (!t) throw ConfigError("bad schedule instant: " + item.get<std::string>());
        s.boundaries.push_back(*t);
    }
    for (std::size_t i = 1; i < s.boundaries.size(); ++i)
        if (s.boundaries[i] <= s.boundaries[i - 1])
            throw ConfigError("schedule boundaries must be strictly increasing");
    return s;
}

EpisodeSchedule EpisodeSchedule::default_schedule() {
    const std::int64_t start = *parse_rfc3339("2020-01-25T00:00:00Z");
    const std::int64_t end = *parse_rfc3339("2020-05-15T00:00:00Z");
    return uniform(start, end, 8);
}

std::optional<int> assign_episode(std::int64_t t, const EpisodeSchedule& schedule) {
    return schedule.assign(t);
}

std::vector<UserEpisodeProfile> build_profiles(std::span<const TweetRecord> records,
                                               std::span<const Lexicon> lexicons,
                                               const PolarityLexicon& polarity,
                                               const EpisodeSchedule& schedule) {
    std::map<std::pair<std::string, int>, UserEpisodeProfile> grouped;
    for (const TweetRecord& record : records) {
        const auto episode = schedule.assign(record.timestamp_utc);
        if (!episode) continue;
        auto key = std::make_pair(record.user_id, *episode);
        auto [it, inserted] = grouped.try_emplace(std::move(key));
        UserEpisodeProfile& profile = it->second;
        if (inserted) {
            profile.user = record.user_id;
            profile.episode = *episode;
            profile.discourse_counts.assign(lexicons.size(), 0);
        }
        const TokenStream tokens = tokenize(record.text);
        const DiscourseCounts counts = classify_tokens(tokens, lexicons);
        for (std::size_t i = 0; i < counts.size(); ++i) profile.discourse_counts[i] += counts[i];
        const Tonality t = polarity_score(tokens, polarity);
        profile.tonality.positive_count += t.positive_count;
        profile.tonality.negative_count += t.negative_count;
        profile.tonality.neutral_count += t.neutral_count;
        profile.post_count += 1;
        profile.hashtag_count += record.hashtags.size();
    }
    std::vector<UserEpisodeProfile> out;
    out.reserve(grouped.size());
    for (auto& [key, profile] : grouped) out.push_back(std::move(profile));
    return out;
}

EvolutionSeries discourse_evolution(std::span<const UserEpisodeProfile> profiles,
                                    std::span<const std::string> users,
                                    std::span<const std::string> lexicon_names,
                                    int episode_count) {
    if (users.empty()) throw DataError("discourse_evolution requires a nonempty user cohort");
    EvolutionSeries series;
    series.users.assign(users.begin(), users.end());
    series.lexicon_names.assign(lexicon_names.begin(), lexicon_names.end());
    series.episodes = episode_count;
    const std::size_t d = lexicon_names.size();
    series.per_user_counts.assign(users.size(),
                                  std::vector<DiscourseCounts>(episode_count, DiscourseCounts(d, 0)));
    series.per_user_posts.assign(users.size(), std::vector<std::uint64_t>(episode_count, 0));
    series.aggregate_counts.assign(episode_count, DiscourseCounts(d, 0));
    series.aggregate_posts.assign(episode_count, 0);

    std::map<std::string_view, std::size_t> user_index;
    for (std::size_t i = 0; i < series.users.size(); ++i) user_index[series.users[i]] = i;

    for (const UserEpisodeProfile& profile : profiles) {
        const auto it = user_index.find(profile.user);
        if (it == user_index.end()) continue;
        if (profile.episode < 0 || profile.episode >= episode_count) continue;
        const std::size_t u = it->second;
        auto& cell = series.per_user_counts[u][profile.episode];
        for (std::size_t i = 0; i < d && i < profile.discourse_counts.size(); ++i) {
            cell[i] += profile.discourse_counts[i];
            series.aggregate_counts[profile.episode][i] += profile.discourse_counts[i];
        }
        series.per_user_posts[u][profile.episode] += profile.post_count;
        series.aggregate_posts[profile.episode] += profile.post_count;
    }
    return series;
}

std::vector<ScatterPoint> activity_scatter(std::span<const UserEpisodeProfile> profiles,
                                           std::span<const std::string> users) {
    if (!profiles.empty() && profiles.front().discourse_counts.size() != 2)
        throw DataError("activity_scatter requires exactly two discourse lexicons");
    std::vector<ScatterPoint> out;
    out.reserve(users.size());
    for (const std::string& user : users) {
        ScatterPoint point;
        point.user = user;
        Tonality tonality;
        for (const UserEpisodeProfile& profile : profiles) {
            if (profile.user != user) continue;
            point.first_count += profile.discourse_counts.at(0);
            point.second_count += profile.discourse_counts.at(1);
            tonality.positive_count += profile.tonality.positive_count;
            tonality.negative_count += profile.tonality.negative_count;
            tonality.neutral_count += profile.tonality.neutral_count;
        }
        point.tonality = tonality.label();
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace discourse
