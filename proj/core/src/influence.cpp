#include "discourse/influence.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "discourse/errors.hpp"

namespace discourse {

namespace {

// Shared tie order: higher unweighted out-degree first, then smaller node id.
bool wins_tie(const SimpleDigraph& g, std::uint32_t challenger, std::uint32_t incumbent) {
    const auto dc = g.out_degree(challenger);
    const auto di = g.out_degree(incumbent);
    if (dc != di) return dc > di;
    return g.node_name(challenger) < g.node_name(incumbent);
}

Ranking take_top(const SimpleDigraph& g, std::vector<std::pair<std::uint32_t, double>> scored,
                 std::size_t r, std::string method) {
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return wins_tie(g, a.first, b.first);
    });
    if (scored.size() > r) scored.resize(r);
    Ranking ranking;
    ranking.method = std::move(method);
    ranking.entries.reserve(scored.size());
    for (const auto& [node, score] : scored)
        ranking.entries.push_back({g.node_name(node), score});
    return ranking;
}

}  // namespace

VoteRankState vote_rank_state(const SimpleDigraph& g, std::size_t r,
                              const VoteRankOptions& options) {
    const std::size_t n = g.node_count();
    if (n == 0) throw DataError("vote_rank on an empty graph");
    if (r == 0 || r > n)
        throw DataError("vote_rank r must be in [1, node count], got " + std::to_string(r));

    double delta;
    if (options.delta) {
        delta = *options.delta;
        if (delta < 0) throw DataError("vote_rank delta must be non-negative");
    } else {
        const double mean_out = g.stats().mean_out_degree;
        delta = mean_out > 0 ? 1.0 / mean_out : 0.0;
    }

    VoteRankState state;
    state.ability.assign(n, 1.0);
    state.excluded.assign(n, false);
    state.elected.reserve(r);

    for (std::size_t round = 0; round < r; ++round) {
        bool have_best = false;
        std::uint32_t best = 0;
        double best_score = 0.0;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (state.excluded[u]) continue;
            const auto targets = g.out_targets(u);
            const auto weights = g.out_weights(u);
            double score = 0.0;
            for (std::size_t i = 0; i < targets.size(); ++i)
                score += static_cast<double>(weights[i]) * state.ability[targets[i]];
            if (!have_best || score > best_score ||
                (score == best_score && wins_tie(g, u, best))) {
                have_best = true;
                best = u;
                best_score = score;
            }
        }
        state.elected.emplace_back(best, best_score);
        state.excluded[best] = true;
        if (delta > 0) {
            state.ability[best] = 0.0;
            for (std::uint32_t v : g.out_targets(best))
                state.ability[v] = std::max(0.0, state.ability[v] - delta);
        }
        for (double a : state.ability) state.min_ability_seen = std::min(state.min_ability_seen, a);
    }
    return state;
}

Ranking vote_rank(const SimpleDigraph& g, std::size_t r, const VoteRankOptions& options) {
    const VoteRankState state = vote_rank_state(g, r, options);
    Ranking ranking;
    ranking.method = "voterank";
    ranking.entries.reserve(state.elected.size());
    for (const auto& [node, score] : state.elected)
        ranking.entries.push_back({g.node_name(node), score});
    return ranking;
}

Ranking degree_rank(const SimpleDigraph& g, DegreeMode mode, bool weighted, std::size_t r) {
    const std::size_t n = g.node_count();
    std::vector<double> score(n, 0.0);
    if (mode == DegreeMode::out) {
        for (std::uint32_t u = 0; u < n; ++u) {
            if (weighted) {
                double s = 0.0;
                for (std::uint64_t w : g.out_weights(u)) s += static_cast<double>(w);
                score[u] = s;
            } else {
                score[u] = static_cast<double>(g.out_degree(u));
            }
        }
    } else {
        for (std::uint32_t u = 0; u < n; ++u) {
            const auto targets = g.out_targets(u);
            const auto weights = g.out_weights(u);
            for (std::size_t i = 0; i < targets.size(); ++i)
                score[targets[i]] += weighted ? static_cast<double>(weights[i]) : 1.0;
        }
    }
    std::vector<std::pair<std::uint32_t, double>> scored;
    scored.reserve(n);
    for (std::uint32_t u = 0; u < n; ++u) scored.emplace_back(u, score[u]);
    std::string method = mode == DegreeMode::out ? "degree_out" : "degree_in";
    if (weighted) method += "_weighted";
    return take_top(g, std::move(scored), std::min(r, n), std::move(method));
}

std::vector<double> betweenness(const SimpleDigraph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> centrality(n, 0.0);

    // Brandes: one BFS per source with dependency back-propagation.
    std::vector<std::int64_t> distance(n);
    std::vector<double> sigma(n), dependency(n);
    std::vector<std::vector<std::uint32_t>> predecessors(n);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    std::deque<std::uint32_t> queue;

    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(distance.begin(), distance.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(dependency.begin(), dependency.end(), 0.0);
        for (auto& preds : predecessors) preds.clear();
        order.clear();
        queue.clear();

        distance[s] = 0;
        sigma[s] = 1.0;
        queue.push_back(s);
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (std::uint32_t w : g.out_targets(v)) {
                if (distance[w] < 0) {
                    distance[w] = distance[v] + 1;
                    queue.push_back(w);
                }
                if (distance[w] == distance[v] + 1) {
                    sigma[w] += sigma[v];
                    predecessors[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::uint32_t w = *it;
            for (std::uint32_t v : predecessors[w])
                dependency[v] += sigma[v] / sigma[w] * (1.0 + dependency[w]);
            if (w != s) centrality[w] += dependency[w];
        }
    }
    return centrality;
}

std::vector<double> closeness(const SimpleDigraph& g) {
    const std::size_t n = g.node_count();
    std::vector<double> harmonic(n, 0.0);
    std::vector<std::int64_t> distance(n);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(distance.begin(), distance.end(), -1);
        queue.clear();
        distance[s] = 0;
        queue.push_back(s);
        double total = 0.0;
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            if (v != s) total += 1.0 / static_cast<double>(distance[v]);
            for (std::uint32_t w : g.out_targets(v)) {
                if (distance[w] < 0) {
                    distance[w] = distance[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        harmonic[s] = total;
    }
    return harmonic;
}

Ranking rank_active_users(std::span<const TweetRecord> records, std::size_t n) {
    // std::map keeps user ids sorted, which is the tie order here.
    std::map<std::string, std::uint64_t> hashtag_counts;
    for (const TweetRecord& record : records)
        hashtag_counts[record.user_id] += record.hashtags.size();

    std::vector<std::pair<std::string, std::uint64_t>> scored(hashtag_counts.begin(),
                                                              hashtag_counts.end());
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (scored.size() > n) scored.resize(n);

    Ranking ranking;
    ranking.method = "active";
    ranking.entries.reserve(scored.size());
    for (auto& [user, count] : scored)
        ranking.entries.push_back({std::move(user), static_cast<double>(count)});
    return ranking;
}

}  // namespace discourse
