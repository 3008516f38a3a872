#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discourse/graph.hpp"
#include "discourse/ingest.hpp"

namespace discourse {

struct RankedNode {
    std::string node;
    double score = 0.0;
};

/// Ordered ranking, non-increasing in score. Ties are broken by higher
/// unweighted out-degree, then lexicographically smaller node id; where no
/// graph is involved, by node id alone.
struct Ranking {
    std::vector<RankedNode> entries;
    std::string method;
};

struct VoteRankOptions {
    /// Voting-ability suppression per election, applied to the elected node's
    /// voters. Defaults to 1/<k> with <k> the mean unweighted out-degree.
    /// delta == 0 turns suppression off entirely (abilities stay at 1), which
    /// reduces the election to a plain weighted-out-degree ordering.
    std::optional<double> delta;
};

/// Full election state, exposed for diagnostics.
struct VoteRankState {
    std::vector<double> ability;  // final per-node voting ability, in [0,1]
    std::vector<std::pair<std::uint32_t, double>> elected;  // (node, score at election)
    std::vector<bool> excluded;
    double min_ability_seen = 1.0;  // across all rounds
};

/// Elects r spreaders one by one. Each round scores every unelected node u as
/// sum over out-edges u->v of w(u,v) * ability(v), elects the maximum, zeroes
/// the winner's ability and suppresses each of its voters' abilities by delta
/// (floored at zero).
/// Errors: r == 0, r > node count, or an empty graph.
Ranking vote_rank(const SimpleDigraph& g, std::size_t r, const VoteRankOptions& options = {});
VoteRankState vote_rank_state(const SimpleDigraph& g, std::size_t r,
                              const VoteRankOptions& options = {});

enum class DegreeMode { in, out };

Ranking degree_rank(const SimpleDigraph& g, DegreeMode mode, bool weighted, std::size_t r);

/// Unnormalized directed betweenness on the unweighted skeleton (hop-count
/// shortest paths), endpoints excluded. Brandes accumulation. Indexed by node.
std::vector<double> betweenness(const SimpleDigraph& g);

/// Harmonic closeness on outgoing hop distances: C(u) = sum over v != u of
/// 1/d(u,v), unreachable terms contributing zero. Indexed by node.
std::vector<double> closeness(const SimpleDigraph& g);

/// Users ranked by total hashtag occurrences they authored. Ties by user id.
Ranking rank_active_users(std::span<const TweetRecord> records, std::size_t n);

}  // namespace discourse
