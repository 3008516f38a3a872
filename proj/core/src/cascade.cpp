#include "discourse/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "discourse/errors.hpp"
#include "discourse/influence.hpp"
#include "discourse/rng.hpp"

namespace discourse {

namespace {

void validate_config(const CascadeConfig& config) {
    if (!(config.p >= 0.0 && config.p <= 1.0))
        throw DataError("cascade p must be in [0,1]");
    if (config.runs == 0) throw DataError("cascade runs must be >= 1");
}

std::vector<std::uint32_t> resolve_seeds(const SimpleDigraph& g,
                                         const std::vector<std::string>& names) {
    std::vector<std::uint32_t> seeds;
    seeds.reserve(names.size());
    for (const std::string& name : names) {
        const auto id = g.find_node(name);
        if (!id) throw DataError("seed node not in graph: " + name);
        seeds.push_back(*id);
    }
    return seeds;
}

void validate_seeds(const SimpleDigraph& g, std::span<const std::uint32_t> seeds) {
    for (std::uint32_t s : seeds)
        if (s >= g.node_count()) throw DataError("seed node index out of range");
}

// Exact integer moments; summation order cannot affect the result.
struct SpreadMoments {
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    std::uint64_t runs = 0;

    void merge(const SpreadMoments& other) {
        sum += other.sum;
        sum_sq += other.sum_sq;
        runs += other.runs;
    }

    CascadeResult to_result(std::string tag) const {
        CascadeResult r;
        r.runs = runs;
        r.tag = std::move(tag);
        r.mean_spread = runs ? static_cast<double>(sum) / static_cast<double>(runs) : 0.0;
        if (runs > 1) {
            const double n = static_cast<double>(runs);
            const double variance =
                (static_cast<double>(sum_sq) - static_cast<double>(sum) * sum / n) / (n - 1.0);
            r.std_dev = variance > 0 ? std::sqrt(variance) : 0.0;
        }
        return r;
    }
};

// One cascade run. The RNG stream is consumed in a fixed order (frontier
// in activation order, out-edges in CSR order), so a given run seed always
// produces the same spread.
std::uint64_t run_cascade(const SimpleDigraph& g, std::span<const std::uint32_t> seeds,
                          std::span<const double> edge_prob_by_weight_cache, double p,
                          std::vector<std::uint32_t>& frontier,
                          std::vector<std::uint32_t>& next_frontier,
                          std::vector<std::uint8_t>& active, Xoshiro256& rng) {
    std::fill(active.begin(), active.end(), 0);
    frontier.clear();
    std::uint64_t activated = 0;
    for (std::uint32_t s : seeds) {
        if (!active[s]) {
            active[s] = 1;
            frontier.push_back(s);
            ++activated;
        }
    }
    while (!frontier.empty()) {
        next_frontier.clear();
        for (std::uint32_t u : frontier) {
            const auto targets = g.out_targets(u);
            const auto weights = g.out_weights(u);
            for (std::size_t i = 0; i < targets.size(); ++i) {
                const std::uint32_t v = targets[i];
                if (active[v]) continue;
                const std::uint64_t w = weights[i];
                const double success =
                    w < edge_prob_by_weight_cache.size()
                        ? edge_prob_by_weight_cache[w]
                        : 1.0 - std::pow(1.0 - p, static_cast<double>(w));
                if (rng.next_double() < success) {
                    active[v] = 1;
                    next_frontier.push_back(v);
                    ++activated;
                }
            }
        }
        frontier.swap(next_frontier);
    }
    return activated;
}

SpreadMoments simulate_moments(const SimpleDigraph& g, std::span<const std::uint32_t> seeds,
                               const CascadeConfig& config) {
    validate_config(config);
    validate_seeds(g, seeds);

    // Success probability by weight, cached for the small weights that
    // dominate retweet graphs.
    std::vector<double> prob_cache(64);
    for (std::size_t w = 0; w < prob_cache.size(); ++w)
        prob_cache[w] = 1.0 - std::pow(1.0 - config.p, static_cast<double>(w));

    const unsigned threads = std::max(1u, config.threads);
    const std::uint64_t runs = config.runs;

    auto worker = [&](std::uint64_t first_run, std::uint64_t last_run) {
        SpreadMoments moments;
        std::vector<std::uint32_t> frontier, next_frontier;
        std::vector<std::uint8_t> active(g.node_count(), 0);
        for (std::uint64_t k = first_run; k < last_run; ++k) {
            Xoshiro256 rng(derive_seed(config.master_seed, k));
            const std::uint64_t spread =
                run_cascade(g, seeds, prob_cache, config.p, frontier, next_frontier, active, rng);
            moments.sum += spread;
            moments.sum_sq += spread * spread;
            ++moments.runs;
        }
        return moments;
    };

    if (threads == 1 || runs < 2 * threads) return worker(0, runs);

    std::vector<SpreadMoments> partial(threads);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (runs + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t first = std::min<std::uint64_t>(t * chunk, runs);
        const std::uint64_t last = std::min<std::uint64_t>(first + chunk, runs);
        pool.emplace_back([&partial, t, first, last, &worker] { partial[t] = worker(first, last); });
    }
    for (auto& th : pool) th.join();
    SpreadMoments total;
    for (const SpreadMoments& m : partial) total.merge(m);
    return total;
}

}  // namespace

CascadeResult simulate_ic(const SimpleDigraph& g, std::span<const std::uint32_t> seed_nodes,
                          const CascadeConfig& config) {
    return simulate_moments(g, seed_nodes, config).to_result("ic");
}

CascadeResult simulate_ic(const SimpleDigraph& g, const std::vector<std::string>& seed_names,
                          const CascadeConfig& config) {
    const auto seeds = resolve_seeds(g, seed_names);
    return simulate_ic(g, std::span<const std::uint32_t>(seeds), config);
}

double exact_spread_small(const SimpleDigraph& g, std::span<const std::uint32_t> seed_nodes,
                          double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DataError("cascade p must be in [0,1]");
    validate_seeds(g, seed_nodes);
    const std::size_t edge_count = g.edge_count();
    if (edge_count > 20)
        throw DataError("exact_spread_small supports at most 20 edges, got " +
                        std::to_string(edge_count));

    struct Edge {
        std::uint32_t from, to;
        double prob;
    };
    std::vector<Edge> edges;
    edges.reserve(edge_count);
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        const auto targets = g.out_targets(u);
        const auto weights = g.out_weights(u);
        for (std::size_t i = 0; i < targets.size(); ++i)
            edges.push_back(
                {u, targets[i], 1.0 - std::pow(1.0 - p, static_cast<double>(weights[i]))});
    }

    const std::size_t n = g.node_count();
    std::vector<std::uint8_t> reached(n);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> live_out(n);

    double expectation = 0.0;
    const std::uint64_t configs = 1ULL << edge_count;
    for (std::uint64_t mask = 0; mask < configs; ++mask) {
        double prob = 1.0;
        for (std::size_t e = 0; e < edge_count; ++e)
            prob *= (mask >> e) & 1 ? edges[e].prob : 1.0 - edges[e].prob;
        if (prob == 0.0) continue;

        for (auto& lst : live_out) lst.clear();
        for (std::size_t e = 0; e < edge_count; ++e)
            if ((mask >> e) & 1) live_out[edges[e].from].push_back(edges[e].to);

        std::fill(reached.begin(), reached.end(), 0);
        stack.clear();
        std::uint64_t count = 0;
        for (std::uint32_t s : seed_nodes) {
            if (!reached[s]) {
                reached[s] = 1;
                stack.push_back(s);
                ++count;
            }
        }
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v : live_out[u]) {
                if (!reached[v]) {
                    reached[v] = 1;
                    stack.push_back(v);
                    ++count;
                }
            }
        }
        expectation += prob * static_cast<double>(count);
    }
    return expectation;
}

double exact_spread_small(const SimpleDigraph& g, const std::vector<std::string>& seed_names,
                          double p) {
    const auto seeds = resolve_seeds(g, seed_names);
    return exact_spread_small(g, std::span<const std::uint32_t>(seeds), p);
}

StrategyComparison compare_strategies(const SimpleDigraph& g, std::size_t r,
                                      const CascadeConfig& config) {
    validate_config(config);
    if (r == 0 || r > g.node_count())
        throw DataError("compare_strategies r must be in [1, node count]");

    StrategyComparison comparison;
    comparison.r = r;

    auto seed_ids = [&](const Ranking& ranking) {
        std::vector<std::uint32_t> ids;
        ids.reserve(ranking.entries.size());
        for (const RankedNode& e : ranking.entries) ids.push_back(*g.find_node(e.node));
        return ids;
    };

    {
        const auto seeds = seed_ids(vote_rank(g, r));
        CascadeResult res = simulate_moments(g, seeds, config).to_result("voterank");
        comparison.results.push_back(std::move(res));
    }
    {
        const auto seeds = seed_ids(degree_rank(g, DegreeMode::out, /*weighted=*/false, r));
        CascadeResult res = simulate_moments(g, seeds, config).to_result("degree_out");
        comparison.results.push_back(std::move(res));
    }
    {
        // 20 uniform draws of r distinct nodes, pooled into one sample.
        constexpr int kDraws = 20;
        SpreadMoments pooled;
        const std::size_t n = g.node_count();
        for (int draw = 0; draw < kDraws; ++draw) {
            Xoshiro256 rng(derive_seed(config.master_seed ^ 0x5EEDu, 1000 + draw));
            std::vector<std::uint32_t> pool(n);
            for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
            // Partial Fisher-Yates for the first r entries.
            for (std::size_t i = 0; i < r; ++i) {
                const std::size_t j = i + rng.next_below(n - i);
                std::swap(pool[i], pool[j]);
            }
            pool.resize(r);
            CascadeConfig draw_config = config;
            draw_config.master_seed = derive_seed(config.master_seed, 7000 + draw);
            pooled.merge(simulate_moments(g, pool, draw_config));
        }
        comparison.results.push_back(pooled.to_result("random"));
    }
    return comparison;
}

}  // namespace discourse
