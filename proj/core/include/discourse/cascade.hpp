#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "discourse/graph.hpp"

namespace discourse {

struct CascadeConfig {
    double p = 0.1;               // base per-retweet success probability, in [0,1]
    std::uint64_t runs = 1000;    // Monte Carlo repetitions, >= 1
    std::uint64_t master_seed = 0;
    unsigned threads = 1;  // runs are independent; results identical for any count
};

struct CascadeResult {
    double mean_spread = 0.0;
    double std_dev = 0.0;  // sample standard deviation (divisor runs-1)
    std::uint64_t runs = 0;
    std::string tag;
};

/// Independent-cascade simulation. A newly activated node attempts each
/// out-edge once; an edge of weight w succeeds with probability
/// 1 - (1-p)^w (w independent retweet chances). Run k draws from a stream
/// derived from (master_seed, k), so results are bit-reproducible for any
/// thread count.
CascadeResult simulate_ic(const SimpleDigraph& g, std::span<const std::uint32_t> seed_nodes,
                          const CascadeConfig& config);
CascadeResult simulate_ic(const SimpleDigraph& g, const std::vector<std::string>& seed_names,
                          const CascadeConfig& config);

/// Exact expected spread by enumerating all 2^|E| live-edge configurations.
/// DataError when the graph has more than 20 edges.
double exact_spread_small(const SimpleDigraph& g, std::span<const std::uint32_t> seed_nodes,
                          double p);
double exact_spread_small(const SimpleDigraph& g, const std::vector<std::string>& seed_names,
                          double p);

/// Evaluates vote_rank top-r, out-degree top-r and uniform-random seed sets
/// (20 draws, pooled) under the same cascade configuration.
struct StrategyComparison {
    std::size_t r = 0;
    std::vector<CascadeResult> results;  // tags: voterank, degree_out, random
};

StrategyComparison compare_strategies(const SimpleDigraph& g, std::size_t r,
                                      const CascadeConfig& config);

}  // namespace discourse
