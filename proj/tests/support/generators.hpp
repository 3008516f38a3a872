#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "discourse/graph.hpp"
#include "discourse/rng.hpp"

namespace testgen {

/// ER-style random digraph: every ordered pair (u,v), u != v, becomes an edge
/// with probability p_edge. Node names n000, n001, ... Weight defaults to 1;
/// when max_weight > 1, weights are uniform in [1, max_weight].
discourse::SimpleDigraph random_digraph(std::size_t n, double p_edge, std::uint64_t seed,
                                        std::uint64_t max_weight = 1);

/// Random digraph with an exact number of distinct edges (for the
/// small-edge-count cascade oracle).
discourse::SimpleDigraph random_digraph_exact_edges(std::size_t n, std::size_t edges,
                                                    std::uint64_t seed,
                                                    std::uint64_t max_weight = 1);

/// Standard normal via Box-Muller on the project RNG.
double gaussian(discourse::Xoshiro256& rng);

struct BlobData {
    std::vector<double> rows;          // n x 2 row-major
    std::vector<int> true_component;   // 0 or 1
};

/// Two unit-variance spherical blobs, exactly n/2 points per center, shuffled.
BlobData two_blobs(std::size_t n, double cx0, double cy0, double cx1, double cy1,
                   std::uint64_t seed);

}  // namespace testgen
