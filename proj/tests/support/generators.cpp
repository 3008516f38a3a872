#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace testgen {

using discourse::SimpleDigraph;
using discourse::Xoshiro256;

namespace {

std::string node_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%03zu", i);
    return buf;
}

}  // namespace

SimpleDigraph random_digraph(std::size_t n, double p_edge, std::uint64_t seed,
                             std::uint64_t max_weight) {
    Xoshiro256 rng(seed);
    SimpleDigraph::Builder builder;
    for (std::size_t i = 0; i < n; ++i) builder.add_node(node_name(i));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            if (rng.next_double() < p_edge) {
                const std::uint64_t w = max_weight > 1 ? 1 + rng.next_below(max_weight) : 1;
                builder.add_edge(node_name(u), node_name(v), w);
            }
        }
    }
    return builder.build();
}

SimpleDigraph random_digraph_exact_edges(std::size_t n, std::size_t edges, std::uint64_t seed,
                                         std::uint64_t max_weight) {
    Xoshiro256 rng(seed);
    SimpleDigraph::Builder builder;
    for (std::size_t i = 0; i < n; ++i) builder.add_node(node_name(i));
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    while (chosen.size() < edges) {
        const std::size_t u = rng.next_below(n);
        const std::size_t v = rng.next_below(n);
        if (u == v) continue;
        chosen.insert({u, v});
    }
    for (const auto& [u, v] : chosen) {
        const std::uint64_t w = max_weight > 1 ? 1 + rng.next_below(max_weight) : 1;
        builder.add_edge(node_name(u), node_name(v), w);
    }
    return builder.build();
}

double gaussian(Xoshiro256& rng) {
    // Box-Muller; u1 in (0,1] to avoid log(0).
    const double u1 = 1.0 - rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}

BlobData two_blobs(std::size_t n, double cx0, double cy0, double cx1, double cy1,
                   std::uint64_t seed) {
    Xoshiro256 rng(seed);
    BlobData data;
    data.rows.reserve(n * 2);
    data.true_component.reserve(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.next_below(i)]);

    std::vector<std::pair<double, double>> points(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool second = i >= n / 2;
        const double cx = second ? cx1 : cx0;
        const double cy = second ? cy1 : cy0;
        points[i] = {cx + gaussian(rng), cy + gaussian(rng)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = order[i];
        data.rows.push_back(points[j].first);
        data.rows.push_back(points[j].second);
        data.true_component.push_back(j >= n / 2 ? 1 : 0);
    }
    return data;
}

}  // namespace testgen
