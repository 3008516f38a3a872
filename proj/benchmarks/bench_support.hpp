#pragma once

#include <cstdio>
#include <string>

#include "discourse/graph.hpp"
#include "discourse/ingest.hpp"
#include "discourse/rng.hpp"

namespace bench {

inline std::string node_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%06zu", i);
    return buf;
}

inline discourse::SimpleDigraph random_graph(std::size_t nodes, std::size_t edges,
                                             std::uint64_t seed) {
    discourse::Xoshiro256 rng(seed);
    discourse::SimpleDigraph::Builder builder;
    for (std::size_t i = 0; i < nodes; ++i) builder.add_node(node_name(i));
    std::size_t added = 0;
    while (added < edges) {
        const std::size_t u = rng.next_below(nodes);
        const std::size_t v = rng.next_below(nodes);
        if (u == v) continue;
        builder.add_edge(node_name(u), node_name(v), 1 + rng.next_below(3));
        ++added;
    }
    return builder.build();
}

inline std::string random_jsonl(std::size_t records, std::size_t users, std::uint64_t seed) {
    discourse::Xoshiro256 rng(seed);
    std::string out;
    out.reserve(records * 150);
    for (std::size_t i = 0; i < records; ++i) {
        char line[256];
        std::snprintf(line, sizeof line,
                      "{\"tweet_id\":\"t%zu\",\"user_id\":\"u%zu\","
                      "\"created_at\":\"2020-03-%02dT12:00:00Z\",\"text\":\"word%zu covid "
                      "#tag%zu\",\"retweeted_user_id\":\"u%zu\",\"retweeted_tweet_id\":\"r%zu\"}\n",
                      i, rng.next_below(users), static_cast<int>(1 + rng.next_below(28)),
                      rng.next_below(500), rng.next_below(50), rng.next_below(users), i);
        out += line;
    }
    return out;
}

}  // namespace bench
