#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "discourse/ingest.hpp"
#include "discourse/lexicon.hpp"
#include "discourse/profiles.hpp"

namespace discourse {

/// user id <-> dense index mapping shared by the graph types.
class NodeInterner {
public:
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t index) const { return names_[index]; }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

private:
    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> index_;
};

struct GraphDropCounters {
    std::uint64_t no_retweet = 0;      // records without retweet provenance
    std::uint64_t out_of_schedule = 0;
    std::uint64_t self_loop = 0;

    std::uint64_t total() const { return no_retweet + out_of_schedule + self_loop; }
};

struct LayeredEdge {
    std::uint32_t layer = 0;
    std::uint32_t episode = 0;
    std::uint32_t author = 0;     // information source (the retweeted user)
    std::uint32_t retweeter = 0;
    std::uint64_t weight = 0;
};

struct GraphStats {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;  // distinct directed edges
    std::uint64_t total_weight = 0;
    double mean_out_degree = 0.0;  // edges / nodes
};

class SimpleDigraph;

struct AggregateFilter {
    std::optional<std::vector<std::string>> layers;
    std::optional<std::vector<int>> episodes;
};

/// Directed multigraph keyed by (discourse layer, episode); weights count
/// retweets. Edges are sorted by (layer, episode, author, retweeter) and the
/// structure is immutable after build.
class LayeredGraph {
public:
    /// One weight increment per retweet record: layer = classify_post of the
    /// retweeting post, episode = schedule.assign(timestamp), author -> retweeter.
    /// Records without provenance, outside the schedule, or self-retweets are
    /// dropped and counted.
    static LayeredGraph build(std::span<const TweetRecord> records,
                              std::span<const Lexicon> lexicons,
                              const EpisodeSchedule& schedule);

    /// Weights summed over (layer, episode) keys passing the filters; the node
    /// set is preserved, including nodes isolated by the filter.
    SimpleDigraph aggregate(const AggregateFilter& filter = {}) const;

    const std::vector<LayeredEdge>& edges() const { return edges_; }
    const std::vector<std::string>& layer_names() const { return layer_names_; }
    const NodeInterner& nodes() const { return nodes_; }
    const GraphDropCounters& drops() const { return drops_; }

    std::uint64_t total_weight() const;
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    /// CSV `layer,episode,author,retweeter,weight` with a header row.
    void export_csv(std::ostream& out) const;
    static LayeredGraph import_csv(std::istream& in);

private:
    std::vector<std::string> layer_names_;
    NodeInterner nodes_;
    std::vector<LayeredEdge> edges_;
    GraphDropCounters drops_;
};

/// Aggregated directed graph in CSR form. Node indices are preserved from the
/// layered graph it came from. Immutable after construction.
class SimpleDigraph {
public:
    class Builder {
    public:
        /// Adds weight onto the (author -> retweeter) edge, creating nodes as
        /// needed. Self-loops are rejected.
        Builder& add_edge(std::string_view author, std::string_view retweeter,
                          std::uint64_t weight = 1);
        Builder& add_node(std::string_view name);
        SimpleDigraph build();

    private:
        NodeInterner nodes_;
        std::vector<LayeredEdge> edges_;  // layer/episode unused
        friend class LayeredGraph;
    };

    SimpleDigraph() = default;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return targets_.size(); }
    std::uint64_t total_weight() const { return total_weight_; }

    const NodeInterner& nodes() const { return nodes_; }
    const std::string& node_name(std::uint32_t u) const { return nodes_.name(u); }
    std::optional<std::uint32_t> find_node(std::string_view name) const {
        return nodes_.find(name);
    }

    std::size_t out_degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
    std::span<const std::uint32_t> out_targets(std::uint32_t u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::span<const std::uint64_t> out_weights(std::uint32_t u) const {
        return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
    }

    GraphStats stats() const;

    /// CSV `author,retweeter,weight` with a header row.
    void export_csv(std::ostream& out) const;
    static SimpleDigraph import_csv(std::istream& in);

private:
    static SimpleDigraph from_edges(NodeInterner nodes, std::vector<LayeredEdge> edges);

    NodeInterner nodes_;
    std::vector<std::size_t> offsets_;  // size node_count()+1
    std::vector<std::uint32_t> targets_;
    std::vector<std::uint64_t> weights_;
    std::uint64_t total_weight_ = 0;

    friend class LayeredGraph;
};

GraphStats graph_stats(const SimpleDigraph& g);

}  // namespace discourse
