#include "discourse/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "discourse/csv.hpp"
#include "discourse/errors.hpp"

namespace discourse {

std::uint32_t NodeInterner::intern(std::string_view name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

std::optional<std::uint32_t> NodeInterner::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

bool edge_key_less(const LayeredEdge& a, const LayeredEdge& b) {
    if (a.layer != b.layer) return a.layer < b.layer;
    if (a.episode != b.episode) return a.episode < b.episode;
    if (a.author != b.author) return a.author < b.author;
    return a.retweeter < b.retweeter;
}

bool edge_key_equal(const LayeredEdge& a, const LayeredEdge& b) {
    return a.layer == b.layer && a.episode == b.episode && a.author == b.author &&
           a.retweeter == b.retweeter;
}

// Sort + run-length sum. Deterministic and cache friendly at the million-edge
// scale; no hashing involved.
std::vector<LayeredEdge> coalesce(std::vector<LayeredEdge> raw) {
    std::sort(raw.begin(), raw.end(), edge_key_less);
    std::vector<LayeredEdge> out;
    out.reserve(raw.size());
    for (const LayeredEdge& e : raw) {
        if (!out.empty() && edge_key_equal(out.back(), e))
            out.back().weight += e.weight;
        else
            out.push_back(e);
    }
    return out;
}

}  // namespace

LayeredGraph LayeredGraph::build(std::span<const TweetRecord> records,
                                 std::span<const Lexicon> lexicons,
                                 const EpisodeSchedule& schedule) {
    LayeredGraph g;
    for (const Lexicon& lex : lexicons) g.layer_names_.push_back(lex.name);
    g.layer_names_.push_back("none");
    std::unordered_map<std::string, std::uint32_t> layer_index;
    for (std::uint32_t i = 0; i < g.layer_names_.size(); ++i)
        layer_index.emplace(g.layer_names_[i], i);

    std::vector<LayeredEdge> raw;
    for (const TweetRecord& record : records) {
        if (!record.is_retweet()) {
            ++g.drops_.no_retweet;
            continue;
        }
        const auto episode = schedule.assign(record.timestamp_utc);
        if (!episode) {
            ++g.drops_.out_of_schedule;
            continue;
        }
        if (*record.retweet_of_user == record.user_id) {
            ++g.drops_.self_loop;
            continue;
        }
        const std::string layer = classify_post(record, lexicons);
        LayeredEdge e;
        e.layer = layer_index.at(layer);
        e.episode = static_cast<std::uint32_t>(*episode);
        e.author = g.nodes_.intern(*record.retweet_of_user);
        e.retweeter = g.nodes_.intern(record.user_id);
        e.weight = 1;
        raw.push_back(e);
    }
    g.edges_ = coalesce(std::move(raw));
    return g;
}

std::uint64_t LayeredGraph::total_weight() const {
    std::uint64_t w = 0;
    for (const LayeredEdge& e : edges_) w += e.weight;
    return w;
}

SimpleDigraph LayeredGraph::aggregate(const AggregateFilter& filter) const {
    std::optional<std::unordered_set<std::uint32_t>> layer_pass;
    if (filter.layers) {
        layer_pass.emplace();
        for (const std::string& name : *filter.layers) {
            const auto it = std::find(layer_names_.begin(), layer_names_.end(), name);
            if (it == layer_names_.end())
                throw DataError("unknown layer in aggregate filter: " + name);
            layer_pass->insert(static_cast<std::uint32_t>(it - layer_names_.begin()));
        }
    }
    std::optional<std::unordered_set<std::uint32_t>> episode_pass;
    if (filter.episodes) {
        episode_pass.emplace();
        for (int e : filter.episodes.value()) {
            if (e < 0) throw DataError("negative episode in aggregate filter");
            episode_pass->insert(static_cast<std::uint32_t>(e));
        }
    }

    std::vector<LayeredEdge> kept;
    kept.reserve(edges_.size());
    for (const LayeredEdge& e : edges_) {
        if (layer_pass && !layer_pass->count(e.layer)) continue;
        if (episode_pass && !episode_pass->count(e.episode)) continue;
        LayeredEdge flat = e;
        flat.layer = 0;
        flat.episode = 0;
        kept.push_back(flat);
    }
    return SimpleDigraph::from_edges(nodes_, coalesce(std::move(kept)));
}

void LayeredGraph::export_csv(std::ostream& out) const {
    out << "layer,episode,author,retweeter,weight\n";
    for (const LayeredEdge& e : edges_) {
        csv::write_row(out, {layer_names_[e.layer], std::to_string(e.episode),
                             nodes_.name(e.author), nodes_.name(e.retweeter),
                             std::to_string(e.weight)});
    }
}

namespace {

std::uint64_t parse_u64_field(const std::string& field, const char* what, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw DataError(std::string("bad ") + what + " at CSV line " + std::to_string(line_no));
    return v;
}

}  // namespace

LayeredGraph LayeredGraph::import_csv(std::istream& in) {
    LayeredGraph g;
    std::unordered_map<std::string, std::uint32_t> layer_index;
    std::string line;
    std::vector<std::string> fields;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<LayeredEdge> raw;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!csv::parse_row(line, fields))
            throw DataError("malformed CSV at line " + std::to_string(line_no));
        if (!header_seen) {
            header_seen = true;
            if (fields.size() == 5 && fields[0] == "layer") continue;  // header row
        }
        if (fields.size() != 5)
            throw DataError("expected 5 columns at CSV line " + std::to_string(line_no));
        LayeredEdge e;
        auto it = layer_index.find(fields[0]);
        if (it == layer_index.end()) {
            it = layer_index.emplace(fields[0], static_cast<std::uint32_t>(g.layer_names_.size()))
                     .first;
            g.layer_names_.push_back(fields[0]);
        }
        e.layer = it->second;
        const std::uint64_t episode = parse_u64_field(fields[1], "episode", line_no);
        if (episode > std::numeric_limits<std::uint32_t>::max())
            throw DataError("episode out of range at CSV line " + std::to_string(line_no));
        e.episode = static_cast<std::uint32_t>(episode);
        e.author = g.nodes_.intern(fields[2]);
        e.retweeter = g.nodes_.intern(fields[3]);
        e.weight = parse_u64_field(fields[4], "weight", line_no);
        if (e.weight == 0) throw DataError("zero weight at CSV line " + std::to_string(line_no));
        if (e.author == e.retweeter)
            throw DataError("self-loop at CSV line " + std::to_string(line_no));
        raw.push_back(e);
    }
    g.edges_ = coalesce(std::move(raw));
    return g;
}

// ---------------------------------------------------------------------------
// SimpleDigraph

SimpleDigraph::Builder& SimpleDigraph::Builder::add_edge(std::string_view author,
                                                         std::string_view retweeter,
                                                         std::uint64_t weight) {
    const auto a = nodes_.intern(author);
    const auto b = nodes_.intern(retweeter);
    if (a == b) throw DataError("self-loop edge: " + std::string(author));
    if (weight == 0) throw DataError("zero-weight edge");
    edges_.push_back({0, 0, a, b, weight});
    return *this;
}

SimpleDigraph::Builder& SimpleDigraph::Builder::add_node(std::string_view name) {
    nodes_.intern(name);
    return *this;
}

SimpleDigraph SimpleDigraph::Builder::build() {
    return SimpleDigraph::from_edges(std::move(nodes_), coalesce(std::move(edges_)));
}

SimpleDigraph SimpleDigraph::from_edges(NodeInterner nodes, std::vector<LayeredEdge> edges) {
    SimpleDigraph g;
    g.nodes_ = std::move(nodes);
    const std::size_t n = g.nodes_.size();
    g.offsets_.assign(n + 1, 0);
    for (const LayeredEdge& e : edges) ++g.offsets_[e.author + 1];
    for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.targets_.resize(edges.size());
    g.weights_.resize(edges.size());
    // edges arrive sorted by (author, retweeter), so CSR rows stay sorted.
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const LayeredEdge& e : edges) {
        const std::size_t slot = cursor[e.author]++;
        g.targets_[slot] = e.retweeter;
        g.weights_[slot] = e.weight;
        g.total_weight_ += e.weight;
    }
    return g;
}

GraphStats SimpleDigraph::stats() const {
    GraphStats s;
    s.nodes = node_count();
    s.edges = edge_count();
    s.total_weight = total_weight_;
    s.mean_out_degree = s.nodes == 0 ? 0.0 : static_cast<double>(s.edges) / s.nodes;
    return s;
}

GraphStats graph_stats(const SimpleDigraph& g) { return g.stats(); }

void SimpleDigraph::export_csv(std::ostream& out) const {
    out << "author,retweeter,weight\n";
    for (std::uint32_t u = 0; u < node_count(); ++u) {
        const auto targets = out_targets(u);
        const auto weights = out_weights(u);
        for (std::size_t i = 0; i < targets.size(); ++i)
            csv::write_row(out, {nodes_.name(u), nodes_.name(targets[i]),
                                 std::to_string(weights[i])});
    }
}

SimpleDigraph SimpleDigraph::import_csv(std::istream& in) {
    Builder builder;
    std::string line;
    std::vector<std::string> fields;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!csv::parse_row(line, fields))
            throw DataError("malformed CSV at line " + std::to_string(line_no));
        if (!header_seen) {
            header_seen = true;
            if (fields.size() == 3 && fields[0] == "author") continue;
        }
        if (fields.size() != 3)
            throw DataError("expected 3 columns at CSV line " + std::to_string(line_no));
        builder.add_edge(fields[0], fields[1], parse_u64_field(fields[2], "weight", line_no));
    }
    return builder.build();
}

}  // namespace discourse
