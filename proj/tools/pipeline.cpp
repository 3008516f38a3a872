#include "pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "discourse/csv.hpp"
#include "discourse/errors.hpp"
#include "discourse/ingest.hpp"

namespace discourse::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path resolve(const fs::path& base, const fs::path& p) {
    return p.is_absolute() ? p : base / p;
}

void require_file(const fs::path& p, const char* what) {
    if (!fs::exists(p))
        throw ConfigError(std::string(what) + " does not exist: " + p.string());
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned() && !j[key].is_number_integer())
        throw ConfigError(std::string("config field \"") + key + "\" must be an integer");
    return j[key].get<std::uint64_t>();
}

double get_double(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ConfigError(std::string("config field \"") + key + "\" must be a number");
    return j[key].get<double>();
}

}  // namespace

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    PipelineConfig config;
    config.config_dir = path.has_parent_path() ? path.parent_path() : fs::path(".");

    if (!j.contains("input") || !j["input"].is_string())
        throw ConfigError("config requires a string \"input\" field");
    config.input = resolve(config.config_dir, j["input"].get<std::string>());

    if (!j.contains("lexicons") || !j["lexicons"].is_array() || j["lexicons"].empty())
        throw ConfigError("config requires a nonempty \"lexicons\" array");
    for (const auto& entry : j["lexicons"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("path"))
            throw ConfigError("each lexicon needs {\"name\", \"path\"}");
        LexiconSpec spec;
        spec.name = entry["name"].get<std::string>();
        spec.path = resolve(config.config_dir, entry["path"].get<std::string>());
        if (spec.name.empty() || spec.name == "none")
            throw ConfigError("lexicon names must be nonempty and not \"none\"");
        config.lexicons.push_back(std::move(spec));
    }
    for (std::size_t i = 0; i < config.lexicons.size(); ++i)
        for (std::size_t k = i + 1; k < config.lexicons.size(); ++k)
            if (config.lexicons[i].name == config.lexicons[k].name)
                throw ConfigError("duplicate lexicon name: " + config.lexicons[i].name);

    auto optional_path = [&](const char* key) -> std::optional<fs::path> {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_string())
            throw ConfigError(std::string("config field \"") + key + "\" must be a string path");
        return resolve(config.config_dir, j[key].get<std::string>());
    };
    config.polarity = optional_path("polarity");
    config.stopwords = optional_path("stopwords");
    config.schedule = optional_path("schedule");
    config.graph_csv = optional_path("graph_csv");
    if (auto out = optional_path("output_dir")) config.output_dir = *out;

    config.seed = get_u64(j, "seed", 0);
    if (j.contains("fail_fast")) config.fail_fast = j["fail_fast"].get<bool>();
    if (j.contains("normalize_evolution"))
        config.normalize_evolution = j["normalize_evolution"].get<bool>();

    if (j.contains("voterank")) {
        const auto& vr = j["voterank"];
        config.voterank_r = get_u64(vr, "r", config.voterank_r);
        if (vr.contains("delta")) config.voterank_delta = vr["delta"].get<double>();
    }
    config.active_n = get_u64(j, "active_n", config.active_n);

    if (j.contains("cascade")) {
        const auto& c = j["cascade"];
        config.cascade_p = get_double(c, "p", config.cascade_p);
        config.cascade_runs = get_u64(c, "runs", config.cascade_runs);
    }

    config.gmm_structures = {CovarianceStructure::full, CovarianceStructure::tied,
                             CovarianceStructure::diagonal, CovarianceStructure::spherical};
    if (j.contains("gmm")) {
        const auto& g = j["gmm"];
        config.gmm_k_min = get_u64(g, "k_min", config.gmm_k_min);
        config.gmm_k_max = get_u64(g, "k_max", config.gmm_k_max);
        config.gmm.max_iterations = get_u64(g, "max_iters", config.gmm.max_iterations);
        config.gmm.rel_tolerance = get_double(g, "tol", config.gmm.rel_tolerance);
        config.gmm.regularization = get_double(g, "epsilon", config.gmm.regularization);
        config.gmm.restarts = get_u64(g, "restarts", config.gmm.restarts);
        if (g.contains("transform"))
            config.transform = parse_feature_transform(g["transform"].get<std::string>());
        if (g.contains("structures")) {
            config.gmm_structures.clear();
            for (const auto& s : g["structures"])
                config.gmm_structures.push_back(parse_covariance_structure(s.get<std::string>()));
            if (config.gmm_structures.empty())
                throw ConfigError("gmm.structures must be nonempty when present");
        }
    }
    config.gmm.seed = config.seed;

    if (j.contains("cohort")) {
        const auto& c = j["cohort"];
        const std::string source = c.contains("source") ? c["source"].get<std::string>() : "active";
        if (source == "voterank")
            config.cohort_source = CohortSource::voterank;
        else if (source == "active")
            config.cohort_source = CohortSource::active;
        else if (source == "file")
            config.cohort_source = CohortSource::file;
        else
            throw ConfigError("cohort.source must be voterank, active or file");
        if (config.cohort_source == CohortSource::file) {
            if (!c.contains("path"))
                throw ConfigError("cohort.source=file requires cohort.path");
            config.cohort_file = resolve(config.config_dir, c["path"].get<std::string>());
        }
    }

    if (const char* env = std::getenv("DISCOURSE_GRAPH_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) config.threads = static_cast<unsigned>(v);
    }

    if (config.voterank_r == 0) throw ConfigError("voterank.r must be >= 1");
    if (config.active_n == 0) throw ConfigError("active_n must be >= 1");
    return config;
}

// ---------------------------------------------------------------------------
// Shared pipeline stages

namespace {

struct LoadedInputs {
    ParseResult parsed;
    std::vector<Lexicon> lexicons;
    PolarityLexicon polarity;
    Lexicon stopwords;  // possibly empty set when not configured
    EpisodeSchedule schedule;
};

void validate_input_files(const PipelineConfig& config, bool need_polarity) {
    require_file(config.input, "input file");
    for (const auto& lex : config.lexicons) require_file(lex.path, "lexicon file");
    if (config.polarity) require_file(*config.polarity, "polarity file");
    if (config.stopwords) require_file(*config.stopwords, "stopwords file");
    if (config.schedule) require_file(*config.schedule, "schedule file");
    if (config.graph_csv) require_file(*config.graph_csv, "graph_csv file");
    if (config.cohort_file) require_file(*config.cohort_file, "cohort file");
    if (need_polarity && !config.polarity)
        throw ConfigError("this command requires a \"polarity\" lexicon in the config");
}

LoadedInputs load_inputs(const PipelineConfig& config, bool need_polarity) {
    validate_input_files(config, need_polarity);
    LoadedInputs inputs;

    for (const auto& spec : config.lexicons)
        inputs.lexicons.push_back(load_lexicon(spec.path, spec.name));
    if (config.polarity) inputs.polarity = load_polarity_lexicon(*config.polarity);
    if (config.stopwords) inputs.stopwords = load_lexicon(*config.stopwords, "stopwords");
    inputs.schedule = config.schedule ? EpisodeSchedule::from_json_file(*config.schedule)
                                      : EpisodeSchedule::default_schedule();

    std::ifstream in(config.input, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + config.input.string());
    ParseOptions options;
    options.fail_fast = config.fail_fast;
    options.threads = config.threads;
    inputs.parsed = parse_records(in, options);
    return inputs;
}

class Manifest {
public:
    Manifest(std::string command, const PipelineConfig& config) {
        j_["command"] = std::move(command);
        j_["seed"] = config.seed;
        j_["threads"] = config.threads;
        ordered_json inputs;
        inputs["input"] = config.input.string();
        ordered_json lex;
        for (const auto& spec : config.lexicons) lex[spec.name] = spec.path.string();
        inputs["lexicons"] = lex;
        if (config.polarity) inputs["polarity"] = config.polarity->string();
        if (config.stopwords) inputs["stopwords"] = config.stopwords->string();
        if (config.schedule) inputs["schedule"] = config.schedule->string();
        if (config.graph_csv) inputs["graph_csv"] = config.graph_csv->string();
        if (config.cohort_file) inputs["cohort_file"] = config.cohort_file->string();
        j_["inputs"] = inputs;
        j_["parameters"] = ordered_json::object();
        j_["counters"] = ordered_json::object();
        j_["outputs"] = ordered_json::object();
    }

    template <typename T>
    void parameter(const std::string& key, const T& value) {
        j_["parameters"][key] = value;
    }
    template <typename T>
    void counter(const std::string& key, const T& value) {
        j_["counters"][key] = value;
    }
    void note(const std::string& key, const std::string& value) { j_[key] = value; }
    void output(const std::string& file, std::uint64_t rows) { j_["outputs"][file] = rows; }

    void record_parse(const ParseResult& parsed) {
        counter("records_parsed", parsed.records.size());
        counter("parse_errors_skipped", parsed.errors.size());
    }

    void record_drops(const GraphDropCounters& drops, std::uint64_t total_weight) {
        counter("dropped_no_retweet", drops.no_retweet);
        counter("dropped_out_of_schedule", drops.out_of_schedule);
        counter("dropped_self_loop", drops.self_loop);
        counter("graph_total_weight", total_weight);
    }

    void write(const fs::path& dir) const {
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        if (!out) throw DataError("cannot write manifest to " + dir.string());
        out << j_.dump(2) << '\n';
    }

private:
    ordered_json j_;
};

fs::path ensure_output_dir(const PipelineConfig& config) {
    fs::create_directories(config.output_dir);
    return config.output_dir;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw DataError("cannot write output file: " + (dir / name).string());
    return out;
}

std::uint64_t write_ranking_csv(std::ostream& out, const Ranking& ranking) {
    out << "rank,node,score,method\n";
    std::uint64_t rows = 0;
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        csv::write_row(out, {std::to_string(i + 1), ranking.entries[i].node,
                             csv::format_double(ranking.entries[i].score), ranking.method});
        ++rows;
    }
    return rows;
}

std::vector<std::string> lexicon_names(const std::vector<Lexicon>& lexicons) {
    std::vector<std::string> names;
    names.reserve(lexicons.size());
    for (const auto& lex : lexicons) names.push_back(lex.name);
    return names;
}

SimpleDigraph aggregated_graph(const PipelineConfig& config, const LoadedInputs& inputs,
                               GraphDropCounters* drops_out = nullptr,
                               std::uint64_t* weight_out = nullptr) {
    LayeredGraph layered;
    if (config.graph_csv) {
        std::ifstream in(*config.graph_csv, std::ios::binary);
        if (!in) throw ConfigError("cannot open graph_csv: " + config.graph_csv->string());
        layered = LayeredGraph::import_csv(in);
    } else {
        layered = LayeredGraph::build(inputs.parsed.records, inputs.lexicons, inputs.schedule);
    }
    if (drops_out) *drops_out = layered.drops();
    if (weight_out) *weight_out = layered.total_weight();
    return layered.aggregate();
}

}  // namespace

std::vector<std::string> cohort_select(const PipelineConfig& config,
                                       std::span<const TweetRecord> records,
                                       const SimpleDigraph& aggregated) {
    std::vector<std::string> cohort;
    switch (config.cohort_source) {
        case CohortSource::voterank: {
            const Ranking ranking = vote_rank(aggregated, std::min(config.voterank_r,
                                                                   aggregated.node_count()),
                                              {config.voterank_delta});
            for (const RankedNode& e : ranking.entries) cohort.push_back(e.node);
            break;
        }
        case CohortSource::active: {
            const Ranking ranking = rank_active_users(records, config.active_n);
            for (const RankedNode& e : ranking.entries) cohort.push_back(e.node);
            break;
        }
        case CohortSource::file: {
            std::ifstream in(*config.cohort_file);
            if (!in) throw ConfigError("cannot open cohort file");
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                cohort.push_back(line);
            }
            break;
        }
    }
    if (cohort.empty()) throw DataError("selected cohort is empty");
    return cohort;
}

// ---------------------------------------------------------------------------
// Subcommands

int run_ingest(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, /*need_polarity=*/false);
    const fs::path dir = ensure_output_dir(config);

    Manifest manifest("ingest", config);
    manifest.record_parse(inputs.parsed);

    std::uint64_t hashtag_total = 0;
    std::unordered_set<std::string> users;
    std::uint64_t retweets = 0;
    for (const TweetRecord& rec : inputs.parsed.records) {
        hashtag_total += rec.hashtags.size();
        users.insert(rec.user_id);
        if (rec.is_retweet()) ++retweets;
    }
    manifest.counter("distinct_users", users.size());
    manifest.counter("hashtag_occurrences", hashtag_total);
    manifest.counter("retweet_records", retweets);
    manifest.parameter("episodes", inputs.schedule.episode_count());

    {
        auto out = open_output(dir, "parse_errors.csv");
        out << "line,error\n";
        for (const ParseError& e : inputs.parsed.errors)
            csv::write_row(out, {std::to_string(e.line_number), e.message});
        manifest.output("parse_errors.csv", inputs.parsed.errors.size());
    }
    manifest.write(dir);
    return 0;
}

int run_graph(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, /*need_polarity=*/false);
    const fs::path dir = ensure_output_dir(config);

    const LayeredGraph layered =
        LayeredGraph::build(inputs.parsed.records, inputs.lexicons, inputs.schedule);
    const SimpleDigraph aggregated = layered.aggregate();

    Manifest manifest("graph", config);
    manifest.record_parse(inputs.parsed);
    manifest.record_drops(layered.drops(), layered.total_weight());
    const GraphStats stats = aggregated.stats();
    manifest.counter("nodes", stats.nodes);
    manifest.counter("aggregated_edges", stats.edges);
    manifest.counter("layered_edges", layered.edge_count());
    manifest.parameter("mean_out_degree", stats.mean_out_degree);

    {
        auto out = open_output(dir, "layered_graph.csv");
        layered.export_csv(out);
        manifest.output("layered_graph.csv", layered.edge_count());
    }
    {
        auto out = open_output(dir, "aggregated.csv");
        aggregated.export_csv(out);
        manifest.output("aggregated.csv", aggregated.edge_count());
    }
    manifest.write(dir);
    return 0;
}

int run_rank(const PipelineConfig& config, const RankRequest& request) {
    if (request.r && *request.r == 0) throw ConfigError("--r must be >= 1");
    LoadedInputs inputs = load_inputs(config, /*need_polarity=*/false);
    const fs::path dir = ensure_output_dir(config);

    Manifest manifest("rank", config);
    manifest.record_parse(inputs.parsed);
    manifest.parameter("method", request.method);

    Ranking ranking;
    if (request.method == "active") {
        const std::size_t n = request.r.value_or(config.active_n);
        manifest.parameter("n", n);
        ranking = rank_active_users(inputs.parsed.records, n);
    } else {
        GraphDropCounters drops;
        std::uint64_t weight = 0;
        const SimpleDigraph g = aggregated_graph(config, inputs, &drops, &weight);
        manifest.record_drops(drops, weight);
        const std::size_t r = std::min(request.r.value_or(config.voterank_r), g.node_count());
        manifest.parameter("r", r);
        if (request.method == "voterank") {
            ranking = vote_rank(g, r, {config.voterank_delta});
        } else if (request.method == "degree" || request.method == "degree_out") {
            ranking = degree_rank(g, DegreeMode::out, request.weighted, r);
        } else if (request.method == "degree_in") {
            ranking = degree_rank(g, DegreeMode::in, request.weighted, r);
        } else if (request.method == "betweenness" || request.method == "closeness") {
            const std::vector<double> score =
                request.method == "betweenness" ? betweenness(g) : closeness(g);
            std::vector<std::pair<std::uint32_t, double>> scored;
            scored.reserve(score.size());
            for (std::uint32_t u = 0; u < score.size(); ++u) scored.emplace_back(u, score[u]);
            std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                if (g.out_degree(a.first) != g.out_degree(b.first))
                    return g.out_degree(a.first) > g.out_degree(b.first);
                return g.node_name(a.first) < g.node_name(b.first);
            });
            if (scored.size() > r) scored.resize(r);
            ranking.method = request.method;
            for (const auto& [node, s] : scored) ranking.entries.push_back({g.node_name(node), s});
        } else {
            throw ConfigError("unknown rank method: " + request.method);
        }
    }

    {
        auto out = open_output(dir, "ranking.csv");
        manifest.output("ranking.csv", write_ranking_csv(out, ranking));
    }
    manifest.write(dir);
    return 0;
}

int run_cascade(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, /*need_polarity=*/false);
    const fs::path dir = ensure_output_dir(config);

    Manifest manifest("cascade", config);
    manifest.record_parse(inputs.parsed);
    GraphDropCounters drops;
    std::uint64_t weight = 0;
    const SimpleDigraph g = aggregated_graph(config, inputs, &drops, &weight);
    manifest.record_drops(drops, weight);

    CascadeConfig cascade;
    cascade.p = config.cascade_p;
    cascade.runs = config.cascade_runs;
    cascade.master_seed = config.seed;
    cascade.threads = config.threads;
    const std::size_t r = std::min(config.voterank_r, g.node_count());
    manifest.parameter("r", r);
    manifest.parameter("p", cascade.p);
    manifest.parameter("runs", cascade.runs);

    const StrategyComparison comparison = compare_strategies(g, r, cascade);
    {
        auto out = open_output(dir, "cascade_report.csv");
        out << "strategy,r,mean_spread,std,runs,seed\n";
        for (const CascadeResult& res : comparison.results)
            csv::write_row(out, {res.tag, std::to_string(comparison.r),
                                 csv::format_double(res.mean_spread),
                                 csv::format_double(res.std_dev), std::to_string(res.runs),
                                 std::to_string(config.seed)});
        manifest.output("cascade_report.csv", comparison.results.size());
    }
    manifest.write(dir);
    return 0;
}

namespace {

std::uint64_t write_profiles_csv(std::ostream& out,
                                 const std::vector<UserEpisodeProfile>& profiles,
                                 const std::vector<std::string>& names) {
    std::vector<std::string> header = {"user", "episode"};
    for (const std::string& name : names) header.push_back(name);
    header.insert(header.end(), {"positive", "negative", "neutral", "tonality", "posts",
                                 "hashtags"});
    csv::write_row(out, header);
    std::uint64_t rows = 0;
    for (const UserEpisodeProfile& p : profiles) {
        std::vector<std::string> fields = {p.user, std::to_string(p.episode)};
        for (std::uint64_t c : p.discourse_counts) fields.push_back(std::to_string(c));
        fields.push_back(std::to_string(p.tonality.positive_count));
        fields.push_back(std::to_string(p.tonality.negative_count));
        fields.push_back(std::to_string(p.tonality.neutral_count));
        fields.emplace_back(to_string(p.tonality.label()));
        fields.push_back(std::to_string(p.post_count));
        fields.push_back(std::to_string(p.hashtag_count));
        csv::write_row(out, fields);
        ++rows;
    }
    return rows;
}

// Aggregate rows carry an empty user field (user ids are never empty).
std::uint64_t write_evolution_csv(std::ostream& out, const EvolutionSeries& series,
                                  bool normalize) {
    out << "episode,user,lexicon,count\n";
    std::uint64_t rows = 0;
    auto emit = [&](int episode, const std::string& user, const std::string& lexicon,
                    std::uint64_t count, std::uint64_t posts) {
        std::string value;
        if (normalize)
            value = csv::format_double(posts ? static_cast<double>(count) / posts : 0.0);
        else
            value = std::to_string(count);
        csv::write_row(out, {std::to_string(episode), user, lexicon, value});
        ++rows;
    };
    for (int e = 0; e < series.episodes; ++e)
        for (std::size_t l = 0; l < series.lexicon_names.size(); ++l)
            emit(e, "", series.lexicon_names[l], series.aggregate_counts[e][l],
                 series.aggregate_posts[e]);
    for (std::size_t u = 0; u < series.users.size(); ++u)
        for (int e = 0; e < series.episodes; ++e)
            for (std::size_t l = 0; l < series.lexicon_names.size(); ++l)
                emit(e, series.users[u], series.lexicon_names[l], series.per_user_counts[u][e][l],
                     series.per_user_posts[u][e]);
    return rows;
}

}  // namespace

int run_profiles(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, /*need_polarity=*/true);
    const fs::path dir = ensure_output_dir(config);

    Manifest manifest("profiles", config);
    manifest.record_parse(inputs.parsed);
    manifest.parameter("normalize_evolution", config.normalize_evolution);

    const std::vector<UserEpisodeProfile> profiles = build_profiles(
        inputs.parsed.records, inputs.lexicons, inputs.polarity, inputs.schedule);

    const SimpleDigraph aggregated = aggregated_graph(config, inputs);
    const std::vector<std::string> cohort =
        cohort_select(config, inputs.parsed.records, aggregated);
    manifest.parameter("cohort_size", cohort.size());

    const std::vector<std::string> names = lexicon_names(inputs.lexicons);
    const EvolutionSeries series =
        discourse_evolution(profiles, cohort, names, inputs.schedule.episode_count());

    {
        auto out = open_output(dir, "profiles.csv");
        manifest.output("profiles.csv", write_profiles_csv(out, profiles, names));
    }
    {
        auto out = open_output(dir, "evolution.csv");
        manifest.output("evolution.csv",
                        write_evolution_csv(out, series, config.normalize_evolution));
    }
    if (inputs.lexicons.size() == 2) {
        auto out = open_output(dir, "scatter.csv");
        out << "user,gov_count,community_count,tonality\n";
        std::uint64_t rows = 0;
        for (const ScatterPoint& point : activity_scatter(profiles, cohort)) {
            csv::write_row(out, {point.user, std::to_string(point.first_count),
                                 std::to_string(point.second_count),
                                 std::string(to_string(point.tonality))});
            ++rows;
        }
        manifest.output("scatter.csv", rows);
    } else {
        manifest.note("scatter_skipped", "requires exactly two discourse lexicons");
        std::cerr << "scatter.csv skipped: requires exactly two discourse lexicons\n";
    }
    {
        // Word frequencies over the cohort's records only.
        std::unordered_set<std::string_view> cohort_set(cohort.begin(), cohort.end());
        std::vector<TweetRecord> cohort_records;
        for (const TweetRecord& rec : inputs.parsed.records)
            if (cohort_set.count(rec.user_id)) cohort_records.push_back(rec);
        const auto frequencies = word_frequencies(cohort_records, inputs.stopwords);
        auto out = open_output(dir, "word_frequencies.csv");
        out << "token,count\n";
        for (const auto& [token, count] : frequencies)
            csv::write_row(out, {token, std::to_string(count)});
        manifest.output("word_frequencies.csv", frequencies.size());
    }
    manifest.write(dir);
    return 0;
}

int run_cluster(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, /*need_polarity=*/true);
    const fs::path dir = ensure_output_dir(config);

    Manifest manifest("cluster", config);
    manifest.record_parse(inputs.parsed);
    manifest.parameter("transform", std::string(to_string(config.transform)));
    manifest.parameter("k_min", config.gmm_k_min);
    manifest.parameter("k_max", config.gmm_k_max);
    manifest.parameter("restarts", config.gmm.restarts);

    const std::vector<UserEpisodeProfile> profiles = build_profiles(
        inputs.parsed.records, inputs.lexicons, inputs.polarity, inputs.schedule);
    const SimpleDigraph aggregated = aggregated_graph(config, inputs);
    const std::vector<std::string> cohort =
        cohort_select(config, inputs.parsed.records, aggregated);
    manifest.parameter("cohort_size", cohort.size());

    const std::vector<std::string> names = lexicon_names(inputs.lexicons);
    const FeatureMatrix X = build_feature_matrix(profiles, cohort, names, config.transform);

    auto [model, report] =
        select_model(X, config.gmm_k_min, config.gmm_k_max, config.gmm_structures, config.gmm);
    const double best_bic = report.grid[report.selected].bic;
    manifest.counter("selected_components", model.components);
    manifest.parameter("selected_structure", std::string(to_string(model.structure)));

    {
        auto out = open_output(dir, "bic_grid.csv");
        out << "K,structure,bic\n";
        for (const BicCell& cell : report.grid)
            csv::write_row(out, {std::to_string(cell.components),
                                 std::string(to_string(cell.structure)),
                                 csv::format_double(cell.bic)});
        manifest.output("bic_grid.csv", report.grid.size());
    }
    {
        auto out = open_output(dir, "model.json");
        out << model_to_json(model, best_bic) << '\n';
        manifest.output("model.json", 1);
    }
    {
        const ClusterAssignment assignment = assign_clusters(model, X);
        auto out = open_output(dir, "labels.csv");
        out << "user,component,max_responsibility\n";
        for (std::size_t r = 0; r < X.rows; ++r) {
            const double* row = assignment.responsibilities.data() + r * model.components;
            csv::write_row(out, {X.row_labels[r], std::to_string(assignment.labels[r]),
                                 csv::format_double(row[assignment.labels[r]])});
        }
        manifest.output("labels.csv", X.rows);
    }
    manifest.write(dir);
    return 0;
}

}  // namespace discourse::cli
