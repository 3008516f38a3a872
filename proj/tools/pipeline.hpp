#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "discourse/cascade.hpp"
#include "discourse/cluster.hpp"
#include "discourse/graph.hpp"
#include "discourse/influence.hpp"
#include "discourse/lexicon.hpp"
#include "discourse/profiles.hpp"

namespace discourse::cli {

struct LexiconSpec {
    std::string name;
    std::filesystem::path path;
};

enum class CohortSource { voterank, active, file };

struct PipelineConfig {
    std::filesystem::path config_dir;  // paths below are already resolved against it

    std::filesystem::path input;
    std::vector<LexiconSpec> lexicons;
    std::optional<std::filesystem::path> polarity;
    std::optional<std::filesystem::path> stopwords;
    std::optional<std::filesystem::path> schedule;
    std::optional<std::filesystem::path> graph_csv;  // reuse a prior graph export
    std::filesystem::path output_dir = "out";

    std::uint64_t seed = 0;
    bool fail_fast = false;

    std::size_t voterank_r = 10;
    std::optional<double> voterank_delta;
    std::size_t active_n = 50;

    double cascade_p = 0.1;
    std::uint64_t cascade_runs = 1000;

    std::size_t gmm_k_min = 1;
    std::size_t gmm_k_max = 6;
    std::vector<CovarianceStructure> gmm_structures;
    GmmConfig gmm;
    FeatureTransform transform = FeatureTransform::log1p;

    CohortSource cohort_source = CohortSource::active;
    std::optional<std::filesystem::path> cohort_file;

    bool normalize_evolution = false;

    unsigned threads = 1;
};

/// Loads and validates the JSON config. Relative paths resolve against the
/// config file's directory. Throws ConfigError.
PipelineConfig load_config(const std::filesystem::path& path);

struct RankRequest {
    std::string method = "voterank";  // voterank|degree|degree_in|degree_out|betweenness|closeness|active
    bool weighted = false;
    std::optional<std::size_t> r;
};

/// Runs one subcommand end to end, writing report files and a run manifest
/// into the output directory. Returns the process exit code (0 ok; throws
/// ConfigError/DataError for codes 2/3, mapped by the caller).
int run_ingest(const PipelineConfig& config);
int run_graph(const PipelineConfig& config);
int run_rank(const PipelineConfig& config, const RankRequest& request);
int run_cascade(const PipelineConfig& config);
int run_profiles(const PipelineConfig& config);
int run_cluster(const PipelineConfig& config);

/// Cohort used to scope the profiles/cluster reports: top-r VoteRank
/// spreaders, top-n active users, or an explicit user-id file.
std::vector<std::string> cohort_select(const PipelineConfig& config,
                                       std::span<const TweetRecord> records,
                                       const SimpleDigraph& aggregated);

}  // namespace discourse::cli
