#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "discourse/errors.hpp"
#include "pipeline.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;

struct GlobalArgs {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, GlobalArgs& args) {
    cmd->add_option("--config", args.config_path, "Pipeline config JSON")->required();
    cmd->add_option("--out", args.out_dir, "Output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "Master seed (overrides config)");
}

discourse::cli::PipelineConfig load(const GlobalArgs& args) {
    auto config = discourse::cli::load_config(args.config_path);
    if (args.out_dir) config.output_dir = *args.out_dir;
    if (args.seed) {
        config.seed = *args.seed;
        config.gmm.seed = *args.seed;
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discourse-graph: retweet-network discourse analytics pipeline"};
    app.require_subcommand(1);

    GlobalArgs args;
    discourse::cli::RankRequest rank_request;

    CLI::App* ingest = app.add_subcommand("ingest", "Validate the tweet stream and report stats");
    add_common(ingest, args);

    CLI::App* graph = app.add_subcommand("graph", "Build and export the retweet network");
    add_common(graph, args);

    CLI::App* rank = app.add_subcommand("rank", "Rank users by influence or activity");
    add_common(rank, args);
    rank->add_option("--method", rank_request.method,
                     "voterank|degree|degree_in|degree_out|betweenness|closeness|active")
        ->default_val("voterank");
    rank->add_option("--r", rank_request.r, "Number of entries to emit");
    rank->add_flag("--weighted", rank_request.weighted, "Weighted degrees for degree methods");

    CLI::App* cascade = app.add_subcommand("cascade", "Compare seeding strategies by spread");
    add_common(cascade, args);

    CLI::App* profiles = app.add_subcommand("profiles", "Per-user episode profiles and reports");
    add_common(profiles, args);

    CLI::App* cluster = app.add_subcommand("cluster", "BIC-selected Gaussian mixture clustering");
    add_common(cluster, args);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = load(args);
        if (ingest->parsed()) return discourse::cli::run_ingest(config);
        if (graph->parsed()) return discourse::cli::run_graph(config);
        if (rank->parsed()) return discourse::cli::run_rank(config, rank_request);
        if (cascade->parsed()) return discourse::cli::run_cascade(config);
        if (profiles->parsed()) return discourse::cli::run_profiles(config);
        if (cluster->parsed()) return discourse::cli::run_cluster(config);
    } catch (const discourse::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const discourse::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return 0;
}
