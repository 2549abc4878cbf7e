#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hawkes/config.hpp"
#include "hawkes/run.hpp"

namespace {

struct CliState {
    std::string subcommand;
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir;
    bool out_given = false;
    int workers = 1;
    bool emit_paths = false;
};

constexpr const char* kSubcommands[] = {
    "simulate-n",   "simulate-limit", "generator-gap",
    "semigroup-rate", "invariant-law", "chaos-test",
    "joint-limit",  "constants",      "validate",
};

constexpr const char* kDescriptions[] = {
    "Simulate one N-component system path (events.csv + path.csv)",
    "Simulate one diffusion-limit path, optionally with Cox component events",
    "Check the generator gap against its bound on an (x, N) grid",
    "Fit the N-convergence rate of the semigroup at a point",
    "Compare long-run samples against the invariant density",
    "Check the conditional-chaos covariance identity",
    "Track the law of the N-system along a joint (t, N) schedule",
    "Report the growth/horizon constants of the model",
    "Run model diagnostics (rate growth, mark moments)",
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Mean-field Hawkes systems in the diffusive regime: simulation and "
        "numerical verification of the diffusion limit"};
    app.require_subcommand(1);
    CliState state;
    for (std::size_t i = 0; i < std::size(kSubcommands); ++i) {
        CLI::App* sub = app.add_subcommand(kSubcommands[i], kDescriptions[i]);
        sub->add_option("--config", state.config_path,
                        "Path to the key = value run configuration")
            ->required();
        CLI::Option* seed_opt =
            sub->add_option("--seed", state.seed, "Master seed (overrides config)");
        CLI::Option* out_opt =
            sub->add_option("--out", state.out_dir, "Output directory");
        sub->add_option("--workers", state.workers,
                        "Worker threads for replication loops")
            ->envname("HAWKES_DIFFUSIVE_WORKERS");
        sub->add_flag("--emit-paths", state.emit_paths,
                      "Also write the optional CSV tables");
        const std::string name = kSubcommands[i];
        sub->callback([&state, name, seed_opt, out_opt] {
            state.subcommand = name;
            state.seed_given = seed_opt->count() > 0;
            state.out_given = out_opt->count() > 0;
        });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    }

    hawkes::RunConfig config;
    try {
        config = hawkes::parse_config_file(state.config_path);
    } catch (const std::exception& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 2;
    }

    hawkes::RunOptions options;
    if (state.seed_given) options.seed = state.seed;
    if (state.out_given) options.out_dir = state.out_dir;
    options.workers = state.workers < 1 ? 1 : state.workers;
    options.emit_paths = state.emit_paths;
    return hawkes::run_experiment(state.subcommand, config, options);
}
