#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hawkes/config.hpp"

namespace hawkes {

// Command-line level knobs. Everything that affects result bytes lives in the
// RunConfig (plus the seed override); workers and output placement never do.
struct RunOptions {
    std::optional<std::uint64_t> seed;   // overrides the config seed
    std::optional<std::string> out_dir;  // overrides config output.dir
    int workers = 1;
    bool emit_paths = false;  // also write the optional CSV tables
};

// Executes one experiment subcommand. Writes summary.json and
// config_resolved.txt (plus any CSV artifacts) into the output directory and
// prints per-assertion results. Returns the process exit code: 0 when every
// assertion passes, 1 on assertion failure, 2 on configuration errors, 3 on
// runtime aborts (event cap, non-finite state).
int run_experiment(const std::string& subcommand, const RunConfig& config,
                   const RunOptions& options);

}  // namespace hawkes
