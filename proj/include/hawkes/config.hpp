#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hawkes/model.hpp"

namespace hawkes {

// Flat key = value run configuration.  Lines hold dotted keys ("rate.kind"),
// '#' starts a comment, blank lines are ignored.  Unknown keys are rejected so
// a typo cannot silently fall back to a default.  emit_config() writes set
// fields in a canonical order with full float precision, and
// parse_config(emit_config(c)) == c holds for every valid configuration.
struct RunConfig {
    std::optional<double> alpha;
    std::optional<std::string> rate_kind;
    std::optional<double> rate_c;
    std::optional<std::string> jump_kind;
    std::optional<double> jump_sigma;
    std::optional<double> jump_a;
    std::optional<double> jump_b;
    std::optional<std::uint64_t> n;
    std::optional<double> x0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> experiment;
    std::optional<double> horizon;      // key "T"
    std::optional<double> step;         // key "h"
    std::optional<double> time;         // key "t"
    std::optional<double> x;
    std::optional<std::string> g;
    std::optional<std::uint64_t> reps;
    std::optional<std::uint64_t> k;
    std::optional<std::vector<std::uint64_t>> n_grid;
    std::optional<std::vector<double>> x_grid;
    std::optional<std::vector<std::pair<double, std::uint64_t>>> schedule;
    std::optional<std::vector<double>> k_horizons;
    std::optional<double> epsilon;
    std::optional<std::string> output_dir;  // key "output.dir"

    bool operator==(const RunConfig&) const = default;
};

// Parses configuration text.  Throws std::invalid_argument with a line-tagged
// message on malformed lines, unparseable values, or unknown keys.
RunConfig parse_config(const std::string& text);

// Reads and parses a configuration file.  Throws std::runtime_error when the
// file cannot be read and std::invalid_argument on parse failure.
RunConfig parse_config_file(const std::string& path);

// Serializes the set fields in canonical order with round-trip precision.
std::string emit_config(const RunConfig& config);

// Builds the model described by the configuration.  Throws
// std::invalid_argument when required keys are missing or inconsistent.
ModelSpec build_model(const RunConfig& config);

}  // namespace hawkes
