#include "hawkes/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hawkes/errors.hpp"
#include "hawkes/generators.hpp"
#include "hawkes/hawkes_engine.hpp"
#include "hawkes/limit_engine.hpp"
#include "hawkes/mc_lab.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/stationary.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/test_function.hpp"

namespace hawkes {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Assertion {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
};

struct Outputs {
    ordered_json tables = ordered_json::object();
    std::vector<Assertion> assertions;
    // Relative file name -> full content, written after the run succeeds.
    std::vector<std::pair<std::string, std::string>> files;
};

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double require_value(const std::optional<double>& value, const char* key) {
    if (!value) {
        throw std::invalid_argument(std::string("config: missing key '") + key +
                                    "'");
    }
    return *value;
}

TestFunction resolve_g(RunConfig& resolved) {
    if (!resolved.g) resolved.g = "sin";
    return TestFunction::by_name(*resolved.g);
}

ordered_json richardson_json(const RichardsonCheck& check) {
    ordered_json j;
    j["estimate_h"] = check.estimate_h;
    j["estimate_half"] = check.estimate_half;
    j["delta"] = check.delta;
    j["delta_sem"] = check.delta_sem;
    j["threshold"] = check.threshold;
    j["pass"] = check.pass;
    j["reps"] = check.reps;
    return j;
}

void run_simulate_n(const ModelSpec& spec, RunConfig& resolved,
                    std::uint64_t seed, const RunOptions&, Outputs& out) {
    const double horizon = require_value(resolved.horizon, "T");
    RngStream rng = derive_stream(seed, "run.simulate-n", 0);
    const SimulationResult result = simulate(spec, horizon, rng);
    out.tables["n_events"] = result.log.events.size();
    out.tables["final_state"] = state_at(result.path, horizon);
    out.tables["horizon"] = horizon;
    std::ostringstream events, path;
    write_events_csv(result.log, events);
    write_skeleton_csv(result.path, path);
    out.files.emplace_back("events.csv", events.str());
    out.files.emplace_back("path.csv", path.str());
}

void run_simulate_limit(const ModelSpec& spec, RunConfig& resolved,
                        std::uint64_t seed, const RunOptions&, Outputs& out) {
    const double horizon = require_value(resolved.horizon, "T");
    if (!resolved.step) resolved.step = 1e-3;
    RngStream rng = derive_stream(seed, "run.simulate-limit", 0);
    const GridPath path = simulate_em(spec, horizon, *resolved.step, rng);
    out.tables["final_state"] = path.values.back();
    out.tables["steps"] = path.values.size() - 1;
    out.tables["horizon"] = horizon;
    std::ostringstream path_csv;
    write_grid_csv(path, path_csv);
    out.files.emplace_back("path.csv", path_csv.str());
    if (resolved.k) {
        RngStream cox_rng = derive_stream(seed, "run.simulate-limit.cox", 0);
        const CoxLog log = cox_counts(path, spec.f, *resolved.k, cox_rng);
        ordered_json counts = ordered_json::array();
        for (const auto& component : log.times) counts.push_back(component.size());
        out.tables["cox_counts"] = std::move(counts);
        std::ostringstream cox_csv;
        write_cox_csv(log, cox_csv);
        out.files.emplace_back("cox_events.csv", cox_csv.str());
    }
}

void run_generator_gap(const ModelSpec& spec, RunConfig& resolved,
                       std::uint64_t, const RunOptions& options, Outputs& out) {
    const TestFunction g = resolve_g(resolved);
    if (!resolved.x_grid) {
        resolved.x_grid = std::vector<double>{-3, -2, -1, 0, 1, 2, 3};
    }
    if (!resolved.n_grid) {
        resolved.n_grid = std::vector<std::uint64_t>{10, 100, 1000, 10000};
    }
    const GapReport report =
        gap_check(g, spec, *resolved.x_grid, *resolved.n_grid);
    out.tables = ordered_json::parse(gap_report_json(report));
    out.assertions.push_back(
        {"gap_within_bound", report.pass(), report.worst_ratio, 0.0, 1.0});
    const bool symmetric = spec.mu.third_moment() == 0.0;
    const double expected = symmetric ? -1.0 : -0.5;
    const double tol = symmetric ? 0.1 : 0.05;
    out.assertions.push_back({"gap_slope",
                              std::abs(report.slope - expected) <= tol,
                              report.slope, expected, tol});
    if (options.emit_paths) {
        std::string csv = "x,n,gap,bound\n";
        for (const GapEntry& entry : report.table) {
            csv += format_g17(entry.x) + "," + std::to_string(entry.n) + "," +
                   format_g17(entry.gap) + "," + format_g17(entry.bound) + "\n";
        }
        out.files.emplace_back("gap_table.csv", std::move(csv));
    }
}

void run_semigroup_rate(const ModelSpec& spec, RunConfig& resolved,
                        std::uint64_t seed, const RunOptions& options,
                        Outputs& out) {
    const TestFunction g = resolve_g(resolved);
    const double t = require_value(resolved.time, "t");
    if (!resolved.x) resolved.x = resolved.x0.value_or(0.0);
    if (!resolved.n_grid) {
        resolved.n_grid = std::vector<std::uint64_t>{10, 40, 160, 640};
    }
    if (!resolved.reps) resolved.reps = 10000;
    if (!resolved.step) resolved.step = 1e-3;
    const RateReport report =
        rate_experiment(spec, g, *resolved.x, t, *resolved.n_grid,
                        *resolved.reps, *resolved.step, seed, options.workers);
    ordered_json limit;
    limit["mean"] = report.limit.mean;
    limit["sem"] = report.limit.sem;
    limit["reps"] = report.limit.reps;
    out.tables["limit"] = std::move(limit);
    ordered_json rows = ordered_json::array();
    for (const RateRow& row : report.table) {
        ordered_json r;
        r["n"] = row.n;
        r["estimate"] = row.estimate;
        r["estimate_sem"] = row.estimate_sem;
        r["error"] = row.error;
        r["sem"] = row.sem;
        rows.push_back(std::move(r));
    }
    out.tables["rows"] = std::move(rows);
    out.tables["slope"] = report.slope;
    out.tables["intercept"] = report.intercept;
    out.tables["slope_half_width"] = report.slope_half_width;
    out.tables["rows_used"] = report.rows_used;
    out.tables["resolvable"] = report.resolvable;
    out.tables["richardson"] = richardson_json(report.richardson);
    out.assertions.push_back({"richardson_step_resolved", report.richardson.pass,
                              report.richardson.delta, 0.0,
                              report.richardson.threshold});
    const double expected = spec.mu.third_moment() == 0.0 ? -1.0 : -0.5;
    const double tol = 0.2;
    out.assertions.push_back(
        {"rate_slope_in_band",
         report.resolvable && std::abs(report.slope - expected) <= tol,
         report.slope, expected, tol});
    if (options.emit_paths) {
        std::string csv = "n,estimate,estimate_sem,error,sem\n";
        for (const RateRow& row : report.table) {
            csv += std::to_string(row.n) + "," + format_g17(row.estimate) + "," +
                   format_g17(row.estimate_sem) + "," + format_g17(row.error) +
                   "," + format_g17(row.sem) + "\n";
        }
        out.files.emplace_back("rate_table.csv", std::move(csv));
    }
}

void run_invariant_law(const ModelSpec& spec, RunConfig& resolved,
                       std::uint64_t seed, const RunOptions& options,
                       Outputs& out) {
    const double horizon = require_value(resolved.horizon, "T");
    if (!resolved.reps) resolved.reps = 10000;
    const InvariantDensity density(spec);
    const std::vector<double> samples =
        long_run_law(spec, horizon, *resolved.reps, seed, options.workers);
    const double w1 = wasserstein1(samples, density);
    RngStream boot = derive_stream(seed, "run.invariant-law.bootstrap", 0);
    const double w1_sem = wasserstein1_bootstrap_sem(samples, density, boot);
    const KsResult ks =
        ks_test(samples, [&density](double x) { return density.cdf(x); });
    out.tables["w1"] = w1;
    out.tables["w1_sem"] = w1_sem;
    out.tables["ks_statistic"] = ks.statistic;
    out.tables["ks_p_value"] = ks.p_value;
    out.tables["reps"] = *resolved.reps;
    out.tables["horizon"] = horizon;
    out.tables["density_radius"] = density.radius();
    out.tables["density_normalizer"] = density.normalizer();
    out.assertions.push_back({"w1_close_to_invariant", w1 <= 0.05, w1, 0.0, 0.05});
    if (options.emit_paths) {
        std::ostringstream density_csv;
        density.write_csv(density_csv);
        out.files.emplace_back("density.csv", density_csv.str());
        std::string samples_csv = "x\n";
        for (double x : samples) samples_csv += format_g17(x) + "\n";
        out.files.emplace_back("samples.csv", std::move(samples_csv));
    }
}

void run_chaos_test(const ModelSpec& spec, RunConfig& resolved,
                    std::uint64_t seed, const RunOptions& options, Outputs& out) {
    const double horizon = require_value(resolved.horizon, "T");
    if (!resolved.k) resolved.k = 2;
    if (!resolved.reps) resolved.reps = 10000;
    if (!resolved.step) resolved.step = 1e-3;
    const ChaosReport report =
        chaos_covariance(spec, horizon, *resolved.k, *resolved.reps,
                         *resolved.step, seed, options.workers);
    out.tables["cov_n"] = report.cov_n;
    out.tables["cov_sem"] = report.cov_sem;
    out.tables["var_lambda"] = report.var_lambda;
    out.tables["var_sem"] = report.var_sem;
    out.tables["combined_sem"] = report.combined_sem;
    out.tables["mean_pair_count"] = report.mean_pair_count;
    out.assertions.push_back({"chaos_covariance_identity", report.pass,
                              report.cov_n, report.var_lambda,
                              4.0 * report.combined_sem});
}

void run_joint_limit(const ModelSpec& spec, RunConfig& resolved,
                     std::uint64_t seed, const RunOptions& options,
                     Outputs& out) {
    if (!resolved.schedule) {
        throw std::invalid_argument("config: missing key 'schedule'");
    }
    if (!resolved.reps) resolved.reps = 10000;
    const JointLimitReport report = joint_limit_experiment(
        spec, *resolved.schedule, *resolved.reps, seed, options.workers);
    ordered_json rows = ordered_json::array();
    for (const JointLimitRow& row : report.rows) {
        ordered_json r;
        r["t"] = row.t;
        r["n"] = row.n;
        r["w1"] = row.w1;
        r["sem"] = row.sem;
        rows.push_back(std::move(r));
    }
    out.tables["rows"] = std::move(rows);
    out.tables["decreasing"] = report.decreasing;
    // Worst standardized increase between consecutive rows; the schedule is
    // accepted when every increase stays below one combined sem.
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < report.rows.size(); ++j) {
        const double combined =
            std::sqrt(report.rows[j].sem * report.rows[j].sem +
                      report.rows[j + 1].sem * report.rows[j + 1].sem);
        if (combined > 0.0) {
            worst = std::max(
                worst, (report.rows[j + 1].w1 - report.rows[j].w1) / combined);
        }
    }
    out.tables["worst_standardized_increase"] = worst;
    out.assertions.push_back(
        {"w1_decreasing", report.decreasing, worst, 0.0, 1.0});
    if (options.emit_paths) {
        std::string csv = "t,n,w1,sem\n";
        for (const JointLimitRow& row : report.rows) {
            csv += format_g17(row.t) + "," + std::to_string(row.n) + "," +
                   format_g17(row.w1) + "," + format_g17(row.sem) + "\n";
        }
        out.files.emplace_back("joint_table.csv", std::move(csv));
    }
}

void run_constants(const ModelSpec& spec, RunConfig& resolved, std::uint64_t,
                   const RunOptions&, Outputs& out) {
    if (!resolved.k_horizons) resolved.k_horizons = std::vector<double>{1.0, 10.0};
    const double sigma2 = spec.sigma2();
    const double L = spec.f.lipschitz_sqrt();
    if (!resolved.epsilon) {
        resolved.epsilon = default_epsilon(spec.alpha, sigma2, L);
    }
    out.tables["beta"] = beta(spec.alpha, sigma2, L);
    out.tables["epsilon"] = *resolved.epsilon;
    out.tables["sharp_regime"] = spec.alpha > (7.0 / 6.0) * sigma2 * L * L;
    ordered_json k_values;
    for (double horizon : *resolved.k_horizons) {
        k_values[format_g17(horizon)] =
            k_horizon(spec.alpha, sigma2, L, horizon, *resolved.epsilon);
    }
    out.tables["K"] = std::move(k_values);
    std::cout << out.tables.dump(2) << "\n";
}

void run_validate(const ModelSpec& spec, RunConfig&, std::uint64_t,
                  const RunOptions&, Outputs& out) {
    const ValidationReport report = validate(spec);
    out.tables["beta"] = report.beta;
    out.tables["epsilon"] = report.epsilon;
    out.tables["sharp_regime"] = report.sharp_regime;
    ordered_json checks = ordered_json::array();
    for (const ValidationCheck& check : report.checks) {
        ordered_json c;
        c["name"] = check.name;
        c["pass"] = check.pass;
        c["detail"] = check.detail;
        checks.push_back(std::move(c));
        out.assertions.push_back({check.name, check.pass, 0.0, 0.0, 0.0});
    }
    out.tables["checks"] = std::move(checks);
}

std::string canonical_experiment(const std::string& name) {
    return name == "simulate" ? std::string("simulate-n") : name;
}

}  // namespace

int run_experiment(const std::string& subcommand, const RunConfig& config,
                   const RunOptions& options) {
    try {
        RunConfig resolved = config;
        if (config.experiment &&
            canonical_experiment(*config.experiment) != subcommand) {
            throw std::invalid_argument("config: experiment '" +
                                        *config.experiment +
                                        "' does not match subcommand '" +
                                        subcommand + "'");
        }
        resolved.experiment = subcommand;
        // Output placement never enters the config echo, so summaries written to
        // different directories stay byte-identical.
        resolved.output_dir.reset();
        if (options.seed) resolved.seed = *options.seed;
        if (!resolved.seed) resolved.seed = 0;
        if (!resolved.x0) resolved.x0 = 0.0;
        const std::uint64_t seed = *resolved.seed;

        const ModelSpec spec = build_model(resolved);
        if (!(spec.alpha > 0.0)) {
            throw std::invalid_argument("config: alpha must be positive");
        }
        if (spec.n_components < 1) {
            throw std::invalid_argument("config: n must be at least 1");
        }

        Outputs out;
        if (subcommand == "simulate-n") {
            run_simulate_n(spec, resolved, seed, options, out);
        } else if (subcommand == "simulate-limit") {
            run_simulate_limit(spec, resolved, seed, options, out);
        } else if (subcommand == "generator-gap") {
            run_generator_gap(spec, resolved, seed, options, out);
        } else if (subcommand == "semigroup-rate") {
            run_semigroup_rate(spec, resolved, seed, options, out);
        } else if (subcommand == "invariant-law") {
            run_invariant_law(spec, resolved, seed, options, out);
        } else if (subcommand == "chaos-test") {
            run_chaos_test(spec, resolved, seed, options, out);
        } else if (subcommand == "joint-limit") {
            run_joint_limit(spec, resolved, seed, options, out);
        } else if (subcommand == "constants") {
            run_constants(spec, resolved, seed, options, out);
        } else if (subcommand == "validate") {
            run_validate(spec, resolved, seed, options, out);
        } else {
            throw std::invalid_argument("unknown subcommand '" + subcommand +
                                        "'");
        }

        const std::string echo = emit_config(resolved);
        ordered_json summary;
        summary["config_echo"] = echo;
        summary["seed"] = seed;
        summary["tables"] = out.tables;
        ordered_json assertions = ordered_json::array();
        bool all_pass = true;
        for (const Assertion& a : out.assertions) {
            ordered_json j;
            j["name"] = a.name;
            j["pass"] = a.pass;
            j["lhs"] = a.lhs;
            j["rhs"] = a.rhs;
            j["tol"] = a.tol;
            assertions.push_back(std::move(j));
            all_pass = all_pass && a.pass;
        }
        summary["assertions"] = std::move(assertions);

        namespace fs = std::filesystem;
        const fs::path dir = options.out_dir
                                 ? *options.out_dir
                                 : config.output_dir ? *config.output_dir : ".";
        fs::create_directories(dir);
        const auto write_file = [&dir](const std::string& name,
                                       const std::string& content) {
            const fs::path path = dir / name;
            std::ofstream file(path, std::ios::binary);
            if (!file) {
                throw std::runtime_error("cannot write " + path.string());
            }
            file << content;
        };
        write_file("summary.json", summary.dump(2) + "\n");
        write_file("config_resolved.txt", echo);
        for (const auto& [name, content] : out.files) write_file(name, content);

        for (const Assertion& a : out.assertions) {
            std::printf("[%s] %s  lhs=%.17g rhs=%.17g tol=%.17g\n",
                        a.pass ? "PASS" : "FAIL", a.name.c_str(), a.lhs, a.rhs,
                        a.tol);
        }
        std::printf("wrote %s\n", (dir / "summary.json").string().c_str());
        return all_pass ? 0 : 1;
    } catch (const SimulationError& error) {
        std::cerr << "runtime abort: " << error.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& error) {
        std::cerr << "config error: " << error.what() << "\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 3;
    }
}

}  // namespace hawkes
