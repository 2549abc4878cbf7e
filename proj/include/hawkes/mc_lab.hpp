#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hawkes/model.hpp"
#include "hawkes/test_function.hpp"

namespace hawkes {

// Monte Carlo experiments connecting the N-system to its diffusion limit. All
// replication loops derive one RNG stream per replication from (master_seed,
// stream tag, replication index) and reduce slot arrays in a fixed pairwise
// order, so every result is a pure function of (config, seed) regardless of the
// worker count.

struct MCEstimate {
    double mean = 0.0;
    double sem = 0.0;
    std::uint64_t reps = 0;
};

// Mean of g(X^N_t) over independent runs started at x.
MCEstimate semigroup_n(const ModelSpec& spec, const TestFunction& g, double x,
                       double t, std::uint64_t reps, std::uint64_t master_seed,
                       int workers = 1, std::string_view stream_tag = "semigroup.n");

// Mean of g(Xbar_t) over Euler-Maruyama paths started at x.
MCEstimate semigroup_limit(const ModelSpec& spec, const TestFunction& g, double x,
                           double t, double h, std::uint64_t reps,
                           std::uint64_t master_seed, int workers = 1,
                           std::string_view stream_tag = "semigroup.limit");

// Common-path comparison of the h and h/2 estimates; delta estimates the step
// bias gap with the Monte Carlo noise cancelled by the coupling.
struct RichardsonCheck {
    double estimate_h = 0.0;
    double estimate_half = 0.0;
    double delta = 0.0;
    double delta_sem = 0.0;
    double threshold = 0.0;  // 1/5 of the smallest resolved error
    bool pass = true;
    std::uint64_t reps = 0;
};

RichardsonCheck richardson_check(const ModelSpec& spec, const TestFunction& g,
                                 double x, double t, double h, std::uint64_t reps,
                                 std::uint64_t master_seed, int workers = 1);

struct RateRow {
    std::uint64_t n = 0;
    double error = 0.0;
    double sem = 0.0;        // combined: N side and limit side
    double estimate = 0.0;   // N-side mean
    double estimate_sem = 0.0;
};

struct RateReport {
    std::vector<RateRow> table;  // sorted by n
    MCEstimate limit;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_half_width = 0.0;  // two standard errors of the fitted slope
    std::size_t rows_used = 0;      // rows with error > 3 sem
    bool resolvable = false;        // at least 3 such rows
    RichardsonCheck richardson;
};

// Slope fit over the resolvable rows of a (N, error, sem) table; exposed so the
// regression can be exercised on synthetic data.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double half_width = 0.0;
    std::size_t rows_used = 0;
    bool resolvable = false;
};

RateFit fit_rate_rows(std::span<const RateRow> rows);

// error(N) = |E g(X^N_t) - E g(Xbar_t)| per N, slope from log N vs log error.
RateReport rate_experiment(const ModelSpec& spec, const TestFunction& g, double x,
                           double t, std::span<const std::uint64_t> n_grid,
                           std::uint64_t reps, double h, std::uint64_t master_seed,
                           int workers = 1);

struct MomentRow {
    double t = 0.0;
    double m2 = 0.0;
    double m2_sem = 0.0;
    double m4 = 0.0;
    double m4_sem = 0.0;
};

struct MomentCurve {
    std::vector<MomentRow> rows;
    // Trend of m2 over the last half of the grid: slope and its propagated
    // standard error; flat within noise in the sharp regime.
    double trend_slope = 0.0;
    double trend_slope_se = 0.0;
};

MomentCurve moment_curve(const ModelSpec& spec, std::span<const double> times,
                         std::uint64_t reps, std::uint64_t master_seed,
                         int workers = 1);

// Conditional-chaos identity: Cov(Z^1_T, Z^2_T) matches Var(int_0^T f(Xbar))
// because the components are conditionally independent Cox processes sharing
// the intensity path.
struct ChaosReport {
    double cov_n = 0.0;
    double cov_sem = 0.0;
    double var_lambda = 0.0;
    double var_sem = 0.0;
    double combined_sem = 0.0;
    double mean_pair_count = 0.0;
    bool pass = false;  // |cov_n - var_lambda| <= 4 combined sem
};

ChaosReport chaos_covariance(const ModelSpec& spec, double horizon,
                             std::uint64_t k, std::uint64_t reps, double h,
                             std::uint64_t master_seed, int workers = 1);

struct JointLimitRow {
    double t = 0.0;
    std::uint64_t n = 0;
    double w1 = 0.0;
    double sem = 0.0;  // bootstrap
};

struct JointLimitReport {
    std::vector<JointLimitRow> rows;
    // Strict decrease along the schedule, allowing one combined sem of slack.
    bool decreasing = true;
};

JointLimitReport joint_limit_experiment(
    const ModelSpec& spec, std::span<const std::pair<double, std::uint64_t>> schedule,
    std::uint64_t reps, std::uint64_t master_seed, int workers = 1);

}  // namespace hawkes
