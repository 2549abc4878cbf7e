#include "hawkes/mc_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hawkes/hawkes_engine.hpp"
#include "hawkes/limit_engine.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/stationary.hpp"
#include "hawkes/stats.hpp"

namespace hawkes {

MCEstimate semigroup_n(const ModelSpec& spec, const TestFunction& g, double x,
                       double t, std::uint64_t reps, std::uint64_t master_seed,
                       int workers, std::string_view stream_tag) {
    if (reps < 1) throw std::invalid_argument("need at least one replication");
    ModelSpec local = spec;
    local.x0 = x;
    if (t == 0.0) return MCEstimate{g.g(x), 0.0, reps};
    std::vector<double> values(reps);
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, stream_tag, r);
        values[r] = g.g(simulate_terminal(local, t, rng));
    });
    const MeanSem ms = mean_sem(values);
    return MCEstimate{ms.mean, ms.sem, reps};
}

MCEstimate semigroup_limit(const ModelSpec& spec, const TestFunction& g, double x,
                           double t, double h, std::uint64_t reps,
                           std::uint64_t master_seed, int workers,
                           std::string_view stream_tag) {
    if (reps < 1) throw std::invalid_argument("need at least one replication");
    ModelSpec local = spec;
    local.x0 = x;
    if (t == 0.0) return MCEstimate{g.g(x), 0.0, reps};
    std::vector<double> values(reps);
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, stream_tag, r);
        values[r] = g.g(simulate_em_terminal(local, t, h, rng));
    });
    const MeanSem ms = mean_sem(values);
    return MCEstimate{ms.mean, ms.sem, reps};
}

RichardsonCheck richardson_check(const ModelSpec& spec, const TestFunction& g,
                                 double x, double t, double h, std::uint64_t reps,
                                 std::uint64_t master_seed, int workers) {
    if (reps < 2) throw std::invalid_argument("need at least two replications");
    ModelSpec local = spec;
    local.x0 = x;
    std::vector<double> coarse(reps), fine(reps), diff(reps);
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, "richardson", r);
        const CoupledTerminal pair = simulate_em_coupled_terminal(local, t, h, rng);
        coarse[r] = g.g(pair.coarse);
        fine[r] = g.g(pair.fine);
        diff[r] = coarse[r] - fine[r];
    });
    RichardsonCheck check;
    check.reps = reps;
    check.estimate_h = mean_sem(coarse).mean;
    check.estimate_half = mean_sem(fine).mean;
    const MeanSem d = mean_sem(diff);
    check.delta = std::abs(d.mean);
    check.delta_sem = d.sem;
    return check;
}

RateFit fit_rate_rows(std::span<const RateRow> rows) {
    RateFit fit;
    std::vector<double> log_n, log_err;
    for (const RateRow& row : rows) {
        if (row.error > 3.0 * row.sem && row.error > 0.0) {
            log_n.push_back(std::log(static_cast<double>(row.n)));
            log_err.push_back(std::log(row.error));
        }
    }
    fit.rows_used = log_n.size();
    fit.resolvable = fit.rows_used >= 3;
    if (fit.rows_used >= 2) {
        const LineFit line = fit_line(log_n, log_err);
        fit.slope = line.slope;
        fit.intercept = line.intercept;
        fit.half_width = 2.0 * line.slope_se;
    }
    return fit;
}

RateReport rate_experiment(const ModelSpec& spec, const TestFunction& g, double x,
                           double t, std::span<const std::uint64_t> n_grid,
                           std::uint64_t reps, double h, std::uint64_t master_seed,
                           int workers) {
    if (n_grid.empty()) throw std::invalid_argument("empty N grid");
    RateReport report;
    report.limit = semigroup_limit(spec, g, x, t, h, reps, master_seed, workers,
                                   "rate.limit");
    std::vector<std::uint64_t> ns(n_grid.begin(), n_grid.end());
    std::sort(ns.begin(), ns.end());
    for (std::uint64_t n : ns) {
        ModelSpec local = spec;
        local.n_components = n;
        const std::string tag = "rate.hawkes.n" + std::to_string(n);
        const MCEstimate side =
            semigroup_n(local, g, x, t, reps, master_seed, workers, tag);
        RateRow row;
        row.n = n;
        row.estimate = side.mean;
        row.estimate_sem = side.sem;
        row.error = std::abs(side.mean - report.limit.mean);
        row.sem = std::sqrt(side.sem * side.sem +
                            report.limit.sem * report.limit.sem);
        report.table.push_back(row);
    }
    const RateFit fit = fit_rate_rows(report.table);
    report.slope = fit.slope;
    report.intercept = fit.intercept;
    report.slope_half_width = fit.half_width;
    report.rows_used = fit.rows_used;
    report.resolvable = fit.resolvable;

    // Step check against the smallest gap the fit actually uses.
    double smallest_resolved = 0.0;
    for (const RateRow& row : report.table) {
        if (row.error > 3.0 * row.sem) {
            smallest_resolved = smallest_resolved == 0.0
                                    ? row.error
                                    : std::min(smallest_resolved, row.error);
        }
    }
    const std::uint64_t guard_reps = std::max<std::uint64_t>(reps / 8, 20000);
    report.richardson =
        richardson_check(spec, g, x, t, h, guard_reps, master_seed, workers);
    if (smallest_resolved > 0.0) {
        report.richardson.threshold = smallest_resolved / 5.0;
        report.richardson.pass =
            report.richardson.delta < report.richardson.threshold;
    }
    return report;
}

MomentCurve moment_curve(const ModelSpec& spec, std::span<const double> times,
                         std::uint64_t reps, std::uint64_t master_seed,
                         int workers) {
    if (times.empty()) throw std::invalid_argument("empty time grid");
    if (!std::is_sorted(times.begin(), times.end())) {
        throw std::invalid_argument("times must be sorted");
    }
    if (reps < 2) throw std::invalid_argument("need at least two replications");
    const std::size_t m = times.size();
    std::vector<double> states(reps * m);
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, "moment.curve", r);
        simulate_observed(spec, times, rng,
                          std::span<double>(states.data() + r * m, m));
    });
    MomentCurve curve;
    std::vector<double> m2(reps), m4(reps);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::uint64_t r = 0; r < reps; ++r) {
            const double x = states[r * m + j];
            m2[r] = x * x;
            m4[r] = x * x * x * x;
        }
        const MeanSem s2 = mean_sem(m2);
        const MeanSem s4 = mean_sem(m4);
        curve.rows.push_back(MomentRow{times[j], s2.mean, s2.sem, s4.mean, s4.sem});
    }
    // Trend of the second moment over the last half of the grid; the slope
    // standard error propagates the per-point sems through the OLS weights.
    const std::size_t start = m / 2;
    const std::size_t used = m - start;
    if (used >= 2) {
        double tbar = 0.0;
        for (std::size_t j = start; j < m; ++j) tbar += times[j];
        tbar /= static_cast<double>(used);
        double sxx = 0.0;
        for (std::size_t j = start; j < m; ++j) {
            sxx += (times[j] - tbar) * (times[j] - tbar);
        }
        double slope = 0.0, var = 0.0;
        for (std::size_t j = start; j < m; ++j) {
            const double w = (times[j] - tbar) / sxx;
            slope += w * curve.rows[j].m2;
            var += w * w * curve.rows[j].m2_sem * curve.rows[j].m2_sem;
        }
        curve.trend_slope = slope;
        curve.trend_slope_se = std::sqrt(var);
    }
    return curve;
}

ChaosReport chaos_covariance(const ModelSpec& spec, double horizon,
                             std::uint64_t k, std::uint64_t reps, double h,
                             std::uint64_t master_seed, int workers) {
    if (k < 2) throw std::invalid_argument("need at least two components");
    if (reps < 2) throw std::invalid_argument("need at least two replications");
    std::vector<double> z1(reps), z2(reps), lambda(reps);
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, "chaos.hawkes", r);
        const auto counts = simulate_pair_counts(spec, horizon, rng);
        z1[r] = static_cast<double>(counts.first);
        z2[r] = static_cast<double>(counts.second);
    });
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, "chaos.brownian", r);
        lambda[r] = simulate_em_terminal_integral(spec, horizon, h, rng).integral;
    });
    ChaosReport report;
    const CovarianceEstimate cov = covariance_with_sem(z1, z2);
    const VarianceEstimate var = variance_with_sem(lambda);
    report.cov_n = cov.covariance;
    report.cov_sem = cov.sem;
    report.var_lambda = var.variance;
    report.var_sem = var.sem;
    report.combined_sem = std::sqrt(cov.sem * cov.sem + var.sem * var.sem);
    report.mean_pair_count = 0.5 * (mean_sem(z1).mean + mean_sem(z2).mean);
    report.pass = std::abs(report.cov_n - report.var_lambda) <=
                  4.0 * report.combined_sem;
    return report;
}

JointLimitReport joint_limit_experiment(
    const ModelSpec& spec, std::span<const std::pair<double, std::uint64_t>> schedule,
    std::uint64_t reps, std::uint64_t master_seed, int workers) {
    if (schedule.empty()) throw std::invalid_argument("empty schedule");
    const InvariantDensity density(spec);
    JointLimitReport report;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        ModelSpec local = spec;
        local.n_components = schedule[j].second;
        std::vector<double> samples(reps);
        const std::string tag = "joint.hawkes." + std::to_string(j);
        replicate(reps, workers, [&](std::uint64_t r) {
            RngStream rng = derive_stream(master_seed, tag, r);
            samples[r] = simulate_terminal(local, schedule[j].first, rng);
        });
        RngStream boot = derive_stream(master_seed, "joint.bootstrap", j);
        JointLimitRow row;
        row.t = schedule[j].first;
        row.n = schedule[j].second;
        row.w1 = wasserstein1(samples, density);
        row.sem = wasserstein1_bootstrap_sem(samples, density, boot);
        report.rows.push_back(row);
    }
    for (std::size_t j = 0; j + 1 < report.rows.size(); ++j) {
        const double combined = std::sqrt(
            report.rows[j].sem * report.rows[j].sem +
            report.rows[j + 1].sem * report.rows[j + 1].sem);
        if (!(report.rows[j + 1].w1 < report.rows[j].w1 + combined)) {
            report.decreasing = false;
        }
    }
    return report;
}

}  // namespace hawkes
