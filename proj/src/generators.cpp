#include "hawkes/generators.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "hawkes/quadrature.hpp"
#include "hawkes/stats.hpp"

namespace hawkes {

double apply_A_bar(const TestFunction& g, const ModelSpec& spec, double x) {
    return -spec.alpha * x * g.g1(x) + 0.5 * spec.sigma2() * spec.f(x) * g.g2(x);
}

namespace {

double jump_expectation(const TestFunction& g, const JumpDistribution& mu,
                        double x, double inv_sqrt_n) {
    switch (mu.kind()) {
        case JumpDistribution::Kind::two_point: {
            const double gx = g.g(x);
            return mu.prob_a() * (g.g(x + mu.atom_a() * inv_sqrt_n) - gx) +
                   mu.prob_b() * (g.g(x + mu.atom_b() * inv_sqrt_n) - gx);
        }
        case JumpDistribution::Kind::gaussian: {
            const double gx = g.g(x);
            const double scaled_var = mu.variance() * inv_sqrt_n * inv_sqrt_n;
            const auto shifted = [&](double u) { return g.g(u); };
            const double coarse = gauss_hermite_expect(shifted, x, scaled_var, 64);
            const double fine = gauss_hermite_expect(shifted, x, scaled_var, 128);
            const double scale = std::max({1.0, std::abs(coarse), std::abs(fine)});
            if (std::abs(fine - coarse) > 1e-10 * scale) {
                throw std::runtime_error(
                    "Gauss-Hermite node doubling failed to converge");
            }
            return fine - gx;
        }
        case JumpDistribution::Kind::user_defined:
            break;
    }
    throw std::invalid_argument(
        "jump expectation needs a two_point or gaussian mark law");
}

}  // namespace

double apply_A_N(const TestFunction& g, const ModelSpec& spec, double x) {
    const double n = static_cast<double>(spec.n_components);
    const double inv_sqrt_n = 1.0 / std::sqrt(n);
    return -spec.alpha * x * g.g1(x) +
           n * spec.f(x) * jump_expectation(g, spec.mu, x, inv_sqrt_n);
}

double gap_bound(const TestFunction& g, const ModelSpec& spec, double x) {
    const double n = static_cast<double>(spec.n_components);
    return spec.f(x) * g.norm_g3 * spec.mu.abs_third_moment() /
           (6.0 * std::sqrt(n));
}

GapReport gap_check(const TestFunction& g, const ModelSpec& spec,
                    std::span<const double> x_grid,
                    std::span<const std::uint64_t> n_grid) {
    for (double x : x_grid) {
        if (std::abs(x) > g.interval_radius) {
            throw std::invalid_argument(
                "grid point outside the interval where the norms of " + g.name +
                " hold");
        }
    }
    GapReport report;
    report.g_name = g.name;
    std::vector<double> log_n, log_max_gap;
    for (std::uint64_t n : n_grid) {
        ModelSpec local = spec;
        local.n_components = n;
        double max_gap = 0.0;
        for (double x : x_grid) {
            const double gap = std::abs(apply_A_N(g, local, x) -
                                        apply_A_bar(g, local, x));
            const double bound = gap_bound(g, local, x);
            report.table.push_back(GapEntry{x, n, gap, bound});
            max_gap = std::max(max_gap, gap);
            if (bound > 0.0) {
                report.worst_ratio = std::max(report.worst_ratio, gap / bound);
            }
            if (gap > bound + 1e-10) {
                report.violations.push_back(GapViolation{x, n, gap, bound});
            }
        }
        if (max_gap > 0.0) {
            log_n.push_back(std::log(static_cast<double>(n)));
            log_max_gap.push_back(std::log(max_gap));
        }
    }
    if (log_n.size() >= 2) {
        report.slope = fit_line(log_n, log_max_gap).slope;
    }
    return report;
}

std::string gap_report_json(const GapReport& report) {
    nlohmann::ordered_json j;
    j["g_name"] = report.g_name;
    j["worst_ratio"] = report.worst_ratio;
    j["violations"] = nlohmann::ordered_json::array();
    for (const GapViolation& v : report.violations) {
        j["violations"].push_back(
            {{"x", v.x}, {"n", v.n}, {"gap", v.gap}, {"bound", v.bound}});
    }
    j["slope"] = report.slope;
    j["table"] = nlohmann::ordered_json::array();
    for (const GapEntry& e : report.table) {
        j["table"].push_back(
            {{"x", e.x}, {"n", e.n}, {"gap", e.gap}, {"bound", e.bound}});
    }
    return j.dump(2);
}

}  // namespace hawkes
