#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hawkes/model.hpp"
#include "hawkes/test_function.hpp"

namespace hawkes {

// Pointwise evaluation of the two extended generators and the bound on their
// gap. The limit generator is
//   Abar g(x) = -alpha x g'(x) + (sigma^2 / 2) f(x) g''(x),
// the N-system generator is
//   A_N g(x) = -alpha x g'(x) + N f(x) E[g(x + U / sqrt N) - g(x)],
// and the gap obeys |A_N g - Abar g| <= f(x) ||g'''|| E|U|^3 / (6 sqrt N).

double apply_A_bar(const TestFunction& g, const ModelSpec& spec, double x);

// The jump expectation is closed-form for two_point marks and 64-node
// Gauss-Hermite for gaussian marks, guarded by node doubling (relative change
// below 1e-10, else an error).
double apply_A_N(const TestFunction& g, const ModelSpec& spec, double x);

double gap_bound(const TestFunction& g, const ModelSpec& spec, double x);

struct GapEntry {
    double x = 0.0;
    std::uint64_t n = 0;
    double gap = 0.0;
    double bound = 0.0;
};

struct GapViolation {
    double x = 0.0;
    std::uint64_t n = 0;
    double gap = 0.0;
    double bound = 0.0;
};

struct GapReport {
    std::string g_name;
    double worst_ratio = 0.0;  // max gap / bound over the grid
    std::vector<GapViolation> violations;
    double slope = 0.0;  // log-log fit of max gap vs N
    std::vector<GapEntry> table;

    bool pass() const { return violations.empty(); }
};

// Checks gap <= bound + 1e-10 at every (x, N) and fits the decay exponent of
// the max gap against N.
GapReport gap_check(const TestFunction& g, const ModelSpec& spec,
                    std::span<const double> x_grid,
                    std::span<const std::uint64_t> n_grid);

std::string gap_report_json(const GapReport& report);

}  // namespace hawkes
