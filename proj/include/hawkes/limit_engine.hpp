#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

// Simulation of the limit diffusion dX = -alpha X dt + sigma sqrt(f(X)) dB and
// of Cox counting processes driven by a sampled intensity path. f > 0 keeps
// sqrt(f) away from zero, so plain Euler-Maruyama needs no boundary handling.

struct GridPath {
    double step = 0.0;
    std::vector<double> values;  // values[k] = X(k h), k = 0..ceil(T/h)

    double horizon() const {
        return step * static_cast<double>(values.empty() ? 0 : values.size() - 1);
    }
};

struct CoxLog {
    std::vector<std::vector<double>> times;  // per component, sorted
    double horizon = 0.0;
};

// Euler-Maruyama path: X_{k+1} = X_k - alpha X_k h + sigma sqrt(f(X_k) h) xi_k.
GridPath simulate_em(const ModelSpec& spec, double horizon, double h,
                     RngStream& rng);

// Terminal value only.
double simulate_em_terminal(const ModelSpec& spec, double horizon, double h,
                            RngStream& rng);

// One Brownian increment stream at resolution h/2 drives both resolutions; the
// coarse path consumes pairwise sums of the fine increments. The difference
// isolates the step bias from the Monte Carlo noise (common-path Richardson
// comparison).
struct CoupledTerminal {
    double coarse = 0.0;  // step h
    double fine = 0.0;    // step h/2
};

CoupledTerminal simulate_em_coupled_terminal(const ModelSpec& spec, double horizon,
                                             double h, RngStream& rng);

// Left-endpoint Riemann sum of f along the path: int_0^T f(X_s) ds up to O(h).
double intensity_integral(const GridPath& path, const RateFunction& f);

// Terminal value and intensity integral from a single pass, no path storage.
struct TerminalAndIntegral {
    double terminal = 0.0;
    double integral = 0.0;
};

TerminalAndIntegral simulate_em_terminal_integral(const ModelSpec& spec,
                                                  double horizon, double h,
                                                  RngStream& rng);

// Exact Gaussian transitions for the constant-rate case (OU oracle):
// X(t') | X(t) ~ Normal(X(t) e^{-alpha dt}, sigma^2 (1 - e^{-2 alpha dt}) / (2 alpha)).
GridPath simulate_ou_exact(double alpha, double sigma, double x0,
                           std::span<const double> times, RngStream& rng);

// Conditionally on the path, each of k components receives an independent
// Poisson stream with intensity frozen at the left endpoint of each grid cell.
CoxLog cox_counts(const GridPath& path, const RateFunction& f, std::uint64_t k,
                  RngStream& rng);

void write_grid_csv(const GridPath& path, std::ostream& os);
void write_cox_csv(const CoxLog& log, std::ostream& os);

}  // namespace hawkes
