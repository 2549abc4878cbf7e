#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/jump_distribution.hpp"
#include "hawkes/rate_function.hpp"

namespace hawkes {

// One fully specified finite-N system and, through (alpha, sigma^2, f), its
// diffusion limit.
struct ModelSpec {
    double alpha = 1.0;
    RateFunction f = RateFunction::quadratic();
    JumpDistribution mu = JumpDistribution::gaussian(1.0);
    std::uint64_t n_components = 100;
    double x0 = 0.0;

    double sigma2() const { return mu.variance(); }
};

// Growth exponent of the semigroup bound:
// beta = max(sigma^2 L^2 / 2 - alpha, 2 sigma^2 L^2 - 2 alpha,
//            7/2 sigma^2 L^2 - 3 alpha).
double beta(double alpha, double sigma2, double L);

// Horizon constant K_T = (1 + 1/eps) int_0^T (1 + s^2) e^{beta s}
// (1 + e^{(sigma^2 L^2 - 2 alpha + eps)(T - s)}) ds, by adaptive quadrature.
double k_horizon(double alpha, double sigma2, double L, double T, double epsilon);

// (2 alpha - sigma^2 L^2) / 2 when that is positive (it then makes the exponent
// sigma^2 L^2 - 2 alpha + eps negative), else 1.
double default_epsilon(double alpha, double sigma2, double L);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    double beta = 0.0;
    double epsilon = 0.0;
    bool sharp_regime = false;

    bool ok() const;
};

// Deterministic diagnostics: grid checks of f (positivity, sqrt-Lipschitz,
// envelope domination, quadratic growth) on [-R, R] and moment checks of mu from
// a fixed internal stream. Failures are named diagnostics, never exceptions.
ValidationReport validate(const ModelSpec& spec, double grid_radius = 20.0,
                          std::size_t grid_points = 2001);

}  // namespace hawkes
