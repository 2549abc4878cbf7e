#pragma once

#include <functional>
#include <vector>

namespace hawkes {

// Adaptive Simpson quadrature with interval bisection. Fixed tolerances keep every
// derived constant reproducible: absolute 1e-12, relative 1e-9, maximum depth 60.
struct QuadratureControl {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_depth = 60;
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureControl control = {});

// Gauss-Hermite rule for weight exp(-y^2) on the real line; nodes and weights are
// computed by Newton iteration on the Hermite recurrence and cached per order.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussHermiteRule& gauss_hermite(int order);

// E[g(Z)] for Z ~ Normal(mean, variance) by Gauss-Hermite of the given order.
double gauss_hermite_expect(const std::function<double(double)>& g, double mean,
                            double variance, int order);

}  // namespace hawkes
