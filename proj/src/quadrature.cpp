#include "hawkes/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hawkes {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b,
                double fb, double m, double fm, double whole,
                const QuadratureControl& control, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    const double tol =
        std::max(control.abs_tol, control.rel_tol * std::abs(left + right));
    if (depth >= control.max_depth || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive(f, a, fa, m, fm, lm, flm, left, control, depth + 1) +
           adaptive(f, m, fm, b, fb, rm, frm, right, control, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureControl control) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    return adaptive(f, a, fa, b, fb, m, fm, whole, control, 0);
}

namespace {

// Hermite polynomials (physicists'): H_{n+1} = 2y H_n - 2n H_{n-1}. Roots found by
// Newton from the standard asymptotic initial guesses, largest root first.
GaussHermiteRule build_gauss_hermite(int n) {
    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Orthonormal recurrence keeps values in range for large n.
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1) rule.nodes[half - 1] = 0.0;
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
    static std::map<int, GaussHermiteRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, build_gauss_hermite(order)).first;
    }
    return it->second;
}

double gauss_hermite_expect(const std::function<double(double)>& g, double mean,
                            double variance, int order) {
    if (variance < 0.0) throw std::invalid_argument("negative variance");
    const GaussHermiteRule& rule = gauss_hermite(order);
    const double scale = std::sqrt(2.0 * variance);
    const double inv_sqrt_pi = 0.5641895835477563;
    double sum = 0.0;
    // Symmetric accumulation from the outermost (smallest-weight) nodes inward.
    for (int i = static_cast<int>(rule.nodes.size()) - 1; i >= 0; --i) {
        sum += rule.weights[i] * g(mean + scale * rule.nodes[i]);
    }
    return sum * inv_sqrt_pi;
}

}  // namespace hawkes
