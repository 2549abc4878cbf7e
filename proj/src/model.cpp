#include "hawkes/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hawkes/quadrature.hpp"
#include "hawkes/stats.hpp"

namespace hawkes {

double beta(double alpha, double sigma2, double L) {
    const double s = sigma2 * L * L;
    return std::max({0.5 * s - alpha, 2.0 * s - 2.0 * alpha, 3.5 * s - 3.0 * alpha});
}

double k_horizon(double alpha, double sigma2, double L, double T, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (T < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    if (T == 0.0) return 0.0;
    const double b = beta(alpha, sigma2, L);
    const double tail_exponent = sigma2 * L * L - 2.0 * alpha + epsilon;
    const double integral = integrate(
        [b, tail_exponent, T](double s) {
            return (1.0 + s * s) * std::exp(b * s) *
                   (1.0 + std::exp(tail_exponent * (T - s)));
        },
        0.0, T);
    return (1.0 + 1.0 / epsilon) * integral;
}

double default_epsilon(double alpha, double sigma2, double L) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    const double gap = 2.0 * alpha - sigma2 * L * L;
    return gap > 0.0 ? 0.5 * gap : 1.0;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.pass; });
}

namespace {

ValidationCheck make_check(const std::string& name, bool pass,
                           const std::string& detail) {
    return ValidationCheck{name, pass, detail};
}

std::string format_at(const char* what, double x, double value) {
    std::ostringstream os;
    os << what << " at x=" << x << " (" << value << ")";
    return os.str();
}

}  // namespace

ValidationReport validate(const ModelSpec& spec, double grid_radius,
                          std::size_t grid_points) {
    ValidationReport report;
    const double L = spec.f.lipschitz_sqrt();
    report.beta = beta(spec.alpha, spec.sigma2(), L);
    // epsilon is only meaningful for a positive drift; keep the report
    // throw-free so every defect surfaces as a failed check instead.
    report.epsilon = spec.alpha > 0.0
                         ? default_epsilon(spec.alpha, spec.sigma2(), L)
                         : std::numeric_limits<double>::quiet_NaN();
    report.sharp_regime = spec.alpha > (7.0 / 6.0) * spec.sigma2() * L * L;

    report.checks.push_back(make_check("alpha_positive", spec.alpha > 0.0,
                                       spec.alpha > 0.0 ? "ok" : "alpha must be positive"));
    report.checks.push_back(
        make_check("n_components_positive", spec.n_components >= 1,
                   spec.n_components >= 1 ? "ok" : "need at least one component"));

    // Grid diagnostics for f. Tolerances absorb double rounding only; a genuine
    // violation dwarfs them.
    const std::size_t m = std::max<std::size_t>(grid_points, 3);
    std::vector<double> xs(m), fx(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = -grid_radius +
                2.0 * grid_radius * static_cast<double>(i) / static_cast<double>(m - 1);
        fx[i] = spec.f(xs[i]);
    }

    bool positive = true;
    std::string positive_detail = "ok";
    for (std::size_t i = 0; i < m; ++i) {
        if (!(fx[i] > 0.0) || !std::isfinite(fx[i])) {
            positive = false;
            positive_detail = format_at("nonpositive rate", xs[i], fx[i]);
            break;
        }
    }
    report.checks.push_back(make_check("rate_positive", positive, positive_detail));

    bool lipschitz = true;
    std::string lipschitz_detail = "ok";
    if (positive) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double lhs = std::abs(std::sqrt(fx[i + 1]) - std::sqrt(fx[i]));
            const double rhs = L * (xs[i + 1] - xs[i]);
            if (lhs > rhs * (1.0 + 1e-9) + 1e-12) {
                lipschitz = false;
                lipschitz_detail = format_at("sqrt-Lipschitz violated", xs[i], lhs - rhs);
                break;
            }
        }
    }
    report.checks.push_back(
        make_check("sqrt_lipschitz", lipschitz, lipschitz_detail));

    bool envelope_ok = true;
    std::string envelope_detail = "ok";
    for (std::size_t i = 0; i < m; ++i) {
        const double F = spec.f.envelope(std::abs(xs[i]));
        if (F < fx[i] * (1.0 - 1e-12) - 1e-12) {
            envelope_ok = false;
            envelope_detail = format_at("envelope below rate", xs[i], fx[i] - F);
            break;
        }
    }
    report.checks.push_back(
        make_check("envelope_dominates", envelope_ok, envelope_detail));

    bool growth_ok = true;
    std::string growth_detail = "ok";
    if (positive) {
        const double root0 = std::sqrt(spec.f(0.0));
        for (std::size_t i = 0; i < m; ++i) {
            const double cap = root0 + L * std::abs(xs[i]);
            if (fx[i] > cap * cap * (1.0 + 1e-9) + 1e-12) {
                growth_ok = false;
                growth_detail = format_at("growth bound violated", xs[i], fx[i]);
                break;
            }
        }
    }
    report.checks.push_back(make_check("quadratic_growth", growth_ok, growth_detail));

    // Mark-law diagnostics from a fixed internal stream, so reports are
    // reproducible without a caller-provided seed.
    const std::size_t draws = 1'000'000;
    RngStream rng(0x9e3779b97f4a7c15ULL, "model.validate", 0);
    std::vector<double> u(draws);
    for (std::size_t i = 0; i < draws; ++i) u[i] = spec.mu.sample(rng);
    const MeanSem moment1 = mean_sem(u);
    {
        std::ostringstream os;
        os << "sample mean " << moment1.mean << ", sem " << moment1.sem;
        const bool pass = std::abs(moment1.mean) <= 4.0 * moment1.sem + 1e-12;
        report.checks.push_back(make_check("mark_centered", pass, os.str()));
    }
    {
        std::vector<double> u4(draws);
        for (std::size_t i = 0; i < draws; ++i) u4[i] = u[i] * u[i] * u[i] * u[i];
        const MeanSem moment4 = mean_sem(u4);
        std::ostringstream os;
        os << "sample fourth moment " << moment4.mean << " vs stored "
           << spec.mu.fourth_moment();
        const bool pass =
            std::isfinite(spec.mu.fourth_moment()) &&
            std::abs(moment4.mean - spec.mu.fourth_moment()) <=
                5.0 * moment4.sem + 1e-9;
        report.checks.push_back(make_check("mark_fourth_moment", pass, os.str()));
    }
    if (spec.mu.kind() == JumpDistribution::Kind::two_point) {
        const double mean =
            spec.mu.prob_a() * spec.mu.atom_a() + spec.mu.prob_b() * spec.mu.atom_b();
        std::ostringstream os;
        os << "p*a + q*b = " << mean;
        // The probability ratios are exact by construction; allow a couple of
        // ulps for atom pairs whose products round differently.
        const double tol =
            1e-15 * (std::abs(spec.mu.atom_a()) + std::abs(spec.mu.atom_b()));
        report.checks.push_back(
            make_check("two_point_centering", std::abs(mean) <= tol, os.str()));
    }
    return report;
}

}  // namespace hawkes
