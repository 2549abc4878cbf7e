#include "hawkes/limit_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

std::size_t steps_for(double horizon, double h) {
    if (h <= 0.0) throw std::invalid_argument("step must be positive");
    if (horizon < 0.0) throw std::invalid_argument("horizon must be nonnegative");
    const double ratio = horizon / h;
    const double rounded = std::nearbyint(ratio);
    if (std::abs(ratio - rounded) < 1e-9 * std::max(1.0, ratio)) {
        return static_cast<std::size_t>(rounded);
    }
    return static_cast<std::size_t>(std::ceil(ratio));
}

void check_finite(double x) {
    if (!std::isfinite(x)) {
        throw SimulationError(SimulationError::Kind::non_finite_state,
                              "non-finite state in the diffusion step (step too large)");
    }
}

}  // namespace

GridPath simulate_em(const ModelSpec& spec, double horizon, double h,
                     RngStream& rng) {
    const std::size_t steps = steps_for(horizon, h);
    GridPath path;
    path.step = h;
    path.values.resize(steps + 1);
    const double alpha = spec.alpha;
    const double sigma = std::sqrt(spec.sigma2());
    double x = spec.x0;
    path.values[0] = x;
    for (std::size_t k = 0; k < steps; ++k) {
        x += -alpha * x * h + sigma * std::sqrt(spec.f(x) * h) * rng.normal();
        check_finite(x);
        path.values[k + 1] = x;
    }
    return path;
}

double simulate_em_terminal(const ModelSpec& spec, double horizon, double h,
                            RngStream& rng) {
    const std::size_t steps = steps_for(horizon, h);
    const double alpha = spec.alpha;
    const double sigma = std::sqrt(spec.sigma2());
    double x = spec.x0;
    for (std::size_t k = 0; k < steps; ++k) {
        x += -alpha * x * h + sigma * std::sqrt(spec.f(x) * h) * rng.normal();
        check_finite(x);
    }
    return x;
}

CoupledTerminal simulate_em_coupled_terminal(const ModelSpec& spec, double horizon,
                                             double h, RngStream& rng) {
    const std::size_t coarse_steps = steps_for(horizon, h);
    const double g = 0.5 * h;
    const double alpha = spec.alpha;
    const double sigma = std::sqrt(spec.sigma2());
    double xc = spec.x0;
    double xf = spec.x0;
    for (std::size_t k = 0; k < coarse_steps; ++k) {
        const double xi1 = rng.normal();
        const double xi2 = rng.normal();
        xf += -alpha * xf * g + sigma * std::sqrt(spec.f(xf) * g) * xi1;
        xf += -alpha * xf * g + sigma * std::sqrt(spec.f(xf) * g) * xi2;
        // The coarse step spends the same Brownian increment sqrt(g)(xi1 + xi2).
        xc += -alpha * xc * h + sigma * std::sqrt(spec.f(xc) * g) * (xi1 + xi2);
        check_finite(xf);
        check_finite(xc);
    }
    return CoupledTerminal{xc, xf};
}

double intensity_integral(const GridPath& path, const RateFunction& f) {
    if (path.values.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.values.size(); ++k) {
        sum += f(path.values[k]);
    }
    return sum * path.step;
}

TerminalAndIntegral simulate_em_terminal_integral(const ModelSpec& spec,
                                                  double horizon, double h,
                                                  RngStream& rng) {
    const std::size_t steps = steps_for(horizon, h);
    const double alpha = spec.alpha;
    const double sigma = std::sqrt(spec.sigma2());
    double x = spec.x0;
    double integral = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double rate = spec.f(x);
        integral += rate;
        x += -alpha * x * h + sigma * std::sqrt(rate * h) * rng.normal();
        check_finite(x);
    }
    return TerminalAndIntegral{x, integral * h};
}

GridPath simulate_ou_exact(double alpha, double sigma, double x0,
                           std::span<const double> times, RngStream& rng) {
    if (times.empty()) throw std::invalid_argument("need at least one time");
    if (!std::is_sorted(times.begin(), times.end()) || times.front() <= 0.0) {
        throw std::invalid_argument("times must be sorted and positive");
    }
    const double h = times[0];
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double expected = h * static_cast<double>(k + 1);
        if (std::abs(times[k] - expected) > 1e-9 * std::max(1.0, expected)) {
            throw std::invalid_argument("times must form a uniform grid");
        }
    }
    GridPath path;
    path.step = h;
    path.values.resize(times.size() + 1);
    path.values[0] = x0;
    const double decay = std::exp(-alpha * h);
    const double sd = sigma * std::sqrt((1.0 - decay * decay) / (2.0 * alpha));
    double x = x0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        x = x * decay + sd * rng.normal();
        path.values[k + 1] = x;
    }
    return path;
}

CoxLog cox_counts(const GridPath& path, const RateFunction& f, std::uint64_t k,
                  RngStream& rng) {
    if (k < 1) throw std::invalid_argument("need at least one component");
    CoxLog log;
    log.horizon = path.horizon();
    log.times.resize(k);
    const double h = path.step;
    std::vector<double> cell;
    for (std::uint64_t i = 0; i < k; ++i) {
        auto& times = log.times[i];
        for (std::size_t c = 0; c + 1 < path.values.size(); ++c) {
            const double mean = f(path.values[c]) * h;
            const std::uint64_t count = rng.poisson(mean);
            if (count == 0) continue;
            cell.clear();
            const double left = h * static_cast<double>(c);
            for (std::uint64_t j = 0; j < count; ++j) {
                cell.push_back(left + h * rng.uniform());
            }
            std::sort(cell.begin(), cell.end());
            times.insert(times.end(), cell.begin(), cell.end());
        }
    }
    return log;
}

namespace {

void write_float(std::ostream& os, double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    os << buffer;
}

}  // namespace

void write_grid_csv(const GridPath& path, std::ostream& os) {
    os << "t,x\n";
    for (std::size_t k = 0; k < path.values.size(); ++k) {
        write_float(os, path.step * static_cast<double>(k));
        os << ',';
        write_float(os, path.values[k]);
        os << '\n';
    }
}

void write_cox_csv(const CoxLog& log, std::ostream& os) {
    std::vector<std::pair<double, std::uint64_t>> rows;
    for (std::size_t i = 0; i < log.times.size(); ++i) {
        for (double t : log.times[i]) rows.emplace_back(t, i + 1);
    }
    std::sort(rows.begin(), rows.end());
    os << "t,component\n";
    for (const auto& [t, component] : rows) {
        write_float(os, t);
        os << ',' << component << '\n';
    }
}

}  // namespace hawkes
