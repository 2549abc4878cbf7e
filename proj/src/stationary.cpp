#include "hawkes/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hawkes/hawkes_engine.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/quadrature.hpp"

namespace hawkes {

namespace {

constexpr std::size_t kQuantileTableSize = 100000;
constexpr double kTailTolerance = 1e-10;

}  // namespace

InvariantDensity::InvariantDensity(const ModelSpec& spec, std::size_t grid_points)
    : alpha_(spec.alpha), sigma2_(spec.sigma2()), f_(spec.f) {
    if (grid_points < 3 || grid_points % 2 == 0) {
        throw std::invalid_argument("grid needs an odd point count >= 3");
    }
    const double weight = 2.0 * alpha_ / sigma2_;
    const auto ratio = [this](double y) { return y / f_(y); };

    double radius = 20.0;
    for (int attempt = 0; attempt < 14; ++attempt) {
        // Bulk mass over [-R, R] from the direct log-density; the incremental
        // grid construction below reuses the same integrand.
        const double bulk = integrate(
            [this](double x) { return std::exp(log_unnormalized(x)); }, -radius,
            radius);
        const double tail =
            integrate([this](double x) { return std::exp(log_unnormalized(x)); },
                      radius, 2.0 * radius) +
            integrate([this](double x) { return std::exp(log_unnormalized(x)); },
                      -2.0 * radius, -radius);
        if (tail <= kTailTolerance * bulk) break;
        radius *= 2.0;
    }
    radius_ = radius;

    // Fine grid at half the node spacing supplies the Simpson midpoints for
    // both G and the cumulative mass.
    const std::size_t m = grid_points;
    const std::size_t fine = 2 * m - 1;
    const double h = 2.0 * radius_ / static_cast<double>(m - 1);
    const double hf = 0.5 * h;
    std::vector<double> fine_x(fine), fine_g(fine), fine_p(fine);
    for (std::size_t i = 0; i < fine; ++i) {
        fine_x[i] = -radius_ + hf * static_cast<double>(i);
    }
    // G by cumulative Simpson outward from the center node (G(0) = 0).
    const std::size_t center = (fine - 1) / 2;
    fine_g[center] = 0.0;
    for (std::size_t i = center; i + 1 < fine; ++i) {
        const double a = fine_x[i];
        const double b = fine_x[i + 1];
        const double mid = 0.5 * (a + b);
        fine_g[i + 1] =
            fine_g[i] + (b - a) / 6.0 * (ratio(a) + 4.0 * ratio(mid) + ratio(b));
    }
    for (std::size_t i = center; i > 0; --i) {
        const double a = fine_x[i - 1];
        const double b = fine_x[i];
        const double mid = 0.5 * (a + b);
        fine_g[i - 1] =
            fine_g[i] - (b - a) / 6.0 * (ratio(a) + 4.0 * ratio(mid) + ratio(b));
    }
    for (std::size_t i = 0; i < fine; ++i) {
        fine_p[i] = std::exp(-std::log(f_(fine_x[i])) - weight * fine_g[i]);
    }

    // Per-node-cell Simpson mass; Z and the CDF come from the same sums, so the
    // normalized mass is 1 by construction and matches adaptive quadrature to
    // O(h^4).
    grid_.resize(m);
    density_.resize(m);
    cdf_.resize(m);
    std::vector<double> cell_mass(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        cell_mass[k] = h / 6.0 *
                       (fine_p[2 * k] + 4.0 * fine_p[2 * k + 1] + fine_p[2 * k + 2]);
    }
    double total = 0.0;
    cdf_[0] = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        total += cell_mass[k];
        cdf_[k + 1] = total;
    }
    z_ = total;
    for (std::size_t k = 0; k < m; ++k) {
        grid_[k] = fine_x[2 * k];
        density_[k] = fine_p[2 * k] / z_;
        cdf_[k] /= z_;
    }
    cdf_.back() = 1.0;

    // Quantile table at u_j = (j+1) / (size+1) by walking the CDF once.
    quantile_table_.resize(kQuantileTableSize);
    std::size_t node = 0;
    for (std::size_t j = 0; j < kQuantileTableSize; ++j) {
        const double u = static_cast<double>(j + 1) /
                         static_cast<double>(kQuantileTableSize + 1);
        while (node + 1 < m && cdf_[node + 1] < u) ++node;
        const double span = cdf_[node + 1] - cdf_[node];
        const double frac = span > 0.0 ? (u - cdf_[node]) / span : 0.0;
        quantile_table_[j] = grid_[node] + frac * h;
    }
}

double InvariantDensity::log_unnormalized(double x) const {
    return -std::log(f_(x)) - (2.0 * alpha_ / sigma2_) * f_.antiderivative_ratio(x);
}

double InvariantDensity::pdf(double x) const {
    return std::exp(log_unnormalized(x)) / z_;
}

double InvariantDensity::cdf(double x) const {
    if (x <= grid_.front()) return 0.0;
    if (x >= grid_.back()) return 1.0;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double frac = (x - grid_[k]) / (grid_[k + 1] - grid_[k]);
    return cdf_[k] + frac * (cdf_[k + 1] - cdf_[k]);
}

double InvariantDensity::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("quantile argument must lie in (0, 1)");
    }
    const double scaled =
        u * static_cast<double>(kQuantileTableSize + 1) - 1.0;
    if (scaled <= 0.0) return quantile_table_.front();
    if (scaled >= static_cast<double>(kQuantileTableSize - 1)) {
        return quantile_table_.back();
    }
    const std::size_t j = static_cast<std::size_t>(scaled);
    const double frac = scaled - static_cast<double>(j);
    return quantile_table_[j] + frac * (quantile_table_[j + 1] - quantile_table_[j]);
}

void InvariantDensity::write_csv(std::ostream& os) const {
    os << "x,p\n";
    char buffer[40];
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        std::snprintf(buffer, sizeof(buffer), "%.17g", grid_[k]);
        os << buffer << ',';
        std::snprintf(buffer, sizeof(buffer), "%.17g", density_[k]);
        os << buffer << '\n';
    }
}

InvariantDensity invariant_density(const ModelSpec& spec) {
    return InvariantDensity(spec);
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample set");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a.size() > b.size()) std::swap(a, b);
    // Quantile-matched deterministic subsample of the larger (sorted) set.
    const std::size_t n = a.size();
    double sum = 0.0;
    const double stride =
        static_cast<double>(b.size()) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = std::min(
            b.size() - 1,
            static_cast<std::size_t>((static_cast<double>(i) + 0.5) * stride));
        sum += std::abs(a[i] - b[j]);
    }
    return sum / static_cast<double>(n);
}

double wasserstein1(std::vector<double> samples, const InvariantDensity& density) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u =
            static_cast<double>(i + 1) / static_cast<double>(n + 1);
        sum += std::abs(samples[i] - density.quantile(u));
    }
    return sum / static_cast<double>(n);
}

double wasserstein1_bootstrap_sem(const std::vector<double>& samples,
                                  const InvariantDensity& density,
                                  RngStream& rng, int resamples) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    if (resamples < 2) throw std::invalid_argument("need at least two resamples");
    const std::size_t n = samples.size();
    std::vector<double> draws(n);
    std::vector<double> distances(resamples);
    for (int b = 0; b < resamples; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            draws[i] = samples[rng.uniform_index(n)];
        }
        distances[b] = wasserstein1(draws, density);
    }
    double mean = 0.0;
    for (double d : distances) mean += d;
    mean /= resamples;
    double ss = 0.0;
    for (double d : distances) ss += (d - mean) * (d - mean);
    return std::sqrt(ss / (resamples - 1));
}

std::vector<double> long_run_law(const ModelSpec& spec, double t,
                                 std::uint64_t reps, std::uint64_t master_seed,
                                 int workers) {
    if (reps < 1) throw std::invalid_argument("need at least one replication");
    std::vector<double> out(reps);
    replicate(reps, workers, [&](std::uint64_t r) {
        RngStream rng = derive_stream(master_seed, "stationary.long_run", r);
        out[r] = simulate_terminal(spec, t, rng);
    });
    return out;
}

}  // namespace hawkes
