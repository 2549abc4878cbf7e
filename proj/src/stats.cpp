#include "hawkes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

double pairwise_sum_range(const double* values, std::size_t count) {
    if (count <= 32) {
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) sum += values[i];
        return sum;
    }
    const std::size_t half = count / 2;
    return pairwise_sum_range(values, half) +
           pairwise_sum_range(values + half, count - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_range(values.data(), values.size());
}

MeanSem mean_sem(std::span<const double> values) {
    MeanSem out;
    out.count = values.size();
    if (values.empty()) return out;
    out.mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    const double ss = pairwise_sum(sq);
    const double n = static_cast<double>(values.size());
    out.sem = std::sqrt(ss / (n - 1.0) / n);
    return out;
}

VarianceEstimate variance_with_sem(std::span<const double> values) {
    VarianceEstimate out;
    const std::size_t n = values.size();
    if (n < 2) return out;
    const double mean = pairwise_sum(values) / static_cast<double>(n);
    std::vector<double> d2(n), d4(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i] - mean;
        d2[i] = d * d;
        d4[i] = d2[i] * d2[i];
    }
    const double nn = static_cast<double>(n);
    out.variance = pairwise_sum(d2) / (nn - 1.0);
    const double m2 = pairwise_sum(d2) / nn;
    const double m4 = pairwise_sum(d4) / nn;
    out.sem = std::sqrt(std::max(0.0, m4 - m2 * m2) / nn);
    return out;
}

CovarianceEstimate covariance_with_sem(std::span<const double> xs,
                                       std::span<const double> ys) {
    CovarianceEstimate out;
    if (xs.size() != ys.size()) throw std::invalid_argument("length mismatch");
    const std::size_t n = xs.size();
    if (n < 2) return out;
    const double nn = static_cast<double>(n);
    const double mx = pairwise_sum(xs) / nn;
    const double my = pairwise_sum(ys) / nn;
    std::vector<double> prod(n), prod2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        prod[i] = dx * dy;
        prod2[i] = prod[i] * prod[i];
    }
    out.covariance = pairwise_sum(prod) / (nn - 1.0);
    const double m11 = pairwise_sum(prod) / nn;
    const double m22 = pairwise_sum(prod2) / nn;
    out.sem = std::sqrt(std::max(0.0, m22 - m11 * m11) / nn);
    return out;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("need at least two paired points");
    }
    const double n = static_cast<double>(xs.size());
    const double mx = pairwise_sum(xs) / n;
    const double my = pairwise_sum(ys) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (xs.size() > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ssr += r * r;
        }
        fit.slope_se = std::sqrt(ssr / (n - 2.0) / sxx);
    }
    return fit;
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("need at least two paired points");
    }
    const double n = static_cast<double>(xs.size());
    const double mx = pairwise_sum(xs) / n;
    const double my = pairwise_sum(ys) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double u = cdf(sample[i]);
        const double d_plus = (static_cast<double>(i) + 1.0) / n - u;
        const double d_minus = u - static_cast<double>(i) / n;
        d = std::max({d, d_plus, d_minus});
    }
    KsResult out;
    out.statistic = d;
    const double sqrt_n = std::sqrt(n);
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    out.p_value = kolmogorov_tail(lambda);
    return out;
}

namespace {

// Regularized incomplete gamma: series for x < a + 1, Lentz continued fraction
// otherwise. Standard construction; accurate to ~1e-14 for the dof used here.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_tail(double statistic, double dof) {
    if (statistic <= 0.0) return 1.0;
    const double a = 0.5 * dof;
    const double x = 0.5 * statistic;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

}  // namespace hawkes
