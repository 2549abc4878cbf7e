#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hawkes {

// Summation and estimator helpers shared by the engines and the experiment lab.
// All reductions over replication arrays go through pairwise_sum so that results
// are identical regardless of how many workers filled the array.

double pairwise_sum(std::span<const double> values);

struct MeanSem {
    double mean = 0.0;
    double sem = 0.0;
    std::size_t count = 0;
};

MeanSem mean_sem(std::span<const double> values);

// Sample variance with a moment-based standard error:
// se^2 = (m4 - var^2) / n with central moments from the same sample.
struct VarianceEstimate {
    double variance = 0.0;
    double sem = 0.0;
};

VarianceEstimate variance_with_sem(std::span<const double> values);

// Sample covariance of paired observations with moment-based standard error:
// se^2 = (m22 - cov^2) / n, m22 = mean of (x - xbar)^2 (y - ybar)^2.
struct CovarianceEstimate {
    double covariance = 0.0;
    double sem = 0.0;
};

CovarianceEstimate covariance_with_sem(std::span<const double> xs,
                                       std::span<const double> ys);

// Ordinary least squares of y on x with the usual residual-based slope error.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

double correlation(std::span<const double> xs, std::span<const double> ys);

// Two-sided Kolmogorov-Smirnov test of a sample against a continuous CDF.
// p-value from the asymptotic Kolmogorov distribution with the Stephens
// finite-sample adjustment.
struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

// Upper tail of the chi-square distribution via the regularized incomplete gamma
// function (series / continued-fraction split).
double chi_square_tail(double statistic, double dof);

}  // namespace hawkes
