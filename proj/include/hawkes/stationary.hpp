#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

// Closed-form invariant law of the limit diffusion:
//   p(x) = C (1/f(x)) exp(-(2 alpha / sigma^2) G(x)),  G(x) = int_0^x y/f(y) dy,
// normalized by quadrature over [-R, R] with R grown until the tail mass falls
// below 1e-10. The cumulative grid integral also yields a quantile table used
// for sample-vs-density transport distances.
class InvariantDensity {
  public:
    InvariantDensity(const ModelSpec& spec, std::size_t grid_points = 200001);

    double log_unnormalized(double x) const;
    double pdf(double x) const;
    double cdf(double x) const;
    // Inverse CDF by lookup in a 1e5-entry table with linear interpolation.
    double quantile(double u) const;

    double normalizer() const { return z_; }
    double radius() const { return radius_; }
    std::span<const double> grid() const { return grid_; }
    std::span<const double> densities() const { return density_; }

    void write_csv(std::ostream& os) const;

  private:
    double alpha_;
    double sigma2_;
    RateFunction f_;
    double radius_ = 0.0;
    double z_ = 0.0;
    std::vector<double> grid_;
    std::vector<double> density_;  // normalized
    std::vector<double> cdf_;
    std::vector<double> quantile_table_;  // u_i = (i+1) / (table size + 1)
};

InvariantDensity invariant_density(const ModelSpec& spec);

// W1 between two equal-size empirical laws: mean absolute difference of sorted
// samples; the larger set is deterministically subsampled to the smaller size.
double wasserstein1(std::vector<double> a, std::vector<double> b);

// W1 between an empirical law and the invariant density via its quantile table:
// mean over i of |x_(i) - q(i / (n+1))|.
double wasserstein1(std::vector<double> samples, const InvariantDensity& density);

// Bootstrap standard error of the sample-vs-density distance (B resamples).
double wasserstein1_bootstrap_sem(const std::vector<double>& samples,
                                  const InvariantDensity& density,
                                  RngStream& rng, int resamples = 64);

// Terminal values X^N_t over independent runs of the N-system.
std::vector<double> long_run_law(const ModelSpec& spec, double t,
                                 std::uint64_t reps, std::uint64_t master_seed,
                                 int workers = 1);

}  // namespace hawkes
