#pragma once

#include <functional>
#include <string>

#include "hawkes/rng.hpp"

namespace hawkes {

// Centered mark law with the moments the rate theory consumes: variance sigma^2
// (the limit diffusion coefficient), E|U|^3 (the generator-gap constant), and
// E U^4 (moment bounds). Builtins carry exact moments; user-defined laws supply
// theirs.
class JumpDistribution {
  public:
    enum class Kind { gaussian, two_point, user_defined };

    static JumpDistribution gaussian(double sigma);
    // Two atoms a and b of opposite sign; the probabilities are the exact
    // centering ratios p = -b/(a-b), q = a/(a-b), so p a + q b = 0 by
    // construction.
    static JumpDistribution two_point(double a, double b);
    static JumpDistribution user_defined(std::function<double(RngStream&)> sampler,
                                         double variance, double abs_third_moment,
                                         double fourth_moment);

    double sample(RngStream& rng) const;

    Kind kind() const { return kind_; }
    double variance() const { return variance_; }
    double abs_third_moment() const { return abs_third_moment_; }
    double third_moment() const { return third_moment_; }
    double fourth_moment() const { return fourth_moment_; }
    const std::string& name() const { return name_; }

    double sigma() const { return sigma_; }
    double atom_a() const { return a_; }
    double atom_b() const { return b_; }
    double prob_a() const { return pa_; }
    double prob_b() const { return pb_; }

  private:
    JumpDistribution() = default;

    Kind kind_ = Kind::gaussian;
    std::string name_ = "gaussian";
    double sigma_ = 1.0;
    double a_ = 0.0, b_ = 0.0, pa_ = 0.0, pb_ = 0.0;
    double variance_ = 1.0;
    double abs_third_moment_ = 0.0;
    double third_moment_ = 0.0;
    double fourth_moment_ = 0.0;
    std::function<double(RngStream&)> sampler_fn_;
};

}  // namespace hawkes
