#include "hawkes/jump_distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkes {

JumpDistribution JumpDistribution::gaussian(double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("gaussian sigma must be positive");
    JumpDistribution mu;
    mu.kind_ = Kind::gaussian;
    mu.name_ = "gaussian";
    mu.sigma_ = sigma;
    mu.variance_ = sigma * sigma;
    // E|U|^3 = sigma^3 sqrt(8/pi), E U^4 = 3 sigma^4.
    mu.abs_third_moment_ = sigma * sigma * sigma * 1.5957691216057308;
    mu.third_moment_ = 0.0;
    mu.fourth_moment_ = 3.0 * mu.variance_ * mu.variance_;
    return mu;
}

JumpDistribution JumpDistribution::two_point(double a, double b) {
    if (!(a > 0.0 && b < 0.0) && !(a < 0.0 && b > 0.0)) {
        throw std::invalid_argument("two_point atoms must straddle zero");
    }
    JumpDistribution mu;
    mu.kind_ = Kind::two_point;
    mu.name_ = "two_point";
    mu.a_ = a;
    mu.b_ = b;
    mu.pa_ = -b / (a - b);
    mu.pb_ = a / (a - b);
    mu.variance_ = mu.pa_ * a * a + mu.pb_ * b * b;
    mu.abs_third_moment_ =
        mu.pa_ * std::abs(a * a * a) + mu.pb_ * std::abs(b * b * b);
    mu.third_moment_ = mu.pa_ * a * a * a + mu.pb_ * b * b * b;
    mu.fourth_moment_ = mu.pa_ * a * a * a * a + mu.pb_ * b * b * b * b;
    return mu;
}

JumpDistribution JumpDistribution::user_defined(
    std::function<double(RngStream&)> sampler, double variance,
    double abs_third_moment, double fourth_moment) {
    if (!sampler) throw std::invalid_argument("user_defined law needs a sampler");
    if (variance <= 0.0) throw std::invalid_argument("variance must be positive");
    JumpDistribution mu;
    mu.kind_ = Kind::user_defined;
    mu.name_ = "user_defined";
    mu.sampler_fn_ = std::move(sampler);
    mu.variance_ = variance;
    mu.abs_third_moment_ = abs_third_moment;
    mu.third_moment_ = 0.0;
    mu.fourth_moment_ = fourth_moment;
    return mu;
}

double JumpDistribution::sample(RngStream& rng) const {
    switch (kind_) {
        case Kind::gaussian:
            return sigma_ * rng.normal();
        case Kind::two_point:
            return rng.uniform() < pa_ ? a_ : b_;
        case Kind::user_defined:
            return sampler_fn_(rng);
    }
    throw std::logic_error("unreachable");
}

}  // namespace hawkes
