#include "hawkes/rate_function.hpp"

#include <cmath>
#include <stdexcept>

#include "hawkes/quadrature.hpp"

namespace hawkes {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

double eval_kind(RateFunction::Kind kind, double c, double x) {
    switch (kind) {
        case RateFunction::Kind::quadratic:
            return 1.0 + x * x;
        case RateFunction::Kind::root_quadratic:
            return std::sqrt(1.0 + x * x);
        case RateFunction::Kind::arctan_sq: {
            const double v = kHalfPi + std::atan(x);
            return v * v;
        }
        case RateFunction::Kind::constant:
            return c;
        case RateFunction::Kind::user_defined:
            break;
    }
    throw std::logic_error("user_defined rate needs its eval callable");
}

}  // namespace

RateFunction RateFunction::quadratic() {
    RateFunction f;
    f.kind_ = Kind::quadratic;
    f.name_ = "quadratic";
    // sqrt(1 + x^2) has derivative x / sqrt(1 + x^2), bounded by 1.
    f.lipschitz_sqrt_ = 1.0;
    return f;
}

RateFunction RateFunction::root_quadratic() {
    RateFunction f;
    f.kind_ = Kind::root_quadratic;
    f.name_ = "root_quadratic";
    // (1 + x^2)^{1/4} has derivative x / (2 (1 + x^2)^{3/4}), maximized at
    // x = sqrt(2) with value sqrt(2) / (2 * 3^{3/4}).
    f.lipschitz_sqrt_ = 0.31020161970069987;
    return f;
}

RateFunction RateFunction::arctan_sq() {
    RateFunction f;
    f.kind_ = Kind::arctan_sq;
    f.name_ = "arctan_sq";
    // sqrt(f) = pi/2 + arctan x has derivative 1/(1 + x^2), bounded by 1.
    f.lipschitz_sqrt_ = 1.0;
    return f;
}

RateFunction RateFunction::constant(double c) {
    if (c <= 0.0) throw std::invalid_argument("constant rate must be positive");
    RateFunction f;
    f.kind_ = Kind::constant;
    f.name_ = "constant";
    f.constant_value_ = c;
    f.lipschitz_sqrt_ = 0.0;
    return f;
}

RateFunction RateFunction::user_defined(std::function<double(double)> eval,
                                        std::function<double(double)> envelope,
                                        double lipschitz_sqrt,
                                        std::function<double(double)> antiderivative) {
    if (!eval || !envelope) {
        throw std::invalid_argument("user_defined rate needs eval and envelope");
    }
    RateFunction f;
    f.kind_ = Kind::user_defined;
    f.name_ = "user_defined";
    f.eval_fn_ = std::move(eval);
    f.envelope_fn_ = std::move(envelope);
    f.lipschitz_sqrt_ = lipschitz_sqrt;
    f.antiderivative_fn_ = std::move(antiderivative);
    return f;
}

double RateFunction::operator()(double x) const {
    if (kind_ == Kind::user_defined) return eval_fn_(x);
    return eval_kind(kind_, constant_value_, x);
}

double RateFunction::envelope(double r) const {
    r = std::abs(r);
    switch (kind_) {
        case Kind::quadratic:
        case Kind::root_quadratic:
            // Even and increasing in |x|.
            return eval_kind(kind_, constant_value_, r);
        case Kind::arctan_sq:
            // Increasing, so the supremum over [-r, r] sits at +r.
            return eval_kind(kind_, constant_value_, r);
        case Kind::constant:
            return constant_value_;
        case Kind::user_defined:
            return envelope_fn_(r);
    }
    throw std::logic_error("unreachable");
}

double RateFunction::antiderivative_ratio(double x) const {
    switch (kind_) {
        case Kind::quadratic:
            return 0.5 * std::log1p(x * x);
        case Kind::root_quadratic:
            // int y (1 + y^2)^{-1/2} dy = sqrt(1 + x^2) - 1.
            return std::sqrt(1.0 + x * x) - 1.0;
        case Kind::constant:
            return x * x / (2.0 * constant_value_);
        case Kind::arctan_sq:
        case Kind::user_defined:
            if (antiderivative_fn_) return antiderivative_fn_(x);
            return integrate([this](double y) { return y / (*this)(y); }, 0.0, x);
    }
    throw std::logic_error("unreachable");
}

}  // namespace hawkes
