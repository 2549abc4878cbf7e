#include "hawkes/test_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

}  // namespace

TestFunction TestFunction::sine() {
    TestFunction t;
    t.name = "sin";
    t.g = [](double x) { return std::sin(x); };
    t.g1 = [](double x) { return std::cos(x); };
    t.g2 = [](double x) { return -std::sin(x); };
    t.g3 = [](double x) { return -std::cos(x); };
    t.norm_g = t.norm_g1 = t.norm_g2 = t.norm_g3 = 1.0;
    t.interval_radius = kInfiniteRadius;
    return t;
}

TestFunction TestFunction::hyperbolic_tangent() {
    TestFunction t;
    t.name = "tanh";
    t.g = [](double x) { return std::tanh(x); };
    t.g1 = [](double x) {
        const double v = std::tanh(x);
        return 1.0 - v * v;
    };
    t.g2 = [](double x) {
        const double v = std::tanh(x);
        return -2.0 * v * (1.0 - v * v);
    };
    t.g3 = [](double x) {
        const double v = std::tanh(x);
        return (1.0 - v * v) * (6.0 * v * v - 2.0);
    };
    t.norm_g = 1.0;
    t.norm_g1 = 1.0;
    // max |2 t (1 - t^2)| over t in [-1, 1] is 4 / (3 sqrt 3).
    t.norm_g2 = 0.76980035891950102;
    t.norm_g3 = 2.0;
    t.interval_radius = kInfiniteRadius;
    return t;
}

TestFunction TestFunction::gaussian_bump() {
    TestFunction t;
    t.name = "gaussian_bump";
    t.g = [](double x) { return std::exp(-0.5 * x * x); };
    t.g1 = [](double x) { return -x * std::exp(-0.5 * x * x); };
    t.g2 = [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); };
    t.g3 = [](double x) { return x * (3.0 - x * x) * std::exp(-0.5 * x * x); };
    t.norm_g = 1.0;
    t.norm_g1 = 0.60653065971263342;  // e^{-1/2} at x = 1
    t.norm_g2 = 1.0;                  // at x = 0
    t.norm_g3 = 1.3801190461607491;   // at x = sqrt(3 - sqrt 6)
    t.interval_radius = kInfiniteRadius;
    return t;
}

TestFunction TestFunction::monomial(int degree, double interval_radius) {
    if (degree < 1 || degree > 3) {
        throw std::invalid_argument("monomial degree must be 1, 2, or 3");
    }
    if (interval_radius <= 0.0) {
        throw std::invalid_argument("interval radius must be positive");
    }
    TestFunction t;
    const double a = interval_radius;
    t.interval_radius = a;
    switch (degree) {
        case 1:
            t.name = "x";
            t.g = [](double x) { return x; };
            t.g1 = [](double) { return 1.0; };
            t.g2 = [](double) { return 0.0; };
            t.g3 = [](double) { return 0.0; };
            t.norm_g = a;
            t.norm_g1 = 1.0;
            break;
        case 2:
            t.name = "x2";
            t.g = [](double x) { return x * x; };
            t.g1 = [](double x) { return 2.0 * x; };
            t.g2 = [](double) { return 2.0; };
            t.g3 = [](double) { return 0.0; };
            t.norm_g = a * a;
            t.norm_g1 = 2.0 * a;
            t.norm_g2 = 2.0;
            break;
        case 3:
            t.name = "x3";
            t.g = [](double x) { return x * x * x; };
            t.g1 = [](double x) { return 3.0 * x * x; };
            t.g2 = [](double x) { return 6.0 * x; };
            t.g3 = [](double) { return 6.0; };
            t.norm_g = a * a * a;
            t.norm_g1 = 3.0 * a * a;
            t.norm_g2 = 6.0 * a;
            t.norm_g3 = 6.0;
            break;
    }
    return t;
}

TestFunction TestFunction::by_name(const std::string& name) {
    if (name == "sin") return sine();
    if (name == "tanh") return hyperbolic_tangent();
    if (name == "gaussian_bump") return gaussian_bump();
    if (name == "x") return monomial(1);
    if (name == "x2") return monomial(2);
    if (name == "x3") return monomial(3);
    throw std::invalid_argument("unknown test function: " + name);
}

}  // namespace hawkes
