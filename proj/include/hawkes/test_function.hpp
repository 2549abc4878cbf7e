#pragma once

#include <functional>
#include <string>

namespace hawkes {

// Test function with three derivatives and finite sup-norm bounds, the class the
// semigroup and generator bounds quantify over. Monomials have unbounded
// derivatives, so their builtins carry local bounds valid on a declared interval
// and gap checks must stay inside it.
struct TestFunction {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double)> g1;
    std::function<double(double)> g2;
    std::function<double(double)> g3;
    double norm_g = 0.0;
    double norm_g1 = 0.0;
    double norm_g2 = 0.0;
    double norm_g3 = 0.0;
    // Interval on which the norms hold; infinite for the globally bounded
    // builtins.
    double interval_radius = 0.0;

    // ||g||_{3,inf} = sum of the four sup norms.
    double norm_3_inf() const { return norm_g + norm_g1 + norm_g2 + norm_g3; }

    static TestFunction sine();
    static TestFunction hyperbolic_tangent();
    static TestFunction gaussian_bump();
    static TestFunction monomial(int degree, double interval_radius = 10.0);
    static TestFunction by_name(const std::string& name);
};

}  // namespace hawkes
