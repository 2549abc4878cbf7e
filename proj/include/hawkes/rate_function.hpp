#pragma once

#include <functional>
#include <string>

namespace hawkes {

// Jump-rate function f together with the two companions the engine and the
// stationary law need: a decay envelope F(r) = sup_{|y|<=r} f(y) that dominates f
// along the downward flow (exact thinning relies on it), and the antiderivative
// G(x) = int_0^x y/f(y) dy that appears in the invariant density exponent.
// lipschitz_sqrt is the Lipschitz constant of sqrt(f), the constant entering the
// rate bounds.
class RateFunction {
  public:
    enum class Kind { quadratic, root_quadratic, arctan_sq, constant, user_defined };

    static RateFunction quadratic();       // 1 + x^2
    static RateFunction root_quadratic();  // sqrt(1 + x^2)
    static RateFunction arctan_sq();       // (pi/2 + arctan x)^2
    static RateFunction constant(double c);
    // User-supplied rates must provide their own envelope; G falls back to
    // adaptive quadrature when no closed form is given.
    static RateFunction user_defined(std::function<double(double)> eval,
                                     std::function<double(double)> envelope,
                                     double lipschitz_sqrt,
                                     std::function<double(double)> antiderivative = {});

    double operator()(double x) const;
    double envelope(double r) const;
    double antiderivative_ratio(double x) const;

    Kind kind() const { return kind_; }
    double lipschitz_sqrt() const { return lipschitz_sqrt_; }
    double constant_value() const { return constant_value_; }
    const std::string& name() const { return name_; }

  private:
    RateFunction() = default;

    Kind kind_ = Kind::constant;
    double constant_value_ = 1.0;
    double lipschitz_sqrt_ = 0.0;
    std::string name_ = "constant";
    std::function<double(double)> eval_fn_;
    std::function<double(double)> envelope_fn_;
    std::function<double(double)> antiderivative_fn_;
};

}  // namespace hawkes
