#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <vector>

#include "hawkes/generators.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/test_function.hpp"

using namespace hawkes;

namespace {

ModelSpec two_point_spec(std::uint64_t n = 100) {
    ModelSpec spec;
    spec.alpha = 2.0;
    spec.f = RateFunction::quadratic();
    spec.mu = JumpDistribution::two_point(2.0, -1.0);
    spec.n_components = n;
    return spec;
}

ModelSpec gaussian_spec(std::uint64_t n = 100) {
    ModelSpec spec = two_point_spec(n);
    spec.mu = JumpDistribution::gaussian(1.0);
    return spec;
}

std::vector<TestFunction> all_builtins() {
    return {TestFunction::sine(),          TestFunction::hyperbolic_tangent(),
            TestFunction::gaussian_bump(), TestFunction::monomial(1),
            TestFunction::monomial(2),     TestFunction::monomial(3)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Test-function package consistency

TEST_CASE("each stored derivative matches a central difference of its parent") {
    RngStream rng(31, "generators.fd", 0);
    const double step = 1e-5;
    for (const TestFunction& g : all_builtins()) {
        INFO("function: ", g.name);
        for (int i = 0; i < 100; ++i) {
            const double x = -3.0 + 6.0 * rng.uniform();
            const double fd1 = (g.g(x + step) - g.g(x - step)) / (2.0 * step);
            const double fd2 = (g.g1(x + step) - g.g1(x - step)) / (2.0 * step);
            const double fd3 = (g.g2(x + step) - g.g2(x - step)) / (2.0 * step);
            CHECK(std::abs(fd1 - g.g1(x)) <= 1e-5 * (1.0 + std::abs(g.g1(x))));
            CHECK(std::abs(fd2 - g.g2(x)) <= 1e-5 * (1.0 + std::abs(g.g2(x))));
            CHECK(std::abs(fd3 - g.g3(x)) <= 1e-5 * (1.0 + std::abs(g.g3(x))));
        }
    }
}

TEST_CASE("declared sup norms hold on a dense grid") {
    for (const TestFunction& g : all_builtins()) {
        INFO("function: ", g.name);
        const double radius = std::min(g.interval_radius, 10.0);
        for (int i = 0; i <= 4000; ++i) {
            const double x = -radius + 2.0 * radius * i / 4000.0;
            const double slack = 1.0 + 1e-12;
            CHECK(std::abs(g.g(x)) <= g.norm_g * slack);
            CHECK(std::abs(g.g1(x)) <= g.norm_g1 * slack);
            CHECK(std::abs(g.g2(x)) <= g.norm_g2 * slack);
            CHECK(std::abs(g.g3(x)) <= g.norm_g3 * slack);
        }
        CHECK(g.norm_3_inf() ==
              doctest::Approx(g.norm_g + g.norm_g1 + g.norm_g2 + g.norm_g3));
    }
}

TEST_CASE("lookup by name round-trips") {
    for (const char* name : {"sin", "tanh", "gaussian_bump", "x", "x2", "x3"}) {
        CHECK(TestFunction::by_name(name).name == name);
    }
    CHECK_THROWS_AS(TestFunction::by_name("nope"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Exact generator identities

TEST_CASE("the generators agree exactly on linear functions") {
    const TestFunction g = TestFunction::monomial(1);
    for (const ModelSpec& spec : {two_point_spec(), gaussian_spec()}) {
        for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            const double expected = -spec.alpha * x;
            CHECK(apply_A_bar(g, spec, x) ==
                  doctest::Approx(expected).epsilon(1e-13));
            // Centered marks kill the jump expectation at first order, so the
            // N-system generator collapses to the drift for g(x) = x.
            CHECK(apply_A_N(g, spec, x) ==
                  doctest::Approx(expected).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("the generators agree exactly on quadratics") {
    const TestFunction g = TestFunction::monomial(2);
    for (const ModelSpec& spec : {two_point_spec(), gaussian_spec()}) {
        for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            const double expected =
                -2.0 * spec.alpha * x * x + spec.sigma2() * spec.f(x);
            CHECK(apply_A_bar(g, spec, x) ==
                  doctest::Approx(expected).epsilon(1e-12));
            CHECK(apply_A_N(g, spec, x) ==
                  doctest::Approx(expected).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("cubics expose the third-moment term exactly") {
    const TestFunction g = TestFunction::monomial(3);
    // Symmetric marks: the x^3 expansion terminates after the matched second
    // order, so the generators coincide.
    for (double x : {-1.5, 0.0, 0.8, 2.0}) {
        const ModelSpec spec = gaussian_spec();
        CHECK(apply_A_N(g, spec, x) ==
              doctest::Approx(apply_A_bar(g, spec, x)).epsilon(1e-11).scale(1.0));
    }
    // Asymmetric marks: the residual is f(x) E[U^3] / sqrt(N), on the nose.
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
        const ModelSpec spec = two_point_spec(n);
        for (double x : {-1.5, 0.0, 0.8, 2.0}) {
            const double gap = apply_A_N(g, spec, x) - apply_A_bar(g, spec, x);
            const double expected = spec.f(x) * spec.mu.third_moment() /
                                    std::sqrt(static_cast<double>(n));
            CHECK(gap == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("frozen oracle for the N-system generator on sine") {
    // At x = 0 with N = 100 and marks {2, -1} w.p. {1/3, 2/3} the drift term
    // vanishes and A_N sin(0) = 100 (sin(0.2)/3 + 2 sin(-0.1)/3).
    const ModelSpec spec = two_point_spec(100);
    const TestFunction g = TestFunction::sine();
    CHECK(apply_A_N(g, spec, 0.0) ==
          doctest::Approx(-0.033250083286502972).epsilon(1e-12));
    CHECK(apply_A_bar(g, spec, 0.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("gap bound closed form and sharpness") {
    const TestFunction g = TestFunction::sine();
    const ModelSpec spec = two_point_spec(100);
    // f(0) = 1, ||g'''|| = 1, E|U|^3 = 10/3, 6 sqrt(100) = 60.
    CHECK(gap_bound(g, spec, 0.0) ==
          doctest::Approx(1.0 / 18.0).epsilon(1e-14));
    for (std::uint64_t n : {100ull, 1000ull}) {
        const ModelSpec s = two_point_spec(n);
        const double gap = std::abs(apply_A_N(g, s, 0.0) - apply_A_bar(g, s, 0.0));
        const double bound = gap_bound(g, s, 0.0);
        REQUIRE(gap > 0.0);
        CHECK(bound / gap < 6.0);  // the constant is within a small factor
        CHECK(gap <= bound);
    }
}

// ---------------------------------------------------------------------------
// Grid sweep

TEST_CASE("asymmetric marks give a clean sweep with square-root decay") {
    const std::vector<double> xs{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    const std::vector<std::uint64_t> ns{10, 100, 1000, 10000};
    const GapReport report =
        gap_check(TestFunction::sine(), two_point_spec(), xs, ns);
    CHECK(report.pass());
    CHECK(report.violations.empty());
    CHECK(report.worst_ratio <= 1.0);
    CHECK(report.worst_ratio > 0.0);
    CHECK(report.slope > -0.55);
    CHECK(report.slope < -0.45);
    CHECK(report.table.size() == xs.size() * ns.size());
}

TEST_CASE("symmetric marks decay a full order faster") {
    const std::vector<double> xs{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    const std::vector<std::uint64_t> ns{10, 100, 1000, 10000};
    const GapReport report =
        gap_check(TestFunction::sine(), gaussian_spec(), xs, ns);
    CHECK(report.pass());
    CHECK(report.worst_ratio <= 1.0);
    CHECK(report.slope > -1.1);
    CHECK(report.slope < -0.9);
}

TEST_CASE("grid points outside a monomial's declared interval are rejected") {
    const std::vector<double> xs{0.0, 11.0};
    const std::vector<std::uint64_t> ns{10, 100};
    CHECK_THROWS_AS(
        gap_check(TestFunction::monomial(3), two_point_spec(), xs, ns),
        std::invalid_argument);
}

TEST_CASE("user-defined marks have no closed jump expectation") {
    ModelSpec spec = two_point_spec();
    spec.mu = JumpDistribution::user_defined(
        [](RngStream& rng) { return rng.normal(); }, 1.0, 1.5957691216057308,
        3.0);
    CHECK_THROWS_AS(apply_A_N(TestFunction::sine(), spec, 0.0),
                    std::invalid_argument);
}

TEST_CASE("the JSON report round-trips the sweep") {
    const std::vector<double> xs{-1.0, 0.0, 1.0};
    const std::vector<std::uint64_t> ns{10, 100};
    const GapReport report =
        gap_check(TestFunction::sine(), two_point_spec(), xs, ns);
    const nlohmann::json j = nlohmann::json::parse(gap_report_json(report));
    CHECK(j.at("g_name").get<std::string>() == "sin");
    CHECK(j.at("worst_ratio").get<double>() ==
          doctest::Approx(report.worst_ratio));
    CHECK(j.at("slope").get<double>() == doctest::Approx(report.slope));
    CHECK(j.at("violations").is_array());
    CHECK(j.at("violations").empty());
    REQUIRE(j.at("table").size() == 6);
    CHECK(j.at("table")[0].at("n").get<std::uint64_t>() == 10);
}
