#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/config.hpp"
#include "hawkes/generators.hpp"
#include "hawkes/hawkes_engine.hpp"
#include "hawkes/limit_engine.hpp"
#include "hawkes/mc_lab.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/stationary.hpp"
#include "hawkes/test_function.hpp"

namespace py = pybind11;

namespace {

hawkes::ModelSpec make_model(double alpha, const std::string& rate,
                             const std::string& jump, double jump_sigma,
                             double jump_a, double jump_b, double rate_c,
                             std::uint64_t n, double x0) {
    hawkes::RunConfig config;
    config.alpha = alpha;
    config.rate_kind = rate;
    config.jump_kind = jump;
    if (jump == "gaussian") config.jump_sigma = jump_sigma;
    if (jump == "two_point") {
        config.jump_a = jump_a;
        config.jump_b = jump_b;
    }
    if (rate == "constant") config.rate_c = rate_c;
    config.n = n;
    config.x0 = x0;
    return hawkes::build_model(config);
}

}  // namespace

PYBIND11_MODULE(hawkes_diffusive, m) {
    m.doc() =
        "Mean-field Hawkes systems in the diffusive regime: exact N-component "
        "simulation, the CIR-type diffusion limit, and the numerical "
        "verification operations connecting them.";

    py::class_<hawkes::ModelSpec>(m, "Model")
        .def_readonly("alpha", &hawkes::ModelSpec::alpha)
        .def_readonly("n", &hawkes::ModelSpec::n_components)
        .def_readonly("x0", &hawkes::ModelSpec::x0)
        .def_property_readonly("sigma2", &hawkes::ModelSpec::sigma2)
        .def("__repr__", [](const hawkes::ModelSpec& spec) {
            return "Model(alpha=" + std::to_string(spec.alpha) +
                   ", n=" + std::to_string(spec.n_components) + ")";
        });

    m.def("model", &make_model, py::arg("alpha"), py::arg("rate") = "quadratic",
          py::arg("jump") = "gaussian", py::arg("jump_sigma") = 1.0,
          py::arg("jump_a") = 2.0, py::arg("jump_b") = -1.0,
          py::arg("rate_c") = 1.0, py::arg("n") = 100, py::arg("x0") = 0.0,
          "Builds a model from named rate/jump families.");

    m.def("beta", &hawkes::beta, py::arg("alpha"), py::arg("sigma2"),
          py::arg("L"), "Growth exponent of the semigroup bound.");
    m.def("k_horizon", &hawkes::k_horizon, py::arg("alpha"), py::arg("sigma2"),
          py::arg("L"), py::arg("T"), py::arg("epsilon"),
          "Horizon constant K_T by adaptive quadrature.");
    m.def("default_epsilon", &hawkes::default_epsilon, py::arg("alpha"),
          py::arg("sigma2"), py::arg("L"));

    m.def(
        "validate",
        [](const hawkes::ModelSpec& spec) {
            const hawkes::ValidationReport report = hawkes::validate(spec);
            py::dict out;
            out["ok"] = report.ok();
            out["beta"] = report.beta;
            out["epsilon"] = report.epsilon;
            out["sharp_regime"] = report.sharp_regime;
            py::list checks;
            for (const hawkes::ValidationCheck& check : report.checks) {
                py::dict c;
                c["name"] = check.name;
                c["pass"] = check.pass;
                c["detail"] = check.detail;
                checks.append(c);
            }
            out["checks"] = checks;
            return out;
        },
        py::arg("model"), "Deterministic model diagnostics.");

    m.def(
        "simulate",
        [](const hawkes::ModelSpec& spec, double horizon, std::uint64_t seed) {
            hawkes::RngStream rng = hawkes::derive_stream(seed, "py.simulate", 0);
            const hawkes::SimulationResult result =
                hawkes::simulate(spec, horizon, rng);
            py::dict out;
            py::list events;
            for (const hawkes::EventRecord& event : result.log.events) {
                events.append(
                    py::make_tuple(event.t, event.component, event.mark));
            }
            py::list skeleton;
            for (const hawkes::SkeletonAnchor& anchor : result.path.anchors) {
                skeleton.append(py::make_tuple(anchor.t, anchor.x_post));
            }
            out["events"] = events;
            out["skeleton"] = skeleton;
            out["final_state"] = hawkes::state_at(result.path, horizon);
            return out;
        },
        py::arg("model"), py::arg("horizon"), py::arg("seed") = 0,
        "One exact N-system path: events (t, component, mark) and the state "
        "skeleton.");

    m.def("long_run_law", &hawkes::long_run_law, py::arg("model"), py::arg("t"),
          py::arg("reps"), py::arg("seed") = 0, py::arg("workers") = 1,
          "Terminal states X^N_t over independent replications.");

    m.def(
        "simulate_em",
        [](const hawkes::ModelSpec& spec, double horizon, double h,
           std::uint64_t seed) {
            hawkes::RngStream rng =
                hawkes::derive_stream(seed, "py.simulate_em", 0);
            const hawkes::GridPath path =
                hawkes::simulate_em(spec, horizon, h, rng);
            py::dict out;
            out["step"] = path.step;
            out["values"] = path.values;
            return out;
        },
        py::arg("model"), py::arg("horizon"), py::arg("h") = 1e-3,
        py::arg("seed") = 0, "One Euler-Maruyama path of the diffusion limit.");

    m.def(
        "apply_A_bar",
        [](const std::string& g, const hawkes::ModelSpec& spec, double x) {
            return hawkes::apply_A_bar(hawkes::TestFunction::by_name(g), spec, x);
        },
        py::arg("g"), py::arg("model"), py::arg("x"),
        "Limit generator applied to a named test function.");
    m.def(
        "apply_A_N",
        [](const std::string& g, const hawkes::ModelSpec& spec, double x) {
            return hawkes::apply_A_N(hawkes::TestFunction::by_name(g), spec, x);
        },
        py::arg("g"), py::arg("model"), py::arg("x"),
        "N-system generator applied to a named test function.");
    m.def(
        "gap_bound",
        [](const std::string& g, const hawkes::ModelSpec& spec, double x) {
            return hawkes::gap_bound(hawkes::TestFunction::by_name(g), spec, x);
        },
        py::arg("g"), py::arg("model"), py::arg("x"),
        "Bound f(x) ||g'''|| E|U|^3 / (6 sqrt N) on the generator gap.");

    py::class_<hawkes::InvariantDensity>(m, "InvariantDensity")
        .def(py::init([](const hawkes::ModelSpec& spec) {
                 return hawkes::InvariantDensity(spec);
             }),
             py::arg("model"))
        .def("pdf", &hawkes::InvariantDensity::pdf, py::arg("x"))
        .def("cdf", &hawkes::InvariantDensity::cdf, py::arg("x"))
        .def("quantile", &hawkes::InvariantDensity::quantile, py::arg("u"))
        .def_property_readonly("radius", &hawkes::InvariantDensity::radius)
        .def_property_readonly("normalizer",
                               &hawkes::InvariantDensity::normalizer);

    m.def(
        "wasserstein1",
        [](std::vector<double> a, std::vector<double> b) {
            return hawkes::wasserstein1(std::move(a), std::move(b));
        },
        py::arg("a"), py::arg("b"),
        "W1 between two empirical laws (sorted-sample transport).");
    m.def(
        "wasserstein1_to_invariant",
        [](std::vector<double> samples, const hawkes::InvariantDensity& density) {
            return hawkes::wasserstein1(std::move(samples), density);
        },
        py::arg("samples"), py::arg("density"),
        "W1 between an empirical law and the invariant density.");

    m.def(
        "semigroup_n",
        [](const hawkes::ModelSpec& spec, const std::string& g, double x,
           double t, std::uint64_t reps, std::uint64_t seed, int workers) {
            const hawkes::MCEstimate estimate = hawkes::semigroup_n(
                spec, hawkes::TestFunction::by_name(g), x, t, reps, seed,
                workers);
            return py::make_tuple(estimate.mean, estimate.sem);
        },
        py::arg("model"), py::arg("g"), py::arg("x"), py::arg("t"),
        py::arg("reps"), py::arg("seed") = 0, py::arg("workers") = 1,
        "(mean, sem) of g(X^N_t) started from x.");
    m.def(
        "semigroup_limit",
        [](const hawkes::ModelSpec& spec, const std::string& g, double x,
           double t, double h, std::uint64_t reps, std::uint64_t seed,
           int workers) {
            const hawkes::MCEstimate estimate = hawkes::semigroup_limit(
                spec, hawkes::TestFunction::by_name(g), x, t, h, reps, seed,
                workers);
            return py::make_tuple(estimate.mean, estimate.sem);
        },
        py::arg("model"), py::arg("g"), py::arg("x"), py::arg("t"),
        py::arg("h") = 1e-3, py::arg("reps") = 10000, py::arg("seed") = 0,
        py::arg("workers") = 1, "(mean, sem) of g(Xbar_t) started from x.");

    m.def(
        "chaos_covariance",
        [](const hawkes::ModelSpec& spec, double horizon, std::uint64_t reps,
           double h, std::uint64_t seed, int workers) {
            const hawkes::ChaosReport report = hawkes::chaos_covariance(
                spec, horizon, 2, reps, h, seed, workers);
            py::dict out;
            out["cov_n"] = report.cov_n;
            out["cov_sem"] = report.cov_sem;
            out["var_lambda"] = report.var_lambda;
            out["var_sem"] = report.var_sem;
            out["combined_sem"] = report.combined_sem;
            out["mean_pair_count"] = report.mean_pair_count;
            out["pass"] = report.pass;
            return out;
        },
        py::arg("model"), py::arg("horizon"), py::arg("reps") = 10000,
        py::arg("h") = 1e-3, py::arg("seed") = 0, py::arg("workers") = 1,
        "Pair-count covariance against the variance of the integrated limit "
        "intensity.");

    m.def(
        "parse_config",
        [](const std::string& text) {
            const hawkes::RunConfig config = hawkes::parse_config(text);
            return hawkes::emit_config(config);
        },
        py::arg("text"),
        "Parses a key = value configuration and returns its canonical echo.");
}
