"""Smoke test for the hawkes_diffusive extension module.

Covers every exported entry point once, with closed-form targets where they
exist; the heavy statistical validation lives in the C++ suites.
"""

import math

import hawkes_diffusive as hd


def approx(actual, expected, rel=1e-12, abs_tol=0.0):
    assert math.isfinite(actual), f"non-finite value {actual!r}"
    tol = max(rel * abs(expected), abs_tol)
    assert abs(actual - expected) <= tol, f"{actual!r} != {expected!r} (tol {tol})"


def test_model_and_constants():
    model = hd.model(2.0)
    assert model.alpha == 2.0
    assert model.n == 100
    assert model.x0 == 0.0
    approx(model.sigma2, 1.0)
    assert "alpha=2" in repr(model)

    approx(hd.beta(2.0, 1.0, 1.0), -1.5)
    approx(hd.default_epsilon(2.0, 1.0, 1.0), 1.5)
    approx(hd.k_horizon(2.0, 1.0, 1.0, 1.0, 0.5), 2.4935835097998602, rel=1e-8)

    report = hd.validate(model)
    assert report["ok"] is True
    assert report["sharp_regime"] is True
    assert all(check["pass"] for check in report["checks"])


def test_simulation():
    model = hd.model(2.0, n=50)
    run = hd.simulate(model, horizon=2.0, seed=3)
    assert len(run["events"]) > 0
    t0, x0 = run["skeleton"][0]
    assert (t0, x0) == (0.0, 0.0)
    times = [event[0] for event in run["events"]]
    assert times == sorted(times)
    assert all(1 <= event[1] <= 50 for event in run["events"])
    assert math.isfinite(run["final_state"])

    path = hd.simulate_em(model, horizon=1.0, h=1e-3, seed=1)
    assert len(path["values"]) == 1001
    approx(path["step"], 1e-3)
    assert path["values"][0] == 0.0


def test_invariant_density():
    model = hd.model(2.0)
    density = hd.InvariantDensity(model)
    approx(density.pdf(0.0), 0.84882636315677512, rel=1e-8)
    approx(density.cdf(0.0), 0.5, rel=1e-8)
    assert abs(density.quantile(0.5)) < 1e-4
    assert density.radius >= 6.0
    approx(density.normalizer, 3.0 * math.pi / 8.0, rel=1e-8)

    samples = hd.long_run_law(model, t=10.0, reps=2000, seed=11)
    assert len(samples) == 2000
    assert hd.wasserstein1_to_invariant(samples, density) < 0.1

    again = hd.long_run_law(model, t=10.0, reps=2000, seed=11, workers=2)
    assert samples == again, "worker count changed the result bytes"

    shifted = [x + 1.0 for x in samples]
    approx(hd.wasserstein1(samples, shifted), 1.0, rel=1e-9)


def test_generators():
    model = hd.model(2.0, jump="two_point", jump_a=2.0, jump_b=-1.0)
    x = 0.5
    gap = abs(hd.apply_A_N("sin", model, x) - hd.apply_A_bar("sin", model, x))
    assert gap <= hd.gap_bound("sin", model, x)
    approx(hd.apply_A_N("sin", hd.model(2.0, jump="two_point"), 0.0),
           -0.033250083286502972, rel=1e-10)


def test_semigroups_and_chaos():
    model = hd.model(1.0, rate="constant", rate_c=1.0, x0=1.0)
    mean, sem = hd.semigroup_n(model, g="sin", x=1.0, t=0.0, reps=100, seed=5)
    assert (mean, sem) == (math.sin(1.0), 0.0)
    mean, sem = hd.semigroup_limit(model, g="sin", x=1.0, t=1.0, reps=2000, seed=5)
    assert sem > 0.0
    target = math.sin(math.exp(-1.0)) * math.exp(-0.25 * (1.0 - math.exp(-2.0)))
    assert abs(mean - target) < 4.0 * sem

    chaos = hd.chaos_covariance(model, horizon=1.0, reps=2000, seed=6)
    assert chaos["var_lambda"] == 0.0  # constant rate: nothing to vary
    assert chaos["pass"] is True
    assert math.isfinite(chaos["cov_n"]) and chaos["cov_sem"] > 0.0
    assert abs(chaos["mean_pair_count"] - 1.0) < 0.2


def test_config_echo():
    echo = hd.parse_config("alpha = 1\nn = 10\nrate.kind = quadratic\n")
    assert "alpha = 1\n" in echo
    assert "n = 10" in echo
    try:
        hd.parse_config("alpha = banana\n")
    except ValueError as error:
        assert "line 1" in str(error)
    else:
        raise AssertionError("bad config must raise")


def main():
    tests = [value for name, value in sorted(globals().items())
             if name.startswith("test_") and callable(value)]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
