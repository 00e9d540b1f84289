import math

import pytest
from numpy.testing import assert_allclose

import library.config as config
from library.commands import RunConfig, exit_status, observed_trend, run_command
from library.errors import ConfigError, DomainError, UsageError
from library.output import ResultDocument


def test_constant_at_infinity():
    document = run_command(RunConfig("constant", n=3, p="inf", x_norm=0.5))
    (row,) = document.results
    assert_allclose(row["C"], 8 / 3, rtol=1e-12)
    assert row["direction_kind"] == "any"
    assert row["path"] == "closed-form"
    assert document.diagnostics["regime"] == "infinity"


def test_constant_at_n_at_the_origin():
    (row,) = run_command(RunConfig("constant", n=3, p="n", x_norm=0.0)).results
    assert_allclose(row["K"], 0.4, rtol=1e-12)


def test_constant_origin_has_no_preferred_direction():
    document = run_command(RunConfig("constant", n=3, p="2", x_norm=0.0))
    assert document.results[0]["direction_kind"] == "any"


@pytest.mark.parametrize("p, predicted", [("2", "radial"), ("5", "tangential"), ("n", "any")])
def test_constant_reports_the_predicted_direction(p, predicted):
    document = run_command(RunConfig("constant", n=3, p=p, x_norm=0.5))
    assert document.diagnostics["predicted_direction"] == predicted
    assert document.results[0]["direction_kind"] == predicted


def test_constant_along_a_direction():
    (row,) = run_command(RunConfig("constant", n=4, p="2", x_norm=0.5, gamma=0.6, path="SPHERE")).results
    assert row["direction_kind"] == "oblique"
    assert row["path"] == "sphere-quadrature"
    assert_allclose(row["gamma"], 0.6)


def test_constant_min_direction_uses_quadrature():
    best = run_command(RunConfig("constant", p="2")).results[0]
    worst = run_command(RunConfig("constant", p="2", extremum="min")).results[0]
    assert worst["path"] == "disc-reduction"
    assert worst["C"] < best["C"]


@pytest.mark.parametrize("p, trend", [("2", "decreasing"), ("5", "increasing"), ("inf", "constant"),
                                      ("n", "constant")])
def test_sweep_gamma_trend(p, trend):
    document = run_command(RunConfig("sweep-gamma", n=3, p=p, x_norm=0.5, steps=4))
    assert len(document.results) == 5
    assert_allclose(document.results[-1]["gamma"], math.pi / 2)
    assert document.diagnostics["observed_trend"] == trend


def test_observed_trend():
    assert observed_trend([1.0, 1.0, 1.0]) == "constant"
    assert observed_trend([3.0, 2.0, 1.0]) == "decreasing"
    assert observed_trend([1.0, 3.0, 2.0]) == "mixed"


def test_table_follows_the_profile_grid():
    document = run_command(RunConfig("table", n=3, profile="quick"))
    tokens = config.PROFILE_DATA['TABLE']['EXPONENTS']
    norms = config.PROFILE_DATA['TABLE']['X_NORMS']
    assert len(document.results) == len(tokens) * len(norms)
    assert document.diagnostics == {"profile": "quick", "n": 3}
    at_n = {row["x_norm"]: row["K"] for row in document.results if row["p_token"] == "n"}
    assert_allclose(at_n[0.5] / at_n[0.0], 1.25, rtol=1e-12)


def test_verify_command():
    document = run_command(RunConfig("verify", only=["kummer"], profile="quick"))
    assert document.diagnostics["passed"] is True
    assert document.diagnostics["failed"] == 0
    assert document.diagnostics["cases"] == len(document.results)
    assert exit_status(document) == 0


@pytest.mark.slow
def test_sharpness_command():
    document = run_command(RunConfig("sharpness", n=3, p="2", x_norm=0.5, trials=3, profile="quick"))
    assert document.diagnostics["passed"] is True
    kinds = [row["kind"] for row in document.results]
    assert kinds[-1] == "scan-plane"
    assert all(kind == "extremal-candidate" for kind in kinds[:-1])


def test_overrides_reach_the_configuration():
    run_command(RunConfig("constant", p="inf", base_order=16, samples=1000, workers=2, path="DISC"))
    assert config.CONFIG_DATA['quadrature']['BASE_ORDER'] == 16
    assert config.CONFIG_DATA['monte_carlo']['SAMPLES'] == 1000
    assert config.CONFIG_DATA['config']['WORKERS'] == 2
    assert config.CONFIG_DATA['config']['PATH'] == "DISC"


@pytest.mark.parametrize("kwargs, error", [
    ({"command": "constant", "n": 2}, DomainError),
    ({"command": "constant", "x_norm": 1.0}, DomainError),
    ({"command": "constant", "x_norm": -0.1}, DomainError),
    ({"command": "constant", "p": "1"}, DomainError),
    ({"command": "constant", "p": "1e999"}, UsageError),
    ({"command": "constant", "path": "GAUSS"}, UsageError),
    ({"command": "constant", "extremum": "min", "path": "CLOSED_FORM"}, UsageError),
    ({"command": "sweep-gamma", "gamma": 0.3}, UsageError),
    ({"command": "sweep-gamma", "steps": 0}, DomainError),
    ({"command": "sharpness", "family": "spherical"}, UsageError),
    ({"command": "verify", "only": ["riemann"]}, UsageError),
    ({"command": "integrate"}, UsageError),
])
def test_validation(kwargs, error):
    with pytest.raises(error):
        run_command(RunConfig(**kwargs))


def test_invalid_tolerance_is_rejected_before_computing():
    with pytest.raises(DomainError):
        run_command(RunConfig("constant", rel_tol=0.0))


def test_unknown_profile():
    with pytest.raises(ConfigError):
        run_command(RunConfig("table", profile="does-not-exist"))


def test_exit_status():
    assert exit_status(ResultDocument({}, [], {"passed": False})) == 1
    assert exit_status(ResultDocument({}, [], {"passed": True})) == 0
    assert exit_status(ResultDocument({}, [], {})) == 0
