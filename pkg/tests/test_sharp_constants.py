import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import beta as scipy_beta

import library.config as config
from library.errors import DomainError, NumericalError, UsageError
from library.hyperbolic_kernel import BallPoint, Direction
from library.sharp_constants import (AngleGamma, C_directional, C_from_K, C_optimal, ConstantReport, DirectionKind,
                                     ExponentPair, K_closed_form, K_disc, K_monte_carlo, K_sphere, KPath, Regime,
                                     classify_regime, conjugate_exponent, direction_geometry,
                                     expected_derivative_sign, integral_I, integral_I_derivative, integral_J,
                                     lemma5_identity_check, moment_integral, parse_exponent, reduce_gamma,
                                     tangent_direction)


def test_conjugate_exponent():
    assert conjugate_exponent(2.0) == 2.0
    assert conjugate_exponent(math.inf) == 1.0
    assert_allclose(conjugate_exponent(3.0), 1.5)
    with pytest.raises(DomainError):
        conjugate_exponent(1.0)


@pytest.mark.parametrize("p, n, regime", [(1.5, 3, Regime.BELOW), (3, 3, Regime.AT_N), (3.0000001, 3, Regime.ABOVE),
                                          (math.inf, 4, Regime.INFINITY), (4, 5, Regime.BELOW)])
def test_classify_regime(p, n, regime):
    assert classify_regime(p, n) is regime


@pytest.mark.parametrize("token, value", [("inf", math.inf), ("n", 3.0), ("n+2", 5.0), ("2n", 6.0), ("n-1.5", 1.5),
                                          ("1.5", 1.5), (2, 2.0)])
def test_parse_exponent(token, value):
    assert parse_exponent(token, 3) == value


@pytest.mark.parametrize("token", ["1e999", "infinity", "abc"])
def test_parse_exponent_rejects_other_spellings(token):
    with pytest.raises(UsageError):
        parse_exponent(token, 3)


def test_parse_exponent_needs_dimension():
    with pytest.raises(UsageError):
        parse_exponent("n+1")


def test_exponent_pair():
    pq = ExponentPair.of(3)
    assert pq.q == 1.5
    assert pq.kernel_power(3) == 1.0
    assert pq.regime(3) is Regime.AT_N
    assert ExponentPair.of(math.inf).kernel_power(5) == 0.0
    assert ExponentPair.of(math.inf).label() == "inf"
    with pytest.raises(DomainError):
        ExponentPair(2.0, 3.0)
    with pytest.raises(DomainError):
        ExponentPair(math.inf, 2.0)


@pytest.mark.parametrize("gamma, reduced", [(0.0, 0.0), (3 * math.pi / 4, math.pi / 4), (-math.pi / 6, math.pi / 6),
                                            (math.pi, 0.0), (5 * math.pi / 2, math.pi / 2)])
def test_reduce_gamma(gamma, reduced):
    assert_allclose(reduce_gamma(gamma), reduced, atol=1e-14)
    assert_allclose(AngleGamma(gamma).value, reduced, atol=1e-14)


def test_integral_I_without_B_is_a_beta_value():
    # int_{-pi}^{pi} |cos t| dt = 4
    assert_allclose(integral_I(1.5, 1.0, 2.0, 0.0, 0.7), 2.0 ** 1.5 * 4.0, rtol=1e-12)
    b = 2.5
    assert_allclose(integral_I(0.0, b, 1.0, 0.0, 0.0), 2 * scipy_beta(0.5, (b + 1) / 2), rtol=1e-12)


def test_integral_I_with_a_one_is_constant():
    for gamma in (0.0, 0.4, math.pi / 2):
        assert_allclose(integral_I(1.0, 2.0, 1.5, 0.8, gamma), 1.5 * math.pi, rtol=1e-12)


def test_integral_I_accepts_an_array_of_B():
    values = integral_I(2.5, 1.0, 2.0, np.array([0.0, 0.5, 1.0]), 0.3)
    singles = [integral_I(2.5, 1.0, 2.0, B, 0.3) for B in (0.0, 0.5, 1.0)]
    assert_allclose(values, singles, rtol=1e-12)


@pytest.mark.parametrize("b, A, B", [(0.0, 2.0, 1.0), (1.0, 1.0, 1.0), (1.0, 1.0, -0.2)])
def test_integral_I_domain(b, A, B):
    with pytest.raises(DomainError):
        integral_I(1.5, b, A, B, 0.0)


@pytest.mark.parametrize("a, b, A, B, gamma", [(2.5, 1.0, 2.0, 1.0, 0.4), (0.3, 2.3, 1.5, 0.4, 1.1),
                                               (-1.2, 0.5, 1.2, 1.1, 0.9), (1.6, 1.0, 2.0, 1.0, 2.2)])
def test_integral_I_derivative_matches_finite_differences(a, b, A, B, gamma):
    h = 1e-3
    fd = (integral_I(a, b, A, B, gamma + h) - integral_I(a, b, A, B, gamma - h)) / (2 * h)
    assert_allclose(integral_I_derivative(a, b, A, B, gamma), fd, rtol=1e-5, atol=1e-8)


@pytest.mark.parametrize("a", [0.3, 0.7, 1.6, 2.5, -0.5])
@pytest.mark.parametrize("gamma", [0.2, 0.8, 1.4])
def test_integral_I_derivative_sign_law(a, gamma):
    value = integral_I_derivative(a, 1.0, 2.0, 1.0, gamma)
    assert int(np.sign(value)) == expected_derivative_sign(a)


def test_integral_I_derivative_vanishes_at_the_ends():
    for gamma in (0.0, math.pi / 2):
        assert abs(integral_I_derivative(2.5, 1.0, 2.0, 1.0, gamma)) <= 1e-12


def test_expected_derivative_sign():
    assert expected_derivative_sign(0.5) == 1
    assert expected_derivative_sign(2.0) == -1
    assert expected_derivative_sign(-1.0) == -1
    assert expected_derivative_sign(1.0) == 0
    assert expected_derivative_sign(0.5, 3 * math.pi / 4) == -1
    assert expected_derivative_sign(2.0, math.pi / 2) == 0


def test_integral_J_requires_interior_radii():
    with pytest.raises(DomainError):
        integral_J(2.0, 1.0, 0.5, 0.0, 3)
    assert integral_J(2.0, 0.5, 0.5, 0.0, 3) > 0


def test_K_closed_form_values():
    # p = inf: (2/n) V(B^{n-1}) / V(B^n); p = n = 3 at the origin: 2/5
    assert_allclose(K_closed_form(ExponentPair.of(math.inf), 0.5, DirectionKind.ANY, 3), 0.5, rtol=1e-14)
    assert_allclose(K_closed_form(ExponentPair.of(3), 0.0, DirectionKind.ANY, 3), 0.4, rtol=1e-12)


def test_K_at_n_is_linear_in_one_plus_x_squared():
    pq = ExponentPair.of(3)
    ratio = K_closed_form(pq, 0.6, DirectionKind.RADIAL, 3) / K_closed_form(pq, 0.0, DirectionKind.RADIAL, 3)
    assert_allclose(ratio, 1.36, rtol=1e-12)
    assert_allclose(K_disc(pq, 0.6, 0.3, 3) / K_disc(pq, 0.0, 0.3, 3), 1.36, rtol=1e-9)


def test_K_closed_form_rejects_inadmissible_direction():
    with pytest.raises(UsageError):
        K_closed_form(ExponentPair.of(2), 0.5, DirectionKind.TANGENTIAL, 3)
    with pytest.raises(UsageError):
        K_closed_form(ExponentPair.of(5), 0.5, DirectionKind.OBLIQUE, 3)


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("p, gamma, kind", [(2, 0.0, DirectionKind.RADIAL), (1.5, 0.0, DirectionKind.RADIAL),
                                            ("n+2", math.pi / 2, DirectionKind.TANGENTIAL),
                                            ("n", math.pi / 6, DirectionKind.OBLIQUE),
                                            ("inf", math.pi / 3, DirectionKind.OBLIQUE)])
@pytest.mark.parametrize("x_norm", [0.2, 0.7])
def test_three_paths_agree(n, p, gamma, kind, x_norm):
    pq = ExponentPair.of(parse_exponent(p, n))
    disc = K_disc(pq, x_norm, gamma, n)
    assert_allclose(K_sphere(pq, x_norm, gamma, n), disc, rtol=1e-8)
    assert_allclose(K_closed_form(pq, x_norm, kind, n), disc, rtol=1e-8)


def test_sphere_and_disc_agree_for_oblique_directions():
    pq = ExponentPair.of(2)
    assert_allclose(K_sphere(pq, 0.5, 0.9, 5), K_disc(pq, 0.5, 0.9, 5), rtol=1e-8)


def test_K_monte_carlo_is_consistent():
    pq = ExponentPair.of(2)
    value, std_err = K_monte_carlo(pq, 0.5, 0.4, 3, samples=200000, seed=9, with_error=True)
    assert abs(value - K_disc(pq, 0.5, 0.4, 3)) <= 5 * std_err


def test_K_requires_dimension_three():
    with pytest.raises(DomainError):
        K_disc(ExponentPair.of(2), 0.5, 0.0, 2)
    with pytest.raises(DomainError):
        K_sphere(ExponentPair.of(2), 1.0, 0.0, 3)


def test_C_from_K():
    # n = 3, p = inf, |x| = 0.5: 2 (n-1) K / (1 - |x|^2) with K = 1/2
    assert_allclose(C_from_K(0.5, ExponentPair.of(math.inf), 0.5, 3), 8 / 3, rtol=1e-15)
    with pytest.raises(DomainError):
        C_from_K(0.0, ExponentPair.of(2), 0.5, 3)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("x_norm", [0.0, 0.5, 0.9])
def test_C_infinity_closed_form(n, x_norm):
    report = C_optimal(ExponentPair.of(math.inf), BallPoint.on_axis(x_norm, n))
    expected = 2 * (n - 1) * math.gamma(n / 2) / (math.sqrt(math.pi) * math.gamma((n + 1) / 2)) / (1 - x_norm ** 2)
    assert_allclose(report.value, expected, rtol=1e-10)
    assert report.path is KPath.CLOSED_FORM
    assert report.direction_kind is DirectionKind.ANY


def test_C_infinity_example_value():
    assert_allclose(C_optimal(ExponentPair.of(math.inf), BallPoint.on_axis(0.5, 3)).value, 8 / 3, rtol=1e-12)


def test_C_at_the_origin_has_no_preferred_direction():
    report = C_optimal(ExponentPair.of(2), BallPoint(np.zeros(3)))
    assert report.direction_kind is DirectionKind.ANY


@pytest.mark.parametrize("p, kind", [(2, DirectionKind.RADIAL), (5, DirectionKind.TANGENTIAL)])
def test_C_optimal_direction_by_regime(p, kind):
    x = BallPoint.on_axis(0.5, 3)
    best = C_optimal(ExponentPair.of(p), x)
    worst = C_optimal(ExponentPair.of(p), x, extremum="min")
    assert best.direction_kind is kind
    assert best.path is KPath.CLOSED_FORM
    assert worst.path is KPath.DISC
    assert worst.value < best.value


def test_C_optimal_minimum_has_no_closed_form():
    with pytest.raises(UsageError):
        C_optimal(ExponentPair.of(2), BallPoint.on_axis(0.5, 3), extremum="min", path="CLOSED_FORM")


@pytest.mark.parametrize("configured, used", [("AUTO", KPath.DISC), ("CLOSED_FORM", KPath.DISC),
                                              ("SPHERE", KPath.SPHERE)])
def test_C_optimal_minimum_follows_the_configured_path(monkeypatch, configured, used):
    monkeypatch.setitem(config.CONFIG_DATA['config'], 'PATH', configured)
    assert C_optimal(ExponentPair.of(2), BallPoint.on_axis(0.5, 3), extremum="min").path is used


def test_C_directional_matches_rotated_frame():
    # x off the first axis and an oblique direction at the same angle give the same constant
    pq = ExponentPair.of(2)
    x = BallPoint([0.0, 0.3, 0.4])
    tangent = tangent_direction(x).coords
    radial = x.unit()
    direction = Direction.of(math.cos(0.6) * radial + math.sin(0.6) * tangent)
    rotated = C_directional(pq, BallPoint.on_axis(0.5, 3), Direction.in_plane(0.6, 3))
    assert_allclose(C_directional(pq, x, direction).value, rotated.value, rtol=1e-10)


def test_C_directional_rejects_closed_form_for_oblique_direction():
    with pytest.raises(UsageError):
        C_directional(ExponentPair.of(2), BallPoint.on_axis(0.5, 3), Direction.in_plane(0.6, 3), path="CLOSED_FORM")


def test_direction_geometry():
    x = BallPoint.on_axis(0.5, 3)
    assert direction_geometry(x, Direction.axis(0, 3)) == (0.0, DirectionKind.RADIAL)
    assert direction_geometry(x, -Direction.axis(0, 3)) == (0.0, DirectionKind.RADIAL)
    assert direction_geometry(x, Direction.axis(2, 3)) == (math.pi / 2, DirectionKind.TANGENTIAL)
    gamma, kind = direction_geometry(x, Direction.in_plane(2.0, 3))
    assert kind is DirectionKind.OBLIQUE
    assert_allclose(gamma, math.pi - 2.0)


def test_evaluate_K_falls_back_on_numerical_error(monkeypatch):
    from library.evaluators.evaluator_disc import Disc

    monkeypatch.setitem(config.CONFIG_DATA['monte_carlo'], 'SAMPLES', 20000)

    def failing(*args, **kwargs):
        raise NumericalError("forced", "K_disc")

    monkeypatch.setattr(Disc, "evaluate", staticmethod(failing))
    report = C_directional(ExponentPair.of(2), BallPoint.on_axis(0.5, 3), Direction.in_plane(0.6, 3),
                           path="AUTO")
    assert report.path is KPath.MONTE_CARLO


def test_constant_report_validation():
    with pytest.raises(NumericalError):
        ConstantReport(0.0, KPath.DISC, 0.0, Regime.BELOW, DirectionKind.RADIAL, 1.0, 0.0, 3, 0.5, 2.0)
    report = ConstantReport(1.0, KPath.DISC, 0.0, Regime.BELOW, DirectionKind.RADIAL, 1.0, 0.0, 3, 0.5, math.inf)
    assert report.as_dict()["p"] == "inf"
    assert report.as_dict()["path"] == "disc-reduction"


@pytest.mark.parametrize("a, b, alpha, u", [(1.0, 0.5, 2.0, 0.6), (0.5, 0.0, -1.5, 0.9), (1.5, -0.5, 0.7, 0.3),
                                            (-0.5, -0.5, 1.0, 0.5), (3.0, 1.0, -2.0, 0.0)])
def test_lemma5_identity(a, b, alpha, u):
    lhs, rhs = lemma5_identity_check(a, b, alpha, u)
    assert_allclose(lhs, rhs, rtol=1e-9)


def test_moment_integral_values():
    assert_allclose(moment_integral(2, 1.0, 3), 1 / 8, rtol=1e-14)
    assert_allclose(moment_integral(0, 0.5, 3), 1 / 1.5, rtol=1e-14)
    assert moment_integral(3, 1.0, 4) == 0.0
    # circle: int |eta2| dsigma = 2 / pi
    assert_allclose(moment_integral(0, 1.0, 2), 2 / math.pi, rtol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
@pytest.mark.parametrize("k", [0, 1, 2, 4])
@pytest.mark.parametrize("q", [0.5, 1.7])
def test_moment_integral_quadrature(n, k, q):
    value = moment_integral(k, q, n, method="quadrature")
    assert_allclose(value, moment_integral(k, q, n), rtol=1e-8, atol=1e-10)


def test_moment_integral_domain():
    with pytest.raises(DomainError):
        moment_integral(1.5, 1.0, 3)
    with pytest.raises(UsageError):
        moment_integral(2, 1.0, 3, method="series")
