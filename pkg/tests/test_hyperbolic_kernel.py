import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from library.errors import DomainError
from library.hyperbolic_kernel import (BallPoint, BoundaryFunction, Direction, Symmetry, boundary_norm,
                                       gradient_fd, gradient_fd_richardson, hyperbolic_laplacian_residual,
                                       kernel_gradient, mobius_bound_check, mobius_map, mobius_phi,
                                       mobius_preimage_hyperplane, origin_gradient_bound, poisson_gradient,
                                       poisson_integral, poisson_kernel)
from library.sphere_quadrature import SLICE_1VAR, SLICE_2VAR


def random_sphere_points(n, count, seed=3):
    rng = np.random.Generator(np.random.Philox(seed))
    g = rng.standard_normal((count, n))
    return g / np.linalg.norm(g, axis=1)[:, None]


def test_ball_point_validation():
    with pytest.raises(DomainError):
        BallPoint([0.6, 0.8, 0.0])
    with pytest.raises(DomainError):
        BallPoint([0.5])
    x = BallPoint.on_axis(0.5, 4, axis=2)
    assert x.n == 4
    assert_allclose(x.unit(), np.eye(4)[2])
    assert BallPoint(np.zeros(3)).unit() is None


def test_direction_validation():
    with pytest.raises(DomainError):
        Direction([1.0, 1.0, 0.0])
    with pytest.raises(DomainError):
        Direction.of([0.0, 0.0])
    d = Direction.in_plane(math.pi / 3, 3)
    assert_allclose(d.coords, [0.5, math.sqrt(3) / 2, 0.0], atol=1e-15)
    assert_allclose((-d).coords, -d.coords)


def test_boundary_function_frame_must_match_symmetry():
    with pytest.raises(DomainError):
        BoundaryFunction(lambda z: z[..., 0], 3, Symmetry.TWO_COORDINATES, np.eye(3)[:1])
    with pytest.raises(DomainError):
        BoundaryFunction(lambda z: z[..., 0], 3, Symmetry.ONE_COORDINATE, [[1.0, 1.0, 0.0]])


def test_poisson_kernel_at_origin_is_one():
    zeta = random_sphere_points(4, 10)
    assert_allclose(poisson_kernel(np.zeros(4), zeta), 1.0)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("x_norm", [0.0, 0.3, 0.9])
def test_poisson_integral_reproduces_constants(n, x_norm):
    estimate = poisson_integral(BoundaryFunction.constant(1.0, n), BallPoint.on_axis(x_norm, n))
    assert estimate.path == SLICE_1VAR
    assert_allclose(estimate.value, 1.0, rtol=1e-9)


def test_poisson_integral_dimension_mismatch():
    with pytest.raises(DomainError):
        poisson_integral(BoundaryFunction.constant(1.0, 3), BallPoint.on_axis(0.2, 4))


def test_kernel_gradient_matches_finite_differences():
    x = np.array([0.2, -0.1, 0.3])
    zeta = random_sphere_points(3, 1)[0]
    fd = gradient_fd(lambda y: float(poisson_kernel(y, zeta)), x, 1e-5)
    assert_allclose(kernel_gradient(x, zeta), fd, rtol=1e-7, atol=1e-7)


@pytest.mark.parametrize("n", [3, 4])
def test_poisson_kernel_is_hyperbolic_harmonic(n):
    x = np.full(n, 0.4 / math.sqrt(n))
    zeta = np.eye(n)[1]

    def u(y):
        return float(poisson_kernel(y, zeta))

    coarse = abs(hyperbolic_laplacian_residual(u, x, 1e-2))
    fine = abs(hyperbolic_laplacian_residual(u, x, 1e-3))
    assert math.log(coarse / fine) / math.log(10.0) >= 1.8


def test_euclidean_harmonic_function_is_not_hyperbolic_harmonic():
    # u = x1 is harmonic for the flat Laplacian, its radial term remains
    x = np.array([0.3, 0.2, 0.1])
    residual = hyperbolic_laplacian_residual(lambda y: y[0], x, 1e-3)
    assert_allclose(residual, 2.0 * (1 - x @ x) * x[0], rtol=1e-6)


def test_stencil_must_stay_in_the_ball():
    with pytest.raises(DomainError):
        gradient_fd(lambda y: y[0], [0.9999, 0.0, 0.0], 1e-3)
    with pytest.raises(DomainError):
        hyperbolic_laplacian_residual(lambda y: y[0], [0.0, 0.0, 0.0], 0.0)


def test_gradient_fd_along_directions():
    def u(y):
        return 2.0 * y[0] - y[1] + 5.0 * y[2]

    plane = np.eye(3)[:2]
    assert_allclose(gradient_fd(u, [0.1, 0.1, 0.1], 1e-4, plane), [2.0, -1.0, 0.0], atol=1e-9)
    gradient, spread = gradient_fd_richardson(u, [0.1, 0.1, 0.1])
    assert_allclose(gradient, [2.0, -1.0, 5.0], atol=1e-9)
    assert spread <= 1e-9


def test_mobius_map_exchanges_origin_and_point():
    a = np.array([0.3, -0.2, 0.4])
    assert_allclose(mobius_map(a, np.zeros(3)), a, atol=1e-15)
    assert_allclose(mobius_map(a, a), np.zeros(3), atol=1e-15)


def test_mobius_map_is_an_involution_of_the_sphere():
    a = np.array([0.5, 0.1, -0.3, 0.2])
    zeta = random_sphere_points(4, 50)
    image = mobius_map(a, zeta)
    assert_allclose(np.linalg.norm(image, axis=1), 1.0, rtol=1e-13)
    assert_allclose(mobius_map(a, image), zeta, atol=1e-13)


def test_mobius_phi_at_origin_is_minus_identity():
    y = BallPoint([0.1, 0.2, -0.3])
    assert_allclose(mobius_phi(BallPoint(np.zeros(3)), y).coords, -y.coords)


def test_mobius_preimage_hyperplane():
    a = np.array([0.4, 0.2, 0.0])
    w, c = np.eye(3)[0], 0.3
    normal, offset = mobius_preimage_hyperplane(a, w, c)
    # points of the sphere on <zeta', w> = c, pulled back through the involution
    t = np.linspace(0, 2 * math.pi, 25)
    rest = math.sqrt(1 - c * c)
    on_plane = np.stack([np.full_like(t, c), rest * np.cos(t), rest * np.sin(t)], axis=1)
    preimages = mobius_map(a, on_plane)
    assert_allclose(preimages @ normal, offset, atol=1e-13)


def test_poisson_gradient_of_constant_vanishes():
    estimate = poisson_gradient(BoundaryFunction.constant(2.0, 3), BallPoint.on_axis(0.3, 3))
    assert_allclose(estimate.value, 0.0, atol=1e-10)


def test_poisson_gradient_matches_finite_differences_in_the_plane():
    frame = np.eye(3)[:2]
    phi = BoundaryFunction.plane_polynomial({(1, 0): 1.0, (0, 2): -0.5, (1, 1): 0.75}, frame)
    x = BallPoint([0.2, 0.3, 0.0])
    estimate = poisson_gradient(phi, x)
    assert estimate.path == SLICE_2VAR

    def u(y):
        return float(poisson_integral(phi, BallPoint(y)).value)

    fd, _ = gradient_fd_richardson(u, x.coords, 1e-3, frame)
    assert_allclose(estimate.value, fd, rtol=1e-6, atol=1e-9)


def test_boundary_norms():
    phi = BoundaryFunction.plane_polynomial({(2, 0): 1.0, (0, 1): 1.0}, np.eye(3)[:2])
    # max of |s^2 + t| on the unit disc is 1.25 at t = 1/2
    assert_allclose(boundary_norm(phi, math.inf).value, 1.25, rtol=1e-6)
    sign = BoundaryFunction.sign_along(np.eye(3)[0])
    assert_allclose(boundary_norm(sign, 2.0).value, 1.0, rtol=1e-12)
    assert_allclose(boundary_norm(BoundaryFunction.constant(3.0, 4), 1.5).value, 3.0, rtol=1e-12)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_origin_gradient_bound_gamma_form(n):
    expected = 2 * (n - 1) * math.gamma(n / 2) / (math.sqrt(math.pi) * math.gamma((n + 1) / 2))
    assert_allclose(origin_gradient_bound(n), expected, rtol=1e-13)


def test_origin_bound_is_attained_by_sign_data():
    phi = BoundaryFunction.sign_along(np.eye(3)[0])
    estimate = poisson_gradient(phi, BallPoint(np.zeros(3)))
    assert_allclose(np.linalg.norm(estimate.value), origin_gradient_bound(3), rtol=1e-10)


def test_mobius_bound_check_with_sign_data():
    phi = BoundaryFunction.sign_along(np.eye(3)[0])
    check = mobius_bound_check(phi, BallPoint.on_axis(0.3, 3))
    assert check.holds
    assert check.relative_residual <= 1e-5
    assert np.linalg.norm(check.composed_gradient) <= check.origin_bound


def test_mobius_bound_check_with_plane_polynomial():
    phi = BoundaryFunction.plane_polynomial({(0, 0): 0.3, (1, 0): -1.0, (1, 2): 2.0, (0, 3): 0.5}, np.eye(4)[:2])
    check = mobius_bound_check(phi, BallPoint([0.25, -0.35, 0.0, 0.0]))
    assert check.holds


def test_composed_boundary_function_keeps_a_small_frame():
    phi = BoundaryFunction.sign_along(np.eye(3)[0])
    composed = phi.composed_with(BallPoint.on_axis(0.3, 3))
    assert composed.symmetry is Symmetry.ONE_COORDINATE
    assert len(composed.kinks) == 1
    zeta = random_sphere_points(3, 40)
    assert_allclose(composed(zeta), phi(mobius_map(np.array([0.3, 0.0, 0.0]), zeta)))


def householder(n, seed):
    rng = np.random.Generator(np.random.Philox(seed))
    v = rng.standard_normal(n)
    return np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
@pytest.mark.parametrize("seed", [1, 2])
def test_poisson_kernel_is_rotation_invariant(n, seed):
    reflection = householder(n, seed)
    x = 0.6 * random_sphere_points(n, 1, seed=seed + 10)[0]
    zeta = random_sphere_points(n, 20, seed=seed + 20)
    assert_allclose(poisson_kernel(reflection @ x, zeta @ reflection.T), poisson_kernel(x, zeta), rtol=1e-12)
    assert_allclose(kernel_gradient(reflection @ x, zeta @ reflection.T), kernel_gradient(x, zeta) @ reflection.T,
                    rtol=1e-10, atol=1e-12)
