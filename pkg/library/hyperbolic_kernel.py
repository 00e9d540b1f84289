# khavinson-constants - sharp gradient constants for hyperbolic harmonic functions on the unit ball
#
# Copyright (C) 2026  khavinson-constants contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

# Objects of the unit ball B^n: points, directions, boundary functions, the invariant Poisson
# kernel P_h(x, zeta) = ((1 - |x|^2) / |x - zeta|^2)^(n-1), Poisson integrals, the involutive
# Moebius maps, and finite-difference instruments (hyperbolic Laplacian residual, gradients).
#
# Vectorized functions take sphere points as arrays of shape (..., n).

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Tuple

import numpy as np

from library.errors import DomainError
from library.log import logger
from library.sphere_quadrature import (IntegralEstimate, QuadratureSpec, complement_vector, orthonormal_rows,
                                       sphere_integral, unit_ball_volume)

DIRECTION_TOL = 1e-12
FD_STEP = 1e-4

# Grid used to estimate sup norms of tagged boundary functions (radii x angles on the slice disc)
SUP_GRID = (200, 720)
SUP_SAMPLES = 200000


def _coords(v) -> np.ndarray:
    return v.coords if isinstance(v, (BallPoint, Direction)) else np.asarray(v, dtype=float)


@dataclass(frozen=True, eq=False)
class BallPoint:
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float).ravel()
        if coords.size < 2:
            raise DomainError("ball points need dimension n >= 2, got %d" % coords.size)
        if not np.linalg.norm(coords) < 1:
            raise DomainError("point %s is not inside the unit ball" % coords)
        coords.setflags(write=False)
        object.__setattr__(self, 'coords', coords)

    @staticmethod
    def on_axis(norm: float, n: int, axis: int = 0) -> 'BallPoint':
        coords = np.zeros(n)
        coords[axis] = norm
        return BallPoint(coords)

    @property
    def n(self) -> int:
        return self.coords.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def unit(self):
        """n_x = x / |x|, None at the origin"""
        norm = self.norm
        return self.coords / norm if norm > 0 else None


@dataclass(frozen=True, eq=False)
class Direction:
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float).ravel()
        if abs(np.linalg.norm(coords) - 1) > DIRECTION_TOL:
            raise DomainError("direction %s is not a unit vector" % coords)
        coords.setflags(write=False)
        object.__setattr__(self, 'coords', coords)

    @staticmethod
    def of(vector) -> 'Direction':
        vector = np.asarray(vector, dtype=float)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise DomainError("the zero vector has no direction")
        return Direction(vector / norm)

    @staticmethod
    def axis(i: int, n: int) -> 'Direction':
        return Direction(np.eye(n)[i])

    @staticmethod
    def in_plane(gamma: float, n: int) -> 'Direction':
        """l_gamma = cos(gamma) e1 + sin(gamma) e2"""
        coords = np.zeros(n)
        coords[0], coords[1] = math.cos(gamma), math.sin(gamma)
        return Direction.of(coords)

    @property
    def n(self) -> int:
        return self.coords.size

    def __neg__(self) -> 'Direction':
        return Direction(-self.coords)


class Symmetry(Enum):
    ONE_COORDINATE = "depends-on-1-coordinate"
    TWO_COORDINATES = "depends-on-2-coordinates"
    GENERAL = "general"


FRAME_SIZE = {Symmetry.ONE_COORDINATE: 1, Symmetry.TWO_COORDINATES: 2}


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """
    A function on S^{n-1}. The evaluator maps points of shape (..., n) to values of shape (...).

    Tagged functions factor through the coordinates <zeta, f> for the orthonormal rows f of
    frame; the tag is declared by the caller and never checked. kinks lists hyperplanes
    (normal, offset) across which the function is not smooth.
    """
    evaluator: Callable[[np.ndarray], np.ndarray]
    n: int
    symmetry: Symmetry = Symmetry.GENERAL
    frame: np.ndarray = None
    kinks: Tuple[Tuple[np.ndarray, float], ...] = field(default=())

    def __post_init__(self):
        if self.symmetry is Symmetry.GENERAL:
            object.__setattr__(self, 'frame', None)
        else:
            frame = np.array(self.frame, dtype=float).reshape(-1, self.n)
            if frame.shape[0] != FRAME_SIZE[self.symmetry]:
                raise DomainError("%s needs a frame of %d directions, got %d"
                                  % (self.symmetry.value, FRAME_SIZE[self.symmetry], frame.shape[0]))
            if not np.allclose(frame @ frame.T, np.eye(frame.shape[0]), atol=1e-10):
                raise DomainError("boundary function frame must have orthonormal rows")
            object.__setattr__(self, 'frame', frame)
        object.__setattr__(self, 'kinks', tuple((np.asarray(w, dtype=float), float(c)) for w, c in self.kinks))

    def __call__(self, zeta) -> np.ndarray:
        return np.asarray(self.evaluator(np.asarray(zeta, dtype=float)), dtype=float)

    def span(self):
        return None if self.frame is None else list(self.frame)

    @staticmethod
    def constant(value: float, n: int) -> 'BoundaryFunction':
        return BoundaryFunction(lambda z: np.full(z.shape[:-1], float(value)), n,
                                Symmetry.ONE_COORDINATE, np.eye(n)[:1])

    @staticmethod
    def sign_along(direction) -> 'BoundaryFunction':
        """zeta -> sign(<zeta, d>)"""
        d = _coords(direction)
        return BoundaryFunction(lambda z: np.sign(z @ d), d.size, Symmetry.ONE_COORDINATE, d[None, :],
                                ((d, 0.0),))

    @staticmethod
    def plane_polynomial(coefficients: dict, frame) -> 'BoundaryFunction':
        """sum of c * s^i * t^j over {(i, j): c}, where (s, t) are the coordinates in the two frame directions"""
        frame = np.asarray(frame, dtype=float)
        terms = [(int(i), int(j), float(c)) for (i, j), c in coefficients.items()]

        def evaluator(z):
            s = z @ frame[0]
            t = z @ frame[1]
            total = np.zeros(np.shape(s))
            for i, j, c in terms:
                total = total + c * s ** i * t ** j
            return total

        return BoundaryFunction(evaluator, frame.shape[1], Symmetry.TWO_COORDINATES, frame)

    def composed_with(self, a) -> 'BoundaryFunction':
        """zeta -> phi(phi_a(zeta)), the boundary values of u o phi_a"""
        a = _coords(a)
        frame = None
        symmetry = Symmetry.GENERAL
        if self.frame is not None:
            frame = orthonormal_rows(list(self.frame) + [a], self.n)
            symmetry = {1: Symmetry.ONE_COORDINATE, 2: Symmetry.TWO_COORDINATES}.get(frame.shape[0], Symmetry.GENERAL)
        kinks = tuple(mobius_preimage_hyperplane(a, w, c) for w, c in self.kinks)
        return BoundaryFunction(lambda z: self.evaluator(mobius_map(a, z)), self.n, symmetry, frame, kinks)

    def sup_norm(self, seed: int = 0) -> float:
        """max |phi| on a polar grid of the frame disc, or over random sphere points for general functions"""
        if self.frame is None:
            rng = np.random.Generator(np.random.Philox(seed))
            g = rng.standard_normal((SUP_SAMPLES, self.n))
            return float(np.max(np.abs(self(g / np.linalg.norm(g, axis=1)[:, None]))))
        basis = self.frame
        radii = np.linspace(0.0, 1.0, SUP_GRID[0] + 1)
        angles = np.linspace(0.0, 2 * math.pi, SUP_GRID[1], endpoint=False)
        s = radii[:, None] * np.cos(angles)[None, :]
        t = radii[:, None] * np.sin(angles)[None, :]
        if basis.shape[0] == 1:
            points = s[..., None] * basis[0]
            rest = 1.0 - s * s
        else:
            points = s[..., None] * basis[0] + t[..., None] * basis[1]
            rest = 1.0 - s * s - t * t
        if basis.shape[0] < self.n:
            points = points + np.sqrt(np.clip(rest, 0.0, None))[..., None] * complement_vector(basis, self.n)
        return float(np.max(np.abs(self(points))))


def poisson_kernel(x, zeta, n: int = None):
    """P_h(x, zeta) = ((1 - |x|^2) / |x - zeta|^2)^(n-1), vectorized over zeta"""
    xv = _coords(x)
    z = _coords(zeta)
    if n is not None and n != xv.size:
        raise DomainError("poisson_kernel: point of dimension %d used with n = %d" % (xv.size, n))
    return ((1.0 - xv @ xv) / np.sum((xv - z) ** 2, axis=-1)) ** (xv.size - 1)


def kernel_gradient(x, zeta, n: int = None) -> np.ndarray:
    """grad_x P_h(x, zeta) = (n-1) P_h(x, zeta) (-2x/(1-|x|^2) - 2(x-zeta)/|x-zeta|^2)"""
    xv = _coords(x)
    z = _coords(zeta)
    diff = xv - z
    distance = np.sum(diff ** 2, axis=-1)[..., None]
    kernel = poisson_kernel(xv, z, n)[..., None]
    return (xv.size - 1) * kernel * (-2.0 * xv / (1.0 - xv @ xv) - 2.0 * diff / distance)


def mobius_map(a, y) -> np.ndarray:
    """
    phi_a(y) = (|y-a|^2 a - (1-|a|^2)(y-a)) / (1 - 2<y,a> + |y|^2 |a|^2), vectorized over y.
    Defined on the closed ball; maps the sphere onto itself.
    """
    a = _coords(a)
    y = np.asarray(y, dtype=float)
    aa = a @ a
    diff = y - a
    numerator = np.sum(diff ** 2, axis=-1)[..., None] * a - (1.0 - aa) * diff
    denominator = 1.0 - 2.0 * (y @ a) + np.sum(y ** 2, axis=-1) * aa
    return numerator / denominator[..., None]


def mobius_phi(x: BallPoint, y: BallPoint) -> BallPoint:
    """The involutive automorphism of B^n exchanging 0 and x (phi_0 = -identity)"""
    if x.n != y.n:
        raise DomainError("mobius_phi: dimensions %d and %d differ" % (x.n, y.n))
    return BallPoint(mobius_map(x, y.coords))


def mobius_preimage_hyperplane(a, normal, offset: float) -> Tuple[np.ndarray, float]:
    """The hyperplane section {zeta : <phi_a(zeta), normal> = offset} of the sphere as (normal', offset')"""
    a = _coords(a)
    w = np.asarray(normal, dtype=float)
    aa = a @ a
    shift = a @ w - offset
    return 2.0 * shift * a + (1.0 - aa) * w, shift * (1.0 + aa) + (1.0 - aa) * (a @ w)


def _poisson_span(phi: BoundaryFunction, x: BallPoint):
    span = phi.span()
    if span is not None and x.norm > 0:
        span = [x.unit()] + span
    return span


def poisson_integral(phi: BoundaryFunction, x: BallPoint, spec: QuadratureSpec = None,
                     samples: int = None, seed: int = None) -> IntegralEstimate:
    """
    P_h[phi](x) = int P_h(x, zeta) phi(zeta) dsigma(zeta).

    The kernel depends on zeta through <x, zeta> only, so a tagged phi is integrated on the
    slice spanned by x and its frame; general functions, or spans of dimension > 2, go to Monte Carlo.
    """
    if phi.n != x.n:
        raise DomainError("poisson_integral: boundary function of dimension %d at a point of dimension %d"
                          % (phi.n, x.n))
    xv = x.coords
    return sphere_integral(lambda z: poisson_kernel(xv, z) * phi(z), x.n, _poisson_span(phi, x), phi.kinks,
                           spec, samples, seed)


def poisson_gradient(phi: BoundaryFunction, x: BallPoint, spec: QuadratureSpec = None,
                     samples: int = None, seed: int = None) -> IntegralEstimate:
    """
    grad P_h[phi](x), differentiating under the integral sign.

    For a tagged phi the gradient lies in the span of x and the frame (the integrand is odd in
    the orthogonal coordinates), so only the components along that span are integrated.
    """
    span = _poisson_span(phi, x)
    basis = orthonormal_rows(span, x.n) if span is not None else None
    if basis is None or basis.shape[0] > 2:
        basis = np.eye(x.n)
    xv = x.coords
    gradient = np.zeros(x.n)
    error = 0.0
    path = None
    for b in basis:
        part = sphere_integral(lambda z: (kernel_gradient(xv, z) @ b) * phi(z), x.n, span, phi.kinks,
                               spec, samples, seed)
        gradient = gradient + part.value * b
        error = max(error, part.error)
        path = part.path
    return IntegralEstimate(gradient, error, path)


def boundary_norm(phi: BoundaryFunction, p: float, spec: QuadratureSpec = None,
                  samples: int = None, seed: int = None) -> IntegralEstimate:
    """||phi||_p with respect to the normalized surface measure; p = inf gives the grid sup norm"""
    if math.isinf(p):
        return IntegralEstimate(phi.sup_norm(), 0.0, "grid")
    moment = sphere_integral(lambda z: np.abs(phi(z)) ** p, phi.n, phi.span(), phi.kinks, spec, samples, seed)
    value = moment.value ** (1.0 / p)
    return IntegralEstimate(value, value * moment.error / (p * max(moment.value, 1e-300)), moment.path)


def origin_gradient_bound(n: int) -> float:
    """Sharp constant of |grad u(0)| <= C ||phi||_inf: (4(n-1)/n) V(B^{n-1}) / V(B^n)"""
    return 4.0 * (n - 1) / n * unit_ball_volume(n - 1) / unit_ball_volume(n)


def _check_stencil(x, h: float, operation: str):
    if not h > 0:
        raise DomainError("%s: step must be > 0, got %r" % (operation, h))
    if not np.linalg.norm(_coords(x)) + h < 1:
        raise DomainError("%s: stencil of step %g around %s leaves the unit ball" % (operation, h, _coords(x)))


def hyperbolic_laplacian_residual(u: Callable, x, h: float = FD_STEP) -> float:
    """
    (1-|x|^2)^2 Lap u + 2(n-2)(1-|x|^2) sum x_i d_i u at x, with second-order central differences.
    u maps a point (array of length n) to a real.
    """
    xv = _coords(x)
    _check_stencil(xv, h, "hyperbolic_laplacian_residual")
    n = xv.size
    center = u(xv)
    laplacian = 0.0
    radial = 0.0
    for e in np.eye(n):
        forward = u(xv + h * e)
        backward = u(xv - h * e)
        laplacian += (forward - 2.0 * center + backward) / (h * h)
        radial += (xv @ e) * (forward - backward) / (2.0 * h)
    weight = 1.0 - xv @ xv
    return weight ** 2 * laplacian + 2.0 * (n - 2) * weight * radial


def gradient_fd(u: Callable, x, h: float = FD_STEP, directions=None) -> np.ndarray:
    """
    Central-difference gradient of u at x. With orthonormal directions (rows) only the
    derivatives along them are taken and the projection of the gradient on their span is returned.
    """
    xv = _coords(x)
    _check_stencil(xv, h, "gradient_fd")
    basis = np.eye(xv.size) if directions is None else np.asarray(directions, dtype=float).reshape(-1, xv.size)
    gradient = np.zeros(xv.size)
    for d in basis:
        gradient = gradient + (u(xv + h * d) - u(xv - h * d)) / (2.0 * h) * d
    return gradient


def gradient_fd_richardson(u: Callable, x, h: float = FD_STEP, directions=None) -> Tuple[np.ndarray, float]:
    """Richardson-extrapolated gradient from steps h and h/2, and the largest difference between the two"""
    coarse = gradient_fd(u, x, h, directions)
    fine = gradient_fd(u, x, h / 2, directions)
    return (4.0 * fine - coarse) / 3.0, float(np.max(np.abs(fine - coarse)))


class MobiusCheck(NamedTuple):
    composed_gradient: np.ndarray
    scaled_gradient: np.ndarray
    relative_residual: float
    origin_bound: float
    holds: bool


def mobius_bound_check(phi: BoundaryFunction, x: BallPoint, spec: QuadratureSpec = None,
                       rel_tol: float = 1e-5) -> MobiusCheck:
    """
    Compare grad(u o phi_x)(0), obtained from the boundary function phi o phi_x, with
    -(1-|x|^2) grad u(x) for u = P_h[phi], and test |grad(u o phi_x)(0)| against the
    origin bound origin_gradient_bound(n) * ||phi||_inf.
    """
    composed = poisson_gradient(phi.composed_with(x), BallPoint(np.zeros(x.n)), spec).value
    scaled = -(1.0 - x.norm ** 2) * poisson_gradient(phi, x, spec).value
    residual = float(np.linalg.norm(composed - scaled) / max(np.linalg.norm(scaled), 1e-300))
    bound = origin_gradient_bound(x.n) * phi.sup_norm()
    holds = residual <= rel_tol and np.linalg.norm(composed) <= bound * (1.0 + rel_tol)
    if not holds:
        logger.error("mobius_bound_check failed at x = %s: residual %.3g, |grad| %.6g, bound %.6g"
                     % (x.coords, residual, np.linalg.norm(composed), bound))
    return MobiusCheck(composed, scaled, residual, bound, bool(holds))
