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

# Optimality experiments for C_p(x; l).
#
# The functional phi -> <grad P_h[phi](x), l> = int g phi dsigma, with g(zeta) = <grad_x P_h(x, zeta), l>,
# has norm ||g||_q = C_p(x; l) on L^p. Hoelder equality holds for phi* = sign(g) |g|^(q-1),
# so the attained ratio of phi* is 1, while random boundary data stay below the bound.

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from library import scheduler
from library.errors import AccuracyError, DomainError, UsageError
from library.hyperbolic_kernel import (BallPoint, BoundaryFunction, Direction, Symmetry, boundary_norm,
                                       kernel_gradient, poisson_gradient)
from library.log import logger
from library.sharp_constants import C_directional, C_optimal, DirectionKind, ExponentPair, tangent_direction
from library.sphere_quadrature import IntegralEstimate, QuadratureSpec, orthonormal_rows, sphere_integral

SCAN_FAMILIES = ("plane", "general")
MAX_DEGREE = 3


@dataclass(frozen=True, eq=False)
class ExtremalCandidate:
    boundary: BoundaryFunction
    p_norm: float
    x: BallPoint
    direction: Direction
    pq: ExponentPair

    def __post_init__(self):
        if not self.p_norm > 0:
            raise DomainError("candidate p-norm must be positive, got %r" % self.p_norm)


def refined_spec(spec: QuadratureSpec, level: int) -> QuadratureSpec:
    """spec whose finest level is `level` (2^level panels per segment)"""
    return QuadratureSpec(spec.base_order, level, spec.abs_tol, spec.rel_tol)


def _best_effort(estimate, operation: str) -> IntegralEstimate:
    """Run a quadrature; on AccuracyError keep the best value it carries"""
    try:
        return estimate()
    except AccuracyError as e:
        logger.warning("%s: %s, continuing with the best value" % (operation, e))
        return IntegralEstimate(e.value, e.error, "unconverged")


def directional_kernel(x: BallPoint, direction: Direction):
    """g(zeta) = <grad_x P_h(x, zeta), l>, its dependence frame and its zero hyperplane"""
    xv = x.coords
    lv = direction.coords
    unit = x.unit()
    frame = orthonormal_rows(([unit] if unit is not None else []) + [lv], x.n)
    # g(zeta) = 0  <=>  <zeta, (1-|x|^2) l + 2<x,l> x> = 2<x,l>
    xl = float(xv @ lv)
    kink = ((1.0 - xv @ xv) * lv + 2.0 * xl * xv, 2.0 * xl)

    def g(zeta):
        return kernel_gradient(xv, zeta) @ lv

    return g, frame, kink


def extremal_boundary(pq: ExponentPair, x: BallPoint, direction: Direction,
                      spec: QuadratureSpec = None) -> ExtremalCandidate:
    """phi*(zeta) = sign(g(zeta)) |g(zeta)|^(q-1), sign(0) = 0"""
    g, frame, kink = directional_kernel(x, direction)
    q = pq.q
    if pq.is_infinite:
        def evaluator(zeta):
            return np.sign(g(zeta))
    else:
        def evaluator(zeta):
            values = g(zeta)
            return np.sign(values) * np.abs(values) ** (q - 1.0)

    symmetry = Symmetry.ONE_COORDINATE if frame.shape[0] == 1 else Symmetry.TWO_COORDINATES
    boundary = BoundaryFunction(evaluator, x.n, symmetry, frame, (kink,))
    norm = _best_effort(lambda: boundary_norm(boundary, pq.p, spec), "extremal_boundary(p_norm)")
    return ExtremalCandidate(boundary, float(norm.value), x, direction, pq)


def directional_derivative(cand: ExtremalCandidate, spec: QuadratureSpec = None) -> IntegralEstimate:
    """<grad P_h[phi](x), l> = int g phi dsigma, differentiating under the integral sign"""
    g, frame, _ = directional_kernel(cand.x, cand.direction)
    phi = cand.boundary
    span = None if phi.frame is None else list(frame) + list(phi.frame)
    return sphere_integral(lambda zeta: g(zeta) * phi(zeta), cand.x.n, span, phi.kinks, spec)


def sharpness_ratio(cand: ExtremalCandidate, spec: QuadratureSpec = None) -> float:
    """|<grad u(x), l>| / (C_p(x; l) ||phi||_p) for u = P_h[phi], phi the candidate's boundary data"""
    numerator = _best_effort(lambda: directional_derivative(cand, spec), "sharpness_ratio")
    constant = C_directional(cand.pq, cand.x, cand.direction).value
    ratio = abs(float(numerator.value)) / (constant * cand.p_norm)
    logger.debug("sharpness_ratio: n=%d p=%s |x|=%g ratio=%.12f"
                 % (cand.x.n, cand.pq.label(), cand.x.norm, ratio))
    return ratio


def sharpness_profile(pq: ExponentPair, x: BallPoint, levels: Sequence[int],
                      spec: QuadratureSpec = None) -> List[Tuple[int, float]]:
    """sharpness_ratio of the extremal candidate at l = the direction maximizing C_p(x; l), per refinement level"""
    spec = spec or QuadratureSpec.from_config()
    direction = optimal_direction(pq, x)
    rows = []
    for level in levels:
        level_spec = refined_spec(spec, level)
        cand = extremal_boundary(pq, x, direction, level_spec)
        rows.append((level, sharpness_ratio(cand, level_spec)))
    return rows


def optimal_direction(pq: ExponentPair, x: BallPoint) -> Direction:
    """The direction where C_p(x; l) is largest (radial when every direction is equivalent)"""
    if C_optimal(pq, x).direction_kind is DirectionKind.TANGENTIAL:
        return tangent_direction(x)
    unit = x.unit()
    return Direction(unit) if unit is not None else Direction.axis(0, x.n)


def directional_profile(pq: ExponentPair, x: BallPoint, gammas: Sequence[float],
                        spec: QuadratureSpec = None) -> List[float]:
    """
    <grad u(x), l_gamma> / ||phi*||_p for the gamma-matched extremal candidate. These values equal
    C_p(x; l_gamma) and follow the monotone profile of K_p in gamma.
    x must lie on the e1 axis.
    """
    values = []
    for gamma in gammas:
        cand = extremal_boundary(pq, x, Direction.in_plane(gamma, x.n), spec)
        numerator = _best_effort(lambda: directional_derivative(cand, spec), "directional_profile")
        values.append(abs(float(numerator.value)) / cand.p_norm)
    return values


def plane_monomials() -> List[Tuple[int, int]]:
    return [(i, d - i) for d in range(MAX_DEGREE + 1) for i in range(d, -1, -1)]


def general_monomials(n: int) -> List[Tuple[int, ...]]:
    return [powers for powers in itertools.product(range(MAX_DEGREE + 1), repeat=n) if sum(powers) <= MAX_DEGREE]


def general_polynomial(coefficients: dict, n: int) -> BoundaryFunction:
    """sum of c * prod zeta_i^k_i over {(k_1..k_n): c}"""
    terms = [(np.array(powers), float(c)) for powers, c in coefficients.items()]

    def evaluator(zeta):
        total = np.zeros(zeta.shape[:-1])
        for powers, c in terms:
            total = total + c * np.prod(zeta ** powers, axis=-1)
        return total

    return BoundaryFunction(evaluator, n)


def scan_frame(x: BallPoint) -> np.ndarray:
    """(n_x, t_x), or (e1, e2) at the origin"""
    unit = x.unit()
    if unit is None:
        return np.eye(x.n)[:2]
    return np.array([unit, tangent_direction(x).coords])


def random_boundary_functions(x: BallPoint, trials: int, seed: int, family: str = "plane") -> List[BoundaryFunction]:
    """Seeded Gaussian combinations of the monomials of degree <= 3 of the family"""
    if family not in SCAN_FAMILIES:
        raise UsageError("unknown scan family '%s', use one of %s" % (family, ", ".join(SCAN_FAMILIES)))
    rng = np.random.Generator(np.random.Philox(seed))
    functions = []
    if family == "plane":
        frame = scan_frame(x)
        monomials = plane_monomials()
        for _ in range(trials):
            coefficients = rng.standard_normal(len(monomials))
            functions.append(BoundaryFunction.plane_polynomial(dict(zip(monomials, coefficients)), frame))
    else:
        monomials = general_monomials(x.n)
        for _ in range(trials):
            coefficients = rng.standard_normal(len(monomials))
            functions.append(general_polynomial(dict(zip(monomials, coefficients)), x.n))
    return functions


def violation_ratio(phi: BoundaryFunction, pq: ExponentPair, x: BallPoint, constant: float,
                    spec: QuadratureSpec = None) -> float:
    """|grad P_h[phi](x)| / (C_p(x) ||phi||_p); 0 for phi = 0"""
    gradient = _best_effort(lambda: poisson_gradient(phi, x, spec), "bound_violation_scan(gradient)")
    norm = _best_effort(lambda: boundary_norm(phi, pq.p, spec), "bound_violation_scan(p_norm)")
    if norm.value == 0:
        return 0.0
    return float(np.linalg.norm(gradient.value)) / (constant * float(norm.value))


def bound_violation_scan(pq: ExponentPair, x: BallPoint, trials: int, seed: int, spec: QuadratureSpec = None,
                         family: str = "plane", workers: int = None) -> float:
    """Largest |grad u(x)| / (C_p(x) ||phi||_p) over seeded random boundary data"""
    if int(trials) < 1:
        raise DomainError("bound_violation_scan needs trials >= 1, got %r" % trials)
    functions = random_boundary_functions(x, int(trials), seed, family)
    constant = C_optimal(pq, x).value
    ratios = scheduler.run_ordered(lambda phi: violation_ratio(phi, pq, x, constant, spec), functions, workers)
    worst = max(ratios)
    logger.info("bound_violation_scan: %d %s trials, n=%d p=%s |x|=%g, max ratio %.6f"
                % (trials, family, x.n, pq.label(), x.norm, worst))
    return worst


def candidate_for(boundary: BoundaryFunction, pq: ExponentPair, x: BallPoint, direction: Direction,
                  spec: QuadratureSpec = None) -> ExtremalCandidate:
    """Wrap arbitrary boundary data as a candidate, e.g. to measure how far it is from extremal"""
    norm = _best_effort(lambda: boundary_norm(boundary, pq.p, spec), "candidate_for(p_norm)")
    return ExtremalCandidate(boundary, float(norm.value), x, direction, pq)

