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

# Deterministic integration engine: composite Gauss-Legendre rules with endpoint grading,
# reduction of sphere integrals to 1- and 2-variable slices, and a seeded Monte-Carlo oracle.
#
# Every interval is cut at its break points (kinks) and each piece is mapped through the
# regularized incomplete Beta function s = I_t(m+1, m+1). The map is flat of order m at both
# ends of a piece, so an x^c endpoint behaviour becomes t^((m+1)(c+1)-1) and Gauss-Legendre
# panels recover fast convergence on kinks and integrable endpoint singularities alike.

import functools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import betainc

import library.config as config
from library import scheduler
from library.errors import AccuracyError, DomainError
from library.log import logger
from library.special_functions import beta, log_gamma

# Flatness order of the endpoint grading map
GRADING_ORDER = 3

# Monte-Carlo samples drawn per batch inside a shard
MC_BATCH = 1 << 17

# Outer nodes handled per inner-integral call in the 2-variable slices
OUTER_BATCH = 512

# Path labels of sphere_integral
SLICE_1VAR = "slice-1var"
SLICE_2VAR = "slice-2var"
MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class QuadratureSpec:
    base_order: int = 32
    max_refinements: int = 8
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11

    def __post_init__(self):
        if int(self.base_order) < 2:
            raise DomainError("QuadratureSpec.base_order must be >= 2, got %r" % self.base_order)
        if int(self.max_refinements) < 0:
            raise DomainError("QuadratureSpec.max_refinements must be >= 0, got %r" % self.max_refinements)
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("QuadratureSpec tolerances must be > 0, got abs_tol=%r rel_tol=%r"
                              % (self.abs_tol, self.rel_tol))

    @staticmethod
    def from_config() -> 'QuadratureSpec':
        section = config.CONFIG_DATA['quadrature']
        return QuadratureSpec(base_order=int(section['BASE_ORDER']),
                              max_refinements=int(section['MAX_REFINEMENTS']),
                              abs_tol=float(section['ABS_TOL']),
                              rel_tol=float(section['REL_TOL']))

    def with_order(self, base_order: int) -> 'QuadratureSpec':
        return QuadratureSpec(base_order, self.max_refinements, self.abs_tol, self.rel_tol)

    def tolerance_met(self, value, previous) -> bool:
        value = np.asarray(value)
        diff = np.abs(value - np.asarray(previous))
        return bool(np.all(diff <= np.maximum(self.abs_tol, self.rel_tol * np.abs(value))))


@dataclass(frozen=True)
class SphereDim:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("dimension must be a positive integer, got %r" % self.n)

    def require(self, minimum: int, operation: str):
        if self.n < minimum:
            raise DomainError("%s requires n >= %d, got n = %d" % (operation, minimum, self.n))


DimLike = Union[int, SphereDim]


def as_dim(dim: DimLike) -> SphereDim:
    return dim if isinstance(dim, SphereDim) else SphereDim(int(dim))


@functools.lru_cache(maxsize=None)
def gauss_legendre(m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1]"""
    if int(m) != m or m < 1:
        raise DomainError("gauss_legendre needs a positive integer node count, got %r" % m)
    nodes, weights = leggauss(int(m))
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@functools.lru_cache(maxsize=64)
def graded_rule(order: int, level: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Composite rule on [0, 1]: 2^level equal panels of `order` Gauss-Legendre nodes in t,
    pushed through the grading map s(t) = I_t(m+1, m+1).
    Returns the nodes s, their distances 1 - s to the upper end and the weights including
    the Jacobian of the map. 1 - s is taken from the mirrored map I_{1-t}(m+1, m+1), so both
    distances keep full relative precision near their endpoint.
    """
    nodes, weights = gauss_legendre(order)
    panels = 2 ** level
    half = 0.5 / panels
    index = np.arange(panels, dtype=float)
    t = ((index / panels)[:, None] + half * (nodes[None, :] + 1.0)).ravel()
    t_upper = (((panels - 1 - index) / panels)[:, None] + half * (1.0 - nodes[None, :])).ravel()
    w = np.tile(weights * half, panels)

    m = GRADING_ORDER
    s = betainc(m + 1, m + 1, t)
    s_upper = betainc(m + 1, m + 1, t_upper)
    jacobian = (t * t_upper) ** m / beta(m + 1, m + 1)
    w = w * jacobian
    for array in (s, s_upper, w):
        array.setflags(write=False)
    return s, s_upper, w


def _segments(a: float, b: float, breaks: Sequence[float]) -> list:
    inner = sorted({float(c) for c in breaks if a < c < b})
    edges = [a] + inner + [b]
    return list(zip(edges[:-1], edges[1:]))


def _weighted_sum(weights: np.ndarray, fx: np.ndarray, count: int):
    fx = np.asarray(fx, dtype=float)
    if fx.ndim == 0:
        fx = np.full(count, float(fx))
    return np.tensordot(weights, fx, axes=(0, 0))


class CompositeNodes(NamedTuple):
    x: np.ndarray
    weights: np.ndarray
    to_lower: np.ndarray    # x - a
    to_upper: np.ndarray    # b - x


def composite_nodes(a: float, b: float, breaks: Sequence[float], order: int, level: int) -> CompositeNodes:
    """
    Graded nodes of [a, b] cut at breaks. Each node is placed from the nearer end of its piece,
    then kept strictly inside (a, b); the distances to a and b are returned alongside, since
    they can be far below the spacing of floats around a or b.
    """
    s, s_upper, w = graded_rule(order, level)
    lower_half = s <= 0.5
    xs, ws, lower, upper = [], [], [], []
    for lo, hi in _segments(a, b, breaks):
        width = hi - lo
        xs.append(np.where(lower_half, lo + width * s, hi - width * s_upper))
        ws.append(width * w)
        lower.append((lo - a) + width * s)
        upper.append((b - hi) + width * s_upper)
    x = np.clip(np.concatenate(xs), np.nextafter(a, b), np.nextafter(b, a))
    return CompositeNodes(x, np.concatenate(ws), np.concatenate(lower), np.concatenate(upper))


def integrate_interval(f: Callable, a: float, b: float, spec: QuadratureSpec = None,
                       breaks: Sequence[float] = (), operation: str = "integrate_interval",
                       endpoint_gaps: bool = False):
    """
    Integrate the vectorized f over [a, b], refining by panel doubling until two successive
    levels agree within max(abs_tol, rel_tol * |value|).

    f is called with a 1-d array of nodes and may return one value per node or an array of
    shape (nodes, ...) for a batch of integrands, checked elementwise.
    With endpoint_gaps=True f is called as f(x, x - a, b - x); integrands singular at a or b
    should build their endpoint factors from these distances.
    Returns (value, err_est), err_est being the largest difference between the last two levels.
    """
    if not a < b:
        raise DomainError("%s requires a < b, got [%r, %r]" % (operation, a, b))
    spec = spec or QuadratureSpec.from_config()

    previous = None
    value = None
    err = math.inf
    for level in range(int(spec.max_refinements) + 2):
        nodes = composite_nodes(a, b, breaks, int(spec.base_order), level)
        fx = f(nodes.x, nodes.to_lower, nodes.to_upper) if endpoint_gaps else f(nodes.x)
        value = _weighted_sum(nodes.weights, fx, nodes.x.size)
        if previous is not None:
            err = float(np.max(np.abs(value - previous)))
            if spec.tolerance_met(value, previous):
                logger.debug("%s converged at level %d (err %.3g)" % (operation, level, err))
                return (float(value) if np.ndim(value) == 0 else value), err
        previous = value
    raise AccuracyError(operation, float(value) if np.ndim(value) == 0 else value, err)


def unit_ball_volume(n: int) -> float:
    """Lebesgue volume of the unit ball of R^n"""
    n = as_dim(n).n
    return math.exp(0.5 * n * math.log(math.pi) - log_gamma(0.5 * n + 1))


def slice_weight_1var(n: int) -> float:
    """(n-1)/n * V(B^{n-1}) / V(B^n)"""
    if n == 1:
        raise DomainError("slice weight requires n >= 2")
    return (n - 1) / n * unit_ball_volume(n - 1) / unit_ball_volume(n)


def _column(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim == 0:
        values = np.full(weights.shape, float(values))
    return weights.reshape(weights.shape + (1,) * (values.ndim - weights.ndim)) * values


def slice_integral_1var(f: Callable, dim: DimLike, spec: QuadratureSpec = None,
                        breaks: Sequence[float] = (), with_error: bool = False):
    """
    Integral over S^{n-1} of a function of the first coordinate only:
    (n-1)/n V(B^{n-1})/V(B^n) * int_{-1}^{1} (1-t^2)^{(n-3)/2} f(t) dt.

    Computed with t = sin(psi), whose weight cos(psi)^{n-2} is bounded for every n >= 2.
    Break points are given in t.
    """
    dim = as_dim(dim)
    dim.require(2, "slice_integral_1var")
    n = dim.n

    def integrand(psi):
        return _column(np.cos(psi) ** (n - 2), f(np.sin(psi)))

    angle_breaks = [math.asin(c) for c in breaks if -1 < c < 1]
    value, err = integrate_interval(integrand, -math.pi / 2, math.pi / 2, spec, angle_breaks,
                                    "slice_integral_1var")
    factor = slice_weight_1var(n)
    if with_error:
        return factor * value, factor * err
    return factor * value


def _period_window(angle_breaks: Sequence[float]) -> Tuple[float, list]:
    """One period [start, start + 2 pi] beginning at the first break, with the others inside it"""
    if not angle_breaks:
        return -math.pi, []
    reduced = sorted(float(np.mod(c, 2 * math.pi)) for c in angle_breaks)
    start = reduced[0]
    return start, [c for c in reduced[1:] if c > start]


def in_batches(inner: Callable, nodes: np.ndarray) -> np.ndarray:
    """Evaluate an inner integral node batch by node batch to bound the size of the 2-d grids"""
    if nodes.size <= OUTER_BATCH:
        return inner(nodes)
    return np.concatenate([inner(nodes[i:i + OUTER_BATCH]) for i in range(0, nodes.size, OUTER_BATCH)])


def slice_integral_2var(f: Callable, dim: DimLike, spec: QuadratureSpec = None,
                        angle_breaks: Sequence[float] = (), with_error: bool = False):
    """
    Integral over S^{n-1} of a function of the first two coordinates:
    (n-2)/(2 pi) * int_{B^2} (1-r^2)^{(n-4)/2} f(r cos t, r sin t) r dr dt.

    The radial variable is r = sin(psi), leaving the bounded weight cos(psi)^{n-3} sin(psi).
    angle_breaks are polar angles where f has kinks; the angular period starts on one of them.
    f receives two arrays of equal shape (radial nodes x angular nodes).
    """
    dim = as_dim(dim)
    dim.require(3, "slice_integral_2var")
    spec = spec or QuadratureSpec.from_config()
    n = dim.n
    radial_error = [0.0]

    def angular_batch(theta):
        cos_t, sin_t = np.cos(theta), np.sin(theta)

        def radial(psi):
            r = np.sin(psi)[:, None]
            weight = (np.cos(psi) ** (n - 3) * np.sin(psi))[:, None]
            values = np.asarray(f(r * cos_t[None, :], r * sin_t[None, :]), dtype=float)
            return weight * np.broadcast_to(values, (psi.size, theta.size))

        value, err = integrate_interval(radial, 0.0, math.pi / 2, spec, (), "slice_integral_2var(radial)")
        radial_error[0] = max(radial_error[0], err)
        return value

    start, inner = _period_window(angle_breaks)
    value, err = integrate_interval(lambda theta: in_batches(angular_batch, theta),
                                    start, start + 2 * math.pi, spec, inner, "slice_integral_2var(angular)")
    factor = (n - 2) / (2 * math.pi)
    if with_error:
        return factor * value, factor * (err + 2 * math.pi * radial_error[0])
    return factor * value


def slice_integral_2var_strips(f: Callable, dim: DimLike, spec: QuadratureSpec = None,
                               breaks: Sequence[float] = (), with_error: bool = False):
    """
    Same integral as slice_integral_2var, swept in strips of constant first coordinate so that
    kinks along lines eta1 = c (given in breaks) fall on panel edges.
    Each chord is parametrized by eta2 = sqrt(1 - eta1^2) sin(psi).
    """
    dim = as_dim(dim)
    dim.require(3, "slice_integral_2var_strips")
    spec = spec or QuadratureSpec.from_config()
    n = dim.n
    chord_error = [0.0]

    def strip_batch(s):
        half = np.sqrt(np.clip(1.0 - s * s, 0.0, None))

        def chord(psi):
            first = np.broadcast_to(s[None, :], (psi.size, s.size))
            values = np.asarray(f(first, half[None, :] * np.sin(psi)[:, None]), dtype=float)
            return (np.cos(psi) ** (n - 3))[:, None] * np.broadcast_to(values, (psi.size, s.size))

        value, err = integrate_interval(chord, -math.pi / 2, math.pi / 2, spec, (),
                                        "slice_integral_2var_strips(chord)")
        chord_error[0] = max(chord_error[0], err)
        return half ** (n - 3) * value

    value, err = integrate_interval(lambda s: in_batches(strip_batch, s), -1.0, 1.0, spec,
                                    [c for c in breaks if -1 < c < 1], "slice_integral_2var_strips(across)")
    factor = (n - 2) / (2 * math.pi)
    if with_error:
        return factor * value, factor * (err + 2 * chord_error[0])
    return factor * value


class IntegralEstimate(NamedTuple):
    value: Union[float, np.ndarray]
    error: float
    path: str


def orthonormal_rows(vectors: Sequence, n: int, tol: float = 1e-10) -> np.ndarray:
    """Gram-Schmidt basis (as rows) of the span of vectors; near-dependent vectors are dropped"""
    basis = []
    for v in vectors:
        w = np.array(v, dtype=float).reshape(n)
        for b in basis:
            w = w - (w @ b) * b
        norm = np.linalg.norm(w)
        if norm > tol * max(1.0, np.linalg.norm(v)):
            basis.append(w / norm)
    return np.array(basis).reshape(len(basis), n)


def complement_vector(basis: np.ndarray, n: int) -> np.ndarray:
    """A unit vector orthogonal to every row of basis (basis must have fewer than n rows)"""
    best = None
    for e in np.eye(n):
        w = e - basis.T @ (basis @ e)
        if best is None or np.linalg.norm(w) > np.linalg.norm(best):
            best = w
    return best / np.linalg.norm(best)


def sphere_integral(integrand: Callable, dim: DimLike, span: Sequence = None,
                    kinks: Sequence[Tuple[np.ndarray, float]] = (), spec: QuadratureSpec = None,
                    samples: int = None, seed: int = None) -> IntegralEstimate:
    """
    Integral over S^{n-1} of an integrand taking points of shape (..., n).

    span lists vectors such that the integrand depends on a point only through its inner
    products with them; the integral then reduces to the 1- or 2-variable slice of their span.
    kinks are hyperplanes (normal, offset) where the integrand is not smooth; they become
    break points of the slice. span=None (or a span of dimension > 2) uses Monte Carlo.
    """
    dim = as_dim(dim)
    n = dim.n
    basis = orthonormal_rows(span, n) if span is not None else None
    if basis is not None and basis.shape[0] == 0:
        basis = np.eye(n)[:1]

    if basis is not None and basis.shape[0] == 1 and n >= 2:
        b = basis[0]
        c = complement_vector(basis, n)
        breaks = []
        for normal, offset in kinks:
            d = float(np.asarray(normal, dtype=float) @ b)
            if abs(d) > 1e-14 and -1 < offset / d < 1:
                breaks.append(offset / d)

        def on_line(t):
            t = np.asarray(t)[..., None]
            return integrand(t * b + np.sqrt(np.clip(1.0 - t * t, 0.0, None)) * c)

        value, err = slice_integral_1var(on_line, dim, spec, breaks, with_error=True)
        return IntegralEstimate(value, err, SLICE_1VAR)

    if basis is not None and basis.shape[0] == 2 and n >= 3:
        planar = [(np.asarray(normal, dtype=float) @ basis.T, float(offset)) for normal, offset in kinks]
        planar = [(w, c) for w, c in planar if np.linalg.norm(w) > 1e-14]
        if planar and any(c != 0 for _, c in planar):
            # strips across the first offset kink; kinks not parallel to it stay inside panels
            w0 = planar[0][0] / np.linalg.norm(planar[0][0])
            basis = np.array([w0 @ basis, np.array([-w0[1], w0[0]]) @ basis])
            breaks = []
            for w, c in planar:
                if abs(w[0] * w0[1] - w[1] * w0[0]) <= 1e-12 * np.linalg.norm(w):
                    breaks.append(c / float(w @ w0))
                else:
                    logger.debug("sphere_integral: kink %s is not parallel to the strips" % w)
            rule = functools.partial(slice_integral_2var_strips, breaks=breaks)
        else:
            angles = []
            for w, _ in planar:
                normal_angle = math.atan2(w[1], w[0])
                angles.extend([normal_angle + math.pi / 2, normal_angle - math.pi / 2])
            rule = functools.partial(slice_integral_2var, angle_breaks=angles)
        c = complement_vector(basis, n)

        def on_disc(s, t):
            s = np.asarray(s)[..., None]
            t = np.asarray(t)[..., None]
            return integrand(s * basis[0] + t * basis[1] + np.sqrt(np.clip(1.0 - s * s - t * t, 0.0, None)) * c)

        value, err = rule(on_disc, dim, spec, with_error=True)
        return IntegralEstimate(value, err, SLICE_2VAR)

    estimate, std_err = monte_carlo_sphere(integrand, dim, samples, seed)
    return IntegralEstimate(estimate, std_err, MONTE_CARLO)


def sample_sphere(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    """Uniform points of S^{n-1}: normalized standard Gaussian vectors"""
    g = rng.standard_normal((count, n))
    return g / np.linalg.norm(g, axis=1)[:, None]


def shard_sizes(samples: int, shards: int) -> list:
    size, extra = divmod(samples, shards)
    return [size + (1 if i < extra else 0) for i in range(shards)]


def _merge(a: Tuple[int, float, float], b: Tuple[int, float, float]) -> Tuple[int, float, float]:
    """Combine (count, mean, sum of squared deviations) of two sample sets"""
    n_a, mean_a, m2_a = a
    n_b, mean_b, m2_b = b
    if n_a == 0:
        return b
    if n_b == 0:
        return a
    total = n_a + n_b
    delta = mean_b - mean_a
    return total, mean_a + delta * n_b / total, m2_a + m2_b + delta * delta * n_a * n_b / total


def monte_carlo_sphere(f: Callable, dim: DimLike, samples: int = None, seed: int = None,
                       shards: int = None) -> Tuple[float, float]:
    """
    Sample mean of f over uniform points of S^{n-1} and its standard error.

    Shard i draws its share of the samples from a Philox generator seeded with the i-th child
    of SeedSequence(seed); shards are merged in index order, so the result depends only on
    (seed, samples, shards) and never on the number of worker threads.
    f receives an array of shape (count, n) and returns count values.
    """
    dim = as_dim(dim)
    dim.require(2, "monte_carlo_sphere")
    mc = config.CONFIG_DATA['monte_carlo']
    samples = int(samples if samples is not None else mc['SAMPLES'])
    seed = int(seed if seed is not None else mc['SEED'])
    shards = int(shards or mc['SHARDS'])
    if samples < 2:
        raise DomainError("monte_carlo_sphere requires samples >= 2, got %d" % samples)

    sizes = shard_sizes(samples, shards)
    children = np.random.SeedSequence(seed).spawn(shards)
    logger.debug("monte_carlo_sphere: %d samples in %d shards (seed %d)" % (samples, shards, seed))

    def run_shard(index):
        rng = np.random.Generator(np.random.Philox(children[index]))
        stats = (0, 0.0, 0.0)
        remaining = sizes[index]
        while remaining > 0:
            count = min(MC_BATCH, remaining)
            values = np.asarray(f(sample_sphere(rng, count, dim.n)), dtype=float)
            if values.ndim == 0:
                values = np.full(count, float(values))
            mean = float(np.mean(values))
            stats = _merge(stats, (count, mean, float(np.sum((values - mean) ** 2))))
            remaining -= count
        return stats

    total = (0, 0.0, 0.0)
    for stats in scheduler.run_ordered(run_shard, list(range(shards))):
        total = _merge(total, stats)
    count, mean, m2 = total
    std_err = math.sqrt(m2 / (count - 1) / count)
    return mean, std_err
