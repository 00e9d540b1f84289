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

# Sharp constants of |<grad u(x), l>| <= C_p(x; l) ||phi||_p for u = P_h[phi].
#
# With q the conjugate exponent and a = (n-1)(q-1):
#   K_p(x; l) = int |eta - x|^(2a) |<eta, l>|^q dsigma(eta)
#   C_p(x; l) = 2(n-1) / (1-|x|^2)^((n(q-1)+1)/q) * K_p(x; l)^(1/q)
# After a rotation x = |x| e1 and l = cos(gamma) e1 + sin(gamma) e2, and gamma -> K_p is
# monotone on [0, pi/2]: decreasing for 1 < p < n, increasing for p > n, constant for p in {n, inf}.
# K is evaluated on four paths (closed form, disc reduction, sphere slice, Monte Carlo),
# implemented by the backends of library/evaluators.

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Tuple

import numpy as np

import library.config as config
from library.errors import DomainError, NumericalError, UsageError
from library.hyperbolic_kernel import BallPoint, Direction
from library.log import logger
from library.special_functions import SeriesControl, beta, gauss_2f1, hyp_3f2, log_gamma
from library.sphere_quadrature import (QuadratureSpec, in_batches, integrate_interval, monte_carlo_sphere,
                                       orthonormal_rows, slice_integral_1var, slice_integral_2var,
                                       unit_ball_volume)

# Above this |x| the hypergeometric series of the closed forms converge slowly
CLOSED_FORM_MAX_NORM = 0.95

# |cos(gamma)| within this of 1 (or of 0) classifies a direction as radial (or tangential)
DIRECTION_KIND_TOL = 1e-12


class Regime(Enum):
    BELOW = "below"          # 1 < p < n
    AT_N = "at-n"            # p = n
    ABOVE = "above"          # n < p < inf
    INFINITY = "infinity"    # p = inf


class DirectionKind(Enum):
    RADIAL = "radial"
    TANGENTIAL = "tangential"
    OBLIQUE = "oblique"
    ANY = "any"


class KPath(Enum):
    CLOSED_FORM = "closed-form"
    DISC = "disc-reduction"
    SPHERE = "sphere-quadrature"
    MONTE_CARLO = "monte-carlo"


def conjugate_exponent(p: float) -> float:
    if not p > 1:
        raise DomainError("exponent p must be in (1, inf], got %r" % p)
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def classify_regime(p: float, n: int) -> Regime:
    """Exact comparison with n: p = n must be passed literally"""
    if not p > 1:
        raise DomainError("exponent p must be in (1, inf], got %r" % p)
    if math.isinf(p):
        return Regime.INFINITY
    if p == n:
        return Regime.AT_N
    return Regime.BELOW if p < n else Regime.ABOVE


@dataclass(frozen=True)
class ExponentPair:
    p: float
    q: float

    def __post_init__(self):
        if not self.p > 1:
            raise DomainError("exponent p must be in (1, inf], got %r" % self.p)
        if math.isinf(self.p) != (self.q == 1.0):
            raise DomainError("p = inf exactly when q = 1, got p=%r q=%r" % (self.p, self.q))
        if not math.isinf(self.p) and abs(1.0 / self.p + 1.0 / self.q - 1.0) > 1e-12:
            raise DomainError("%r and %r are not conjugate exponents" % (self.p, self.q))

    @staticmethod
    def of(p: float) -> 'ExponentPair':
        p = float(p)
        return ExponentPair(p, conjugate_exponent(p))

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.p)

    def regime(self, n: int) -> Regime:
        return classify_regime(self.p, n)

    def kernel_power(self, n: int) -> float:
        """a = (n-1)(q-1), the power of |eta - x|^2 in K_p"""
        return 0.0 if self.is_infinite else (n - 1) * (self.q - 1.0)

    def label(self) -> str:
        return "inf" if self.is_infinite else repr(self.p)


def parse_exponent(token, n: int = None) -> float:
    """
    Exponent from a CLI or profile token: a number, "inf", or an expression of the dimension
    ("n", "n+2", "2n"). Numeric spellings of infinity are rejected.
    """
    text = str(token).strip().lower().replace(" ", "")
    if text == "inf":
        return math.inf
    if "n" in text:
        if n is None:
            raise UsageError("exponent '%s' depends on the dimension n" % token)
        head, _, tail = text.partition("n")
        try:
            factor = float(head) if head else 1.0
            shift = float(tail) if tail else 0.0
        except ValueError:
            raise UsageError("'%s' is not an exponent (use a number, 'inf', 'n', 'n+k' or 'kn')" % token)
        value = factor * n + shift
        if not math.isfinite(value):
            raise UsageError("exponent '%s' is not finite" % token)
        return value
    try:
        value = float(text)
    except ValueError:
        raise UsageError("'%s' is not an exponent (use a number, 'inf', 'n', 'n+k' or 'kn')" % token)
    if not math.isfinite(value):
        raise UsageError("use the token 'inf' for p = infinity, got '%s'" % token)
    return value


@dataclass(frozen=True)
class AngleGamma:
    """An angle between the direction and e1, reduced to [0, pi/2] (I_{a,b} is even and pi-periodic)"""
    value: float

    def __post_init__(self):
        object.__setattr__(self, 'value', reduce_gamma(self.value))


def reduce_gamma(gamma: float) -> float:
    g = float(np.mod(float(gamma), math.pi))
    return math.pi - g if g > math.pi / 2 else g


def _angle(gamma) -> float:
    return gamma.value if isinstance(gamma, AngleGamma) else float(gamma)


@dataclass(frozen=True)
class ConstantReport:
    value: float
    path: KPath
    err_est: float
    regime: Regime
    direction_kind: DirectionKind
    k_value: float
    gamma: float
    n: int
    x_norm: float
    p: float

    def __post_init__(self):
        if not self.value > 0:
            raise NumericalError("constant must be positive, got %r" % self.value, "ConstantReport")
        if not self.err_est >= 0:
            raise NumericalError("error estimate must be nonnegative, got %r" % self.err_est, "ConstantReport")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": "inf" if math.isinf(self.p) else self.p,
            "x_norm": self.x_norm,
            "gamma": self.gamma,
            "regime": self.regime.value,
            "direction_kind": self.direction_kind.value,
            "K": self.k_value,
            "C": self.value,
            "err_est": self.err_est,
            "path": self.path.value,
        }


def _check_I_arguments(b: float, A: float, B, operation: str):
    if not b > 0:
        raise DomainError("%s requires b > 0, got %r" % (operation, b))
    B = np.asarray(B, dtype=float)
    if np.any(B < 0) or np.any(B >= A):
        raise DomainError("%s requires 0 <= B < A, got A=%r B=%r" % (operation, A, B))


def integral_I(a: float, b: float, A: float, B, gamma, spec: QuadratureSpec = None, with_error: bool = False):
    """
    I_{a,b}(gamma) = int_{-pi}^{pi} (A - B cos t)^a |cos(t - gamma)|^b dt.

    Integrated over the period [gamma - pi/2, gamma + 3pi/2] split at gamma + pi/2, the zeros
    of the cosine factor. B may be an array (one integral per entry).
    """
    _check_I_arguments(b, A, B, "integral_I")
    g = _angle(gamma)
    B = np.asarray(B, dtype=float)

    def integrand(theta):
        base = A - np.multiply.outer(np.cos(theta), B)
        kink = np.abs(np.cos(theta - g)) ** b
        return base ** a * kink.reshape(kink.shape + (1,) * B.ndim)

    value, err = integrate_interval(integrand, g - math.pi / 2, g + 3 * math.pi / 2, spec, [g + math.pi / 2],
                                    "integral_I")
    return (value, err) if with_error else value


def integral_I_derivative(a: float, b: float, A: float, B: float, gamma, spec: QuadratureSpec = None) -> float:
    """
    d/dgamma I_{a,b}(gamma) for every real gamma, as
    aB int_0^{pi/2} cos t [(A + B sin t)^(a-1) - (A - B sin t)^(a-1)] [|sin(t-gamma)|^b - |sin(t+gamma)|^b] dt.
    """
    _check_I_arguments(b, A, B, "integral_I_derivative")
    g = _angle(gamma)
    if a == 0 or a == 1 or B == 0:
        return 0.0

    def integrand(theta):
        s = np.sin(theta)
        spread = (A + B * s) ** (a - 1) - (A - B * s) ** (a - 1)
        return np.cos(theta) * spread * (np.abs(np.sin(theta - g)) ** b - np.abs(np.sin(theta + g)) ** b)

    breaks = []
    for c in (g, -g):
        c = float(np.mod(c, math.pi))
        if 0 < c < math.pi / 2:
            breaks.append(c)
    value, _ = integrate_interval(integrand, 0.0, math.pi / 2, spec, breaks, "integral_I_derivative")
    return a * B * value


def expected_derivative_sign(a: float, gamma: float = None) -> int:
    """
    Sign of d/dgamma I_{a,b}: 0 for a in {0, 1}, + for 0 < a < 1 and - otherwise, on (0, pi/2).
    With gamma given, the oddness and pi-periodicity of the derivative are applied.
    """
    if a == 0 or a == 1:
        return 0
    sign = 1 if 0 < a < 1 else -1
    if gamma is None:
        return sign
    g = float(np.mod(float(gamma), math.pi))
    if min(abs(g), abs(g - math.pi / 2), abs(g - math.pi)) <= 1e-15:
        return 0
    return sign if g < math.pi / 2 else -sign


def integral_J(q: float, r: float, rho: float, gamma, n: int, spec: QuadratureSpec = None) -> float:
    """J_q(r, rho; gamma) = int (1 + rho^2 - 2 rho r cos t)^((n-1)(q-1)) |cos(t - gamma)|^q dt"""
    if not q >= 1:
        raise DomainError("integral_J requires q >= 1, got %r" % q)
    if not (0 < r < 1 and 0 < rho < 1):
        raise DomainError("integral_J requires r and rho in (0, 1), got r=%r rho=%r" % (r, rho))
    return integral_I((n - 1) * (q - 1), q, 1 + rho * rho, 2 * rho * r, gamma, spec)


def _check_K_arguments(x_norm: float, n: int, operation: str):
    if not 0 <= x_norm < 1:
        raise DomainError("%s requires |x| in [0, 1), got %r" % (operation, x_norm))
    if n < 3:
        raise DomainError("%s requires n >= 3, got %d" % (operation, n))


def K_disc(pq: ExponentPair, x_norm: float, gamma, n: int, spec: QuadratureSpec = None, with_error: bool = False):
    """K_p = (n-2)/(2 pi) int_0^1 (1-r^2)^((n-4)/2) r^(q+1) J_q(r, |x|; gamma) dr, with r = sin(psi)"""
    _check_K_arguments(x_norm, n, "K_disc")
    q = pq.q
    a = pq.kernel_power(n)
    A = 1.0 + x_norm * x_norm
    inner_error = [0.0]

    def j_batch(r):
        value, err = integral_I(a, q, A, 2.0 * x_norm * r, gamma, spec, with_error=True)
        inner_error[0] = max(inner_error[0], err)
        return value

    def integrand(psi):
        r = np.sin(psi)
        return np.cos(psi) ** (n - 3) * r ** (q + 1) * in_batches(j_batch, r)

    value, err = integrate_interval(integrand, 0.0, math.pi / 2, spec, (), "K_disc")
    factor = (n - 2) / (2 * math.pi)
    if with_error:
        return factor * value, factor * (err + inner_error[0])
    return factor * value


def _K_integrand(pq: ExponentPair, x_norm: float, gamma: float, n: int):
    a = pq.kernel_power(n)
    cos_g, sin_g = math.cos(gamma), math.sin(gamma)

    def integrand(eta1, eta2):
        return (1.0 + x_norm * x_norm - 2.0 * x_norm * eta1) ** a * np.abs(eta1 * cos_g + eta2 * sin_g) ** pq.q

    return integrand


def K_sphere(pq: ExponentPair, x_norm: float, gamma, n: int, spec: QuadratureSpec = None, with_error: bool = False):
    """K_p(x; l_gamma) integrated on the 2-variable slice, polar angles split where <eta, l_gamma> = 0"""
    _check_K_arguments(x_norm, n, "K_sphere")
    g = _angle(gamma)
    return slice_integral_2var(_K_integrand(pq, x_norm, g, n), n, spec,
                               [g + math.pi / 2, g - math.pi / 2], with_error)


def K_monte_carlo(pq: ExponentPair, x_norm: float, gamma, n: int, samples: int = None, seed: int = None,
                  with_error: bool = False):
    """K_p(x; l_gamma) sampled over S^{n-1}"""
    _check_K_arguments(x_norm, n, "K_monte_carlo")
    integrand = _K_integrand(pq, x_norm, _angle(gamma), n)
    value, std_err = monte_carlo_sphere(lambda eta: integrand(eta[:, 0], eta[:, 1]), n, samples, seed)
    return (value, std_err) if with_error else value


def closed_form_admissible(regime: Regime, direction: DirectionKind, x_norm: float) -> bool:
    """ANY stands for "every direction is equivalent", which holds at the origin"""
    if regime in (Regime.INFINITY, Regime.AT_N):
        return True
    if direction is DirectionKind.ANY:
        return x_norm == 0
    return direction is (DirectionKind.RADIAL if regime is Regime.BELOW else DirectionKind.TANGENTIAL)


def K_closed_form(pq: ExponentPair, x_norm: float, direction: DirectionKind, n: int, ctl: SeriesControl = None) -> float:
    """
    Closed forms of K_p:
      p = inf            (2/n) V(B^{n-1}) / V(B^n)
      p = n              (n-2)/(2 sqrt(pi)) G(n/2-1) G((q+1)/2) / G((n+q)/2) * (1+|x|^2)
      1 < p < n, radial  (1+|x|^2)^a G((q+1)/2) G(n/2) / (G((q+n)/2) sqrt(pi)) * 3F2(alpha/2, (alpha+1)/2, (q+1)/2; 1/2, (q+n)/2; u^2)
      p > n, tangential  (n-2)/(2 sqrt(pi)) G((n-2)/2) G((q+1)/2) / G((q+n)/2) * 2F1(alpha, n/2 + q(1/2-n); (q+n)/2; |x|^2)
    with alpha = (n-1)(1-q) and u = 2|x| / (1+|x|^2).
    """
    _check_K_arguments(x_norm, n, "K_closed_form")
    regime = pq.regime(n)
    if not closed_form_admissible(regime, direction, x_norm):
        raise UsageError("no closed form of K_p for regime %s in the %s direction"
                         % (regime.value, direction.value))
    q = pq.q
    x2 = x_norm * x_norm
    half_log_pi = 0.5 * math.log(math.pi)

    if regime is Regime.INFINITY:
        return 2.0 / n * unit_ball_volume(n - 1) / unit_ball_volume(n)

    if regime is Regime.AT_N:
        log_c = math.log(n - 2) - math.log(2) - half_log_pi \
                + log_gamma(n / 2 - 1) + log_gamma((q + 1) / 2) - log_gamma((n + q) / 2)
        return math.exp(log_c) * (1 + x2)

    alpha = (n - 1) * (1 - q)
    if regime is Regime.BELOW:
        log_c = log_gamma((q + 1) / 2) + log_gamma(n / 2) - log_gamma((q + n) / 2) - half_log_pi
        u2 = 4 * x2 / (1 + x2) ** 2
        series = hyp_3f2(alpha / 2, (alpha + 1) / 2, (q + 1) / 2, 0.5, (q + n) / 2, u2, ctl)
        return (1 + x2) ** (-alpha) * math.exp(log_c) * series

    log_c = math.log(n - 2) - math.log(2) - half_log_pi \
            + log_gamma((n - 2) / 2) + log_gamma((q + 1) / 2) - log_gamma((q + n) / 2)
    series = gauss_2f1(alpha, n / 2 + q * (0.5 - n), (q + n) / 2, x2, ctl)
    return math.exp(log_c) * series


def C_from_K(K: float, pq: ExponentPair, x_norm: float, n: int) -> float:
    """C = 2(n-1) / (1-|x|^2)^((n(q-1)+1)/q) * K^(1/q)"""
    if not K > 0:
        raise DomainError("C_from_K requires K > 0, got %r" % K)
    if not 0 <= x_norm < 1:
        raise DomainError("C_from_K requires |x| in [0, 1), got %r" % x_norm)
    q = pq.q
    power = (n * (q - 1) + 1) / q
    return 2.0 * (n - 1) / (1.0 - x_norm * x_norm) ** power * K ** (1.0 / q)


def direction_geometry(x: BallPoint, direction: Direction) -> Tuple[float, DirectionKind]:
    """gamma in [0, pi/2] between l and the line through x, and the kind of l"""
    unit = x.unit()
    if unit is None:
        return 0.0, DirectionKind.ANY
    cosine = float(np.clip(direction.coords @ unit, -1.0, 1.0))
    gamma = reduce_gamma(math.acos(cosine))
    if abs(abs(cosine) - 1.0) <= DIRECTION_KIND_TOL:
        return 0.0, DirectionKind.RADIAL
    if abs(cosine) <= DIRECTION_KIND_TOL:
        return math.pi / 2, DirectionKind.TANGENTIAL
    return gamma, DirectionKind.OBLIQUE


def tangent_direction(x: BallPoint) -> Direction:
    """A unit t_x orthogonal to x (e2 at the origin)"""
    unit = x.unit()
    if unit is None:
        return Direction.axis(1, x.n)
    basis = orthonormal_rows([unit] + list(np.eye(x.n)), x.n)
    return Direction(basis[1])


def radial_direction(x: BallPoint) -> Direction:
    unit = x.unit()
    return Direction.axis(0, x.n) if unit is None else Direction(unit)


def evaluator_chain(path: str, regime: Regime, direction: DirectionKind, x_norm: float) -> list:
    """K evaluators to try in order for a configured PATH (AUTO falls back along the chain)"""
    from library.evaluators.evaluator_closed_form import ClosedForm
    from library.evaluators.evaluator_disc import Disc
    from library.evaluators.evaluator_sphere import Sphere
    from library.evaluators.evaluator_monte_carlo import MonteCarlo

    if path == "CLOSED_FORM":
        if not closed_form_admissible(regime, direction, x_norm):
            raise UsageError("no closed form of K_p for regime %s in the %s direction"
                             % (regime.value, direction.value))
        return [ClosedForm]
    if path == "DISC":
        return [Disc]
    if path == "SPHERE":
        return [Sphere]
    if path == "MC":
        return [MonteCarlo]
    if path == "AUTO":
        chain = [ClosedForm] if ClosedForm.admissible(regime, direction, x_norm) else []
        return chain + [Disc, MonteCarlo]
    raise UsageError("unknown evaluation path '%s', use one of %s" % (path, ", ".join(config.EVALUATION_PATHS)))


def evaluate_K(pq: ExponentPair, x_norm: float, gamma: float, direction: DirectionKind, n: int,
               spec: QuadratureSpec = None, path: str = None) -> Tuple[float, float, KPath]:
    """(K, error estimate, path used)"""
    regime = pq.regime(n)
    path = path or config.CONFIG_DATA['config']['PATH']
    chain = evaluator_chain(path, regime, direction, x_norm)
    for i, evaluator in enumerate(chain):
        try:
            value, err = evaluator.evaluate(pq, x_norm, gamma, direction, n, spec)
            return value, err, evaluator.PATH
        except NumericalError as e:
            if i + 1 == len(chain):
                raise
            logger.warning("%s path failed in %s (%s), falling back to %s"
                           % (evaluator.PATH.value, e.operation, e, chain[i + 1].PATH.value))


def C_directional(pq: ExponentPair, x: BallPoint, direction: Direction, spec: QuadratureSpec = None,
                  path: str = None) -> ConstantReport:
    """C_p(x; l), computed after the rotation x -> |x| e1, l -> l_gamma"""
    if direction.n != x.n:
        raise DomainError("direction of dimension %d at a point of dimension %d" % (direction.n, x.n))
    n = x.n
    gamma, kind = direction_geometry(x, direction)
    x_norm = x.norm
    K, k_err, used = evaluate_K(pq, x_norm, gamma, kind, n, spec, path)
    C = C_from_K(K, pq, x_norm, n)
    logger.debug("C_directional: n=%d p=%s |x|=%g gamma=%.6f K=%.15g via %s"
                 % (n, pq.label(), x_norm, gamma, K, used.value))
    return ConstantReport(value=C, path=used, err_est=C * k_err / (pq.q * K), regime=pq.regime(n),
                          direction_kind=kind, k_value=K, gamma=gamma, n=n, x_norm=x_norm, p=pq.p)


def C_optimal(pq: ExponentPair, x: BallPoint, spec: QuadratureSpec = None, extremum: str = "max",
              path: str = None) -> ConstantReport:
    """
    max (or min) over directions of C_p(x; l): radial max for 1 < p < n, tangential max for p > n,
    direction free for p in {n, inf}. The minimizing directions have no closed form and use quadrature.
    """
    if extremum not in ("max", "min"):
        raise UsageError("extremum must be 'max' or 'min', got '%s'" % extremum)
    regime = pq.regime(x.n)
    if x.norm == 0 or regime in (Regime.INFINITY, Regime.AT_N):
        report = C_directional(pq, x, radial_direction(x), spec, path)
        return replace(report, direction_kind=DirectionKind.ANY)

    radial_wins = regime is Regime.BELOW
    if extremum == "min":
        radial_wins = not radial_wins
        if path == "CLOSED_FORM":
            raise UsageError("no closed form of K_p in the direction minimizing C_p(x; l), use DISC, SPHERE or MC")
        if (path or config.CONFIG_DATA['config']['PATH']) in ("AUTO", "CLOSED_FORM"):
            path = "DISC"
    direction = radial_direction(x) if radial_wins else tangent_direction(x)
    return C_directional(pq, x, direction, spec, path)


def lemma5_identity_check(a: float, b: float, alpha: float, u: float, spec: QuadratureSpec = None,
                          ctl: SeriesControl = None) -> Tuple[float, float]:
    """
    int_{-1}^{1} (1-ut)^(-alpha) |t|^a (1-t^2)^b dt by quadrature, against
    B((a+1)/2, b+1) 3F2(alpha/2, (alpha+1)/2, (a+1)/2; 1/2, (a+3)/2+b; u^2).
    """
    if not (a > -1 and b > -1):
        raise DomainError("lemma5_identity_check requires a, b > -1, got a=%r b=%r" % (a, b))
    if not abs(u) < 1:
        raise DomainError("lemma5_identity_check requires |u| < 1, got %r" % u)

    def integrand(t, one_plus_t, one_minus_t):
        return (1.0 - u * t) ** (-alpha) * np.abs(t) ** a * (one_minus_t * one_plus_t) ** b

    lhs, _ = integrate_interval(integrand, -1.0, 1.0, spec, [0.0], "lemma5_identity_check", endpoint_gaps=True)
    rhs = beta((a + 1) / 2, b + 1) * hyp_3f2(alpha / 2, (alpha + 1) / 2, (a + 1) / 2, 0.5, (a + 3) / 2 + b, u * u, ctl)
    return lhs, rhs


def moment_integral(k: int, q: float, n: int, spec: QuadratureSpec = None, method: str = "closed-form") -> float:
    """
    int eta1^k |eta2|^q dsigma(eta): zero for odd k, and for k = 2m
    (n-2)/(2 pi) B(n/2-1, m+q/2+1) B(m+1/2, (q+1)/2)   (n >= 3)
    B(m+1/2, (q+1)/2) / pi                             (n = 2)
    method="quadrature" integrates on the slice instead.
    """
    if int(k) != k or k < 0:
        raise DomainError("moment order must be a nonnegative integer, got %r" % k)
    if not q > 0:
        raise DomainError("moment_integral requires q > 0, got %r" % q)
    if n < 2:
        raise DomainError("moment_integral requires n >= 2, got %d" % n)
    k = int(k)

    if method == "quadrature":
        if n == 2:
            return slice_integral_1var(lambda t: t ** k * ((1.0 - t) * (1.0 + t)) ** (q / 2), 2, spec)
        return slice_integral_2var(lambda s, t: s ** k * np.abs(t) ** q, n, spec, [0.0, math.pi])
    if method != "closed-form":
        raise UsageError("moment_integral method must be 'closed-form' or 'quadrature', got '%s'" % method)

    if k % 2 == 1:
        return 0.0
    m = k // 2
    angular = beta(m + 0.5, (q + 1) / 2)
    if n == 2:
        return angular / math.pi
    return (n - 2) / (2 * math.pi) * beta(n / 2 - 1, m + q / 2 + 1) * angular
