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

# Scalar special functions used by every closed form: log-Gamma, Beta, Pochhammer symbols,
# the Gauss 2F1 and the generalized 3F2 series, and the Kummer quadratic transformation.
# All series are summed in double precision, for real parameters and |z| < 1 only.

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import gammaln

import library.config as config
from library.errors import ConvergenceError, DomainError
from library.log import logger

# Beyond this |z| the series converge slowly (|z| = u^2 reaches it for |x| ~ 0.95):
# closed forms stay valid but the quadrature paths are preferred
SOFT_DOMAIN = 0.9975

# Number of consecutive negligible terms required to stop a series
STOP_RUN = 3


def _is_non_positive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-14
    max_terms: int = 100000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("SeriesControl.rel_tol must be > 0, got %r" % self.rel_tol)
        if int(self.max_terms) < 1:
            raise DomainError("SeriesControl.max_terms must be >= 1, got %r" % self.max_terms)

    @staticmethod
    def from_config() -> 'SeriesControl':
        return SeriesControl(rel_tol=float(config.CONFIG_DATA['series']['REL_TOL']),
                             max_terms=int(config.CONFIG_DATA['series']['MAX_TERMS']))


@dataclass(frozen=True)
class HypergeometricArgs:
    upper: Tuple[float, ...]
    lower: Tuple[float, ...]
    z: float

    def __post_init__(self):
        for b in self.lower:
            if _is_non_positive_integer(b):
                raise DomainError("lower hypergeometric parameter %r is a non-positive integer" % b)
        if not abs(self.z) < 1:
            raise DomainError("hypergeometric argument must satisfy |z| < 1, got %r" % self.z)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0"""
    if not x > 0:
        raise DomainError("log_gamma is defined for x > 0 only, got %r" % x)
    return float(gammaln(x))


def beta(a: float, b: float) -> float:
    """B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), through log_gamma to avoid overflow"""
    if not (a > 0 and b > 0):
        raise DomainError("beta requires a > 0 and b > 0, got (%r, %r)" % (a, b))
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def pochhammer(x: float, k: int) -> float:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1), (x)_0 = 1"""
    if k < 0 or int(k) != k:
        raise DomainError("pochhammer order must be a nonnegative integer, got %r" % k)
    if k == 0:
        return 1.0
    return float(np.prod(x + np.arange(int(k), dtype=float)))


def hypergeometric_series(args: HypergeometricArgs, ctl: SeriesControl = None,
                          operation: str = "hypergeometric_series") -> float:
    """
    Sum pFq(upper; lower; z) term by term.

    The sum stops once STOP_RUN consecutive terms satisfy |term| <= rel_tol * |partial sum|;
    a terminating series (an upper parameter equal to 0, -1, -2...) stops on its zero terms.
    """
    ctl = ctl or SeriesControl.from_config()
    if abs(args.z) > SOFT_DOMAIN:
        logger.warning("%s: |z| = %.6f is beyond the soft domain %.4f, convergence is slow"
                       % (operation, abs(args.z), SOFT_DOMAIN))

    term = 1.0
    total = 1.0
    small_run = 0
    for k in range(int(ctl.max_terms)):
        ratio = args.z / (k + 1)
        for a in args.upper:
            ratio *= a + k
        for b in args.lower:
            ratio /= b + k
        term *= ratio
        total += term
        if abs(term) <= ctl.rel_tol * abs(total):
            small_run += 1
            if small_run >= STOP_RUN:
                logger.debug("%s converged after %d terms" % (operation, k + 2))
                return total
        else:
            small_run = 0
    raise ConvergenceError(operation, total, int(ctl.max_terms))


def gauss_2f1(a: float, b: float, c: float, z: float, ctl: SeriesControl = None) -> float:
    return hypergeometric_series(HypergeometricArgs((a, b), (c,), z), ctl, "gauss_2f1")


def hyp_3f2(a1: float, a2: float, a3: float, b1: float, b2: float, z: float, ctl: SeriesControl = None) -> float:
    return hypergeometric_series(HypergeometricArgs((a1, a2, a3), (b1, b2), z), ctl, "hyp_3f2")


def kummer_residual(a: float, c: float, v: float, ctl: SeriesControl = None) -> float:
    """
    2F1(a, a+1/2; c; 4v/(1+v)^2) - (1+v)^(2a) 2F1(2a, 2a-c+1; c; v)

    Vanishes up to series accuracy wherever both members converge.
    """
    if not abs(v) < 1:
        raise DomainError("kummer_residual requires |v| < 1, got %r" % v)
    left = gauss_2f1(a, a + 0.5, c, 4 * v / (1 + v) ** 2, ctl)
    right = (1 + v) ** (2 * a) * gauss_2f1(2 * a, 2 * a - c + 1, c, v, ctl)
    return left - right


def duplication_residual(alpha: float, k: int) -> float:
    """(alpha)_2k - 2^2k (alpha/2)_k ((alpha+1)/2)_k, relative to (alpha)_2k"""
    lhs = pochhammer(alpha, 2 * k)
    rhs = 4.0 ** k * pochhammer(alpha / 2, k) * pochhammer((alpha + 1) / 2, k)
    return (lhs - rhs) / lhs if lhs != 0 else rhs
