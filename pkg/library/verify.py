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

# Named invariant suites run by the verify command.
# Each suite reads its grid from a section of the active profile (res/profiles/<name>/profile.yaml)
# and yields one case per grid point. A case is a thunk returning (passed, value, reference, detail);
# cases run through the scheduler, so the report order is the grid order.

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

import library.config as config
from library import scheduler
from library.errors import NumericalError, UsageError
from library.hyperbolic_kernel import (BallPoint, BoundaryFunction, Direction, gradient_fd_richardson,
                                       hyperbolic_laplacian_residual, mobius_bound_check, mobius_map,
                                       poisson_gradient, poisson_integral, poisson_kernel)
from library.log import logger
from library.sharp_constants import (ExponentPair, K_closed_form, K_disc, K_sphere, closed_form_admissible,
                                     direction_geometry, expected_derivative_sign, integral_I_derivative,
                                     lemma5_identity_check, moment_integral, parse_exponent)
from library.sharpness_lab import sharpness_profile
from library.special_functions import kummer_residual
from library.sphere_quadrature import QuadratureSpec

Outcome = Tuple[bool, float, float, str]
Case = Tuple[str, Callable[[], Outcome]]


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    passed: bool
    value: float
    reference: float
    detail: str = ""
    path: str = ""

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "case": self.case,
            "passed": self.passed,
            "value": self.value,
            "reference": self.reference,
            "detail": self.detail,
            "path": self.path,
        }


def relative_gap(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)


def _pi_label(fraction: float) -> str:
    return "%gpi" % fraction


def normalization_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """int P_h(x, .) dsigma = 1"""
    cases = []
    for n in section['DIMENSIONS']:
        for x_norm in section['X_NORMS']:
            def check(n=int(n), x_norm=float(x_norm)):
                x = BallPoint.on_axis(x_norm, n)
                value = float(poisson_integral(BoundaryFunction.constant(1.0, n), x, spec).value)
                gap = relative_gap(value, 1.0)
                return gap <= section['REL_TOL'], value, 1.0, "rel gap %.3g" % gap

            cases.append(("n=%d |x|=%g" % (n, x_norm), check))
    return cases


def path_agreement_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """K_sphere, K_disc and (where one exists) K_closed_form agree"""
    cases = []
    for n in section['DIMENSIONS']:
        for token in section['EXPONENTS']:
            for x_norm in section['X_NORMS']:
                for fraction in section['GAMMAS']:
                    def check(n=int(n), token=token, x_norm=float(x_norm), fraction=float(fraction)):
                        pq = ExponentPair.of(parse_exponent(token, n))
                        x = BallPoint.on_axis(x_norm, n)
                        gamma, kind = direction_geometry(x, Direction.in_plane(fraction * math.pi, n))
                        values = {"disc": K_disc(pq, x_norm, gamma, n, spec),
                                  "sphere": K_sphere(pq, x_norm, gamma, n, spec)}
                        if closed_form_admissible(pq.regime(n), kind, x_norm):
                            values["closed-form"] = K_closed_form(pq, x_norm, kind, n)
                        reference = values["disc"]
                        gap = max(relative_gap(v, reference) for v in values.values())
                        detail = ", ".join("%s=%.15g" % item for item in sorted(values.items()))
                        return gap <= section['REL_TOL'], values["sphere"], reference, detail

                    cases.append(("n=%d p=%s |x|=%g gamma=%s" % (n, token, x_norm, _pi_label(fraction)), check))
    return cases


def kummer_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    cases = []
    for a in section['A']:
        for c in section['C']:
            for v in section['V']:
                def check(a=float(a), c=float(c), v=float(v)):
                    residual = kummer_residual(a, c, v)
                    return abs(residual) <= section['ABS_TOL'], residual, 0.0, ""

                cases.append(("a=%g c=%g v=%g" % (a, c, v), check))
    return cases


def lemma5_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """Quadrature of int (1-ut)^(-alpha) |t|^a (1-t^2)^b dt against its Beta * 3F2 form"""
    cases = []
    for a, b, alpha, u in section['CASES']:
        def check(a=float(a), b=float(b), alpha=float(alpha), u=float(u)):
            lhs, rhs = lemma5_identity_check(a, b, alpha, u, spec)
            gap = relative_gap(lhs, rhs)
            return gap <= section['REL_TOL'], lhs, rhs, "rel gap %.3g" % gap

        cases.append(("a=%g b=%g alpha=%g u=%g" % (a, b, alpha, u), check))
    return cases


def moments_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """
    int eta1^k |eta2|^q dsigma by quadrature: odd k vanish, even k = 2m match the Beta form.
    The n = 2 variant is checked on the circle for every (m, q).
    """
    cases = []
    dimensions = [2] + [int(n) for n in section['DIMENSIONS'] if int(n) != 2]
    for n in dimensions:
        for m in section['POWERS']:
            for q in section['Q']:
                def even(n=n, m=int(m), q=float(q)):
                    value = moment_integral(2 * m, q, n, spec, method="quadrature")
                    reference = moment_integral(2 * m, q, n)
                    gap = relative_gap(value, reference)
                    return gap <= section['REL_TOL'], value, reference, "rel gap %.3g" % gap

                def odd(n=n, m=int(m), q=float(q)):
                    value = moment_integral(2 * m + 1, q, n, spec, method="quadrature")
                    return abs(value) <= section['ODD_TOL'], value, 0.0, ""

                cases.append(("n=%d k=%d q=%g" % (n, 2 * m, q), even))
                cases.append(("n=%d k=%d q=%g" % (n, 2 * m + 1, q), odd))
    return cases


def _trend(values: Sequence[float], expected: str, spread: float) -> Tuple[bool, str]:
    steps = np.diff(values)
    if expected == "decreasing":
        return bool(np.all(steps < 0)), "largest step %.3g" % float(np.max(steps))
    if expected == "increasing":
        return bool(np.all(steps > 0)), "smallest step %.3g" % float(np.min(steps))
    relative = (max(values) - min(values)) / abs(np.mean(values))
    return relative <= spread, "relative spread %.3g" % relative


def monotone_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """gamma -> K_p(x; l_gamma) on gamma_k = k pi / (2 STEPS), by disc reduction"""
    steps = int(section['STEPS'])
    gammas = [k * math.pi / (2 * steps) for k in range(steps + 1)]
    x_norm = float(section['X_NORM'])
    cases = []
    for n in section['DIMENSIONS']:
        for expected, key in (("decreasing", 'DECREASING'), ("increasing", 'INCREASING'), ("constant", 'CONSTANT')):
            for token in section[key]:
                def check(n=int(n), token=token, expected=expected):
                    pq = ExponentPair.of(parse_exponent(token, n))
                    values = [K_disc(pq, x_norm, gamma, n, spec) for gamma in gammas]
                    passed, detail = _trend(values, expected, float(section['SPREAD']))
                    return passed, values[-1], values[0], "%s: %s" % (expected, detail)

                cases.append(("n=%d p=%s %s" % (n, token, expected), check))
    return cases


def derivative_sign_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """sign of d/dgamma I_{a,b} at a seeded gamma in (0, pi/2), and zeros at 0 and pi/2"""
    rng = np.random.Generator(np.random.Philox(int(section['SEED'])))
    zero_tol = float(section['ZERO_TOL'])
    cases = []
    for a in section['A']:
        for b in section['B']:
            for big_a, big_b in section['AB']:
                gamma = float(rng.uniform(0.0, math.pi / 2))

                def signed(a=float(a), b=float(b), big_a=float(big_a), big_b=float(big_b), gamma=gamma):
                    value = integral_I_derivative(a, b, big_a, big_b, gamma, spec)
                    expected = expected_derivative_sign(a)
                    return int(np.sign(value)) == expected, value, float(expected), "gamma=%.12f" % gamma

                def zeros(a=float(a), b=float(b), big_a=float(big_a), big_b=float(big_b)):
                    ends = [integral_I_derivative(a, b, big_a, big_b, g, spec) for g in (0.0, math.pi / 2)]
                    worst = max(abs(v) for v in ends)
                    return worst <= zero_tol, worst, 0.0, "at 0: %.3g, at pi/2: %.3g" % tuple(ends)

                label = "a=%g b=%g A=%g B=%g" % (a, b, big_a, big_b)
                cases.append((label + " sign", signed))
                cases.append((label + " zeros", zeros))
    return cases


def harmonicity_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """The Delta_h residual of P_h(., zeta) decays like h^2"""
    h_coarse, h_fine = (float(h) for h in section['STEPS'])
    cases = []
    for n in section['DIMENSIONS']:
        def check(n=int(n)):
            x = np.full(n, float(section['X']) / math.sqrt(n))
            zeta = np.eye(n)[1]

            def u(y):
                return float(poisson_kernel(y, zeta))

            coarse = abs(hyperbolic_laplacian_residual(u, x, h_coarse))
            fine = abs(hyperbolic_laplacian_residual(u, x, h_fine))
            order = math.log(coarse / fine) / math.log(h_coarse / h_fine)
            return order >= section['MIN_ORDER'], order, float(section['MIN_ORDER']), \
                "residuals %.3g (h=%g), %.3g (h=%g)" % (coarse, h_coarse, fine, h_fine)

        cases.append(("n=%d" % n, check))
    return cases


def _plane_trial(rng: np.random.Generator, n: int) -> Tuple[BallPoint, BoundaryFunction]:
    """A point of the (e1, e2) plane and a random cubic polynomial of the plane coordinates"""
    angle = rng.uniform(0.0, 2 * math.pi)
    radius = rng.uniform(0.2, 0.6)
    coords = np.zeros(n)
    coords[0], coords[1] = radius * math.cos(angle), radius * math.sin(angle)
    monomials = [(i, d - i) for d in range(4) for i in range(d, -1, -1)]
    coefficients = dict(zip(monomials, rng.standard_normal(len(monomials))))
    return BallPoint(coords), BoundaryFunction.plane_polynomial(coefficients, np.eye(n)[:2])


def mobius_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """
    grad(u o phi_x)(0) = -(1-|x|^2) grad u(x), once by finite differences of u o phi_x and once
    from the composed boundary data, together with the origin bound on |grad(u o phi_x)(0)|.
    Stencils stay in the (e1, e2) plane, where every Poisson integral uses the 2-variable slice.
    """
    rng = np.random.Generator(np.random.Philox(int(section['SEED'])))
    rel_tol = float(section['REL_TOL'])
    cases = []
    for n in section['DIMENSIONS']:
        for trial in range(int(section['TRIALS'])):
            x, phi = _plane_trial(rng, int(n))

            def finite_differences(x=x, phi=phi):
                def composed(y):
                    return float(poisson_integral(phi, BallPoint(mobius_map(x, y)), spec).value)

                gradient, _ = gradient_fd_richardson(composed, np.zeros(x.n), directions=np.eye(x.n)[:2])
                scaled = -(1.0 - x.norm ** 2) * poisson_gradient(phi, x, spec).value
                gap = float(np.linalg.norm(gradient - scaled) / np.linalg.norm(scaled))
                return gap <= rel_tol, float(np.linalg.norm(gradient)), float(np.linalg.norm(scaled)), \
                    "rel gap %.3g" % gap

            def bound(x=x, phi=phi):
                check = mobius_bound_check(phi, x, spec, rel_tol)
                return check.holds, float(np.linalg.norm(check.composed_gradient)), check.origin_bound, \
                    "rel residual %.3g" % check.relative_residual

            label = "n=%d x=%s" % (n, np.array2string(x.coords[:2], precision=6))
            cases.append((label + " finite-differences", finite_differences))
            cases.append((label + " boundary-data", bound))
    return cases


def sharpness_cases(section: dict, spec: QuadratureSpec) -> List[Case]:
    """Extremal boundary data at the optimal direction attain C_p(x): MIN_RATIO <= ratio <= 1 + SCAN_SLACK"""
    finest = max(int(level) for level in section['LEVELS'])
    min_ratio = float(section['MIN_RATIO'])
    slack = float(section['SCAN_SLACK'])
    cases = []
    for n in section['DIMENSIONS']:
        for token in section['EXPONENTS']:
            for x_norm in section['X_NORMS']:
                def check(n=int(n), token=token, x_norm=float(x_norm)):
                    pq = ExponentPair.of(parse_exponent(token, n))
                    ((_, ratio),) = sharpness_profile(pq, BallPoint.on_axis(x_norm, n), [finest], spec)
                    return min_ratio <= ratio <= 1.0 + slack, ratio, 1.0, "level %d" % finest

                cases.append(("n=%d p=%s |x|=%g" % (n, token, x_norm), check))
    return cases


SUITES: Dict[str, Tuple[str, Callable[[dict, QuadratureSpec], List[Case]], str]] = {
    # name: (profile section, case builder, method producing the checked values)
    "normalization": ('NORMALIZATION', normalization_cases, "slice-quadrature"),
    "path-agreement": ('PATH_AGREEMENT', path_agreement_cases, "sphere-quadrature"),
    "kummer": ('KUMMER', kummer_cases, "series"),
    "lemma5": ('LEMMA5', lemma5_cases, "quadrature"),
    "moments": ('MOMENTS', moments_cases, "slice-quadrature"),
    "monotone": ('MONOTONE', monotone_cases, "disc-reduction"),
    "derivative-sign": ('DERIVATIVE_SIGN', derivative_sign_cases, "quadrature"),
    "harmonicity": ('HARMONICITY', harmonicity_cases, "finite-differences"),
    "mobius": ('MOBIUS', mobius_cases, "finite-differences"),
    "sharpness": ('SHARPNESS', sharpness_cases, "slice-quadrature"),
}


def selected_suites(only: Sequence[str] = None) -> List[str]:
    if not only:
        return list(SUITES)
    unknown = [name for name in only if name not in SUITES]
    if unknown:
        raise UsageError("unknown suite(s) %s, use one of %s" % (", ".join(unknown), ", ".join(SUITES)))
    return [name for name in SUITES if name in only]


def run_case(suite: str, case: Case) -> CaseResult:
    path = SUITES[suite][2]
    name, thunk = case
    try:
        passed, value, reference, detail = thunk()
    except NumericalError as e:
        passed, value, reference, detail = False, math.nan, math.nan, "%s in %s" % (e, e.operation)
    result = CaseResult(suite, name, bool(passed), float(value), float(reference), detail, path)
    if not result.passed:
        logger.error("%s failed for %s: value %r, reference %r (%s)"
                     % (suite, name, result.value, result.reference, detail))
    return result


def run_suites(only: Sequence[str] = None, spec: QuadratureSpec = None, profile: str = None,
               workers: int = None) -> List[CaseResult]:
    """Run the selected suites on the grids of the profile; results in suite then grid order"""
    profile_data = config.load_profile(profile)
    spec = spec or QuadratureSpec.from_config()
    results = []
    for name in selected_suites(only):
        section_key, build, _ = SUITES[name]
        cases = build(profile_data[section_key], spec)
        logger.info("Running suite %s (%d cases, profile %s)" % (name, len(cases), profile_data['NAME']))
        results.extend(scheduler.run_ordered(lambda case: run_case(name, case), cases, workers))
    failed = sum(1 for r in results if not r.passed)
    logger.info("%d cases, %d failed" % (len(results), failed))
    return results
