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

# This file holds the commands of main.py: each one turns a validated RunConfig into a ResultDocument.
# Every number leaving a command sits in a row that names the evaluation path it came from.

import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

import library.config as config
from library import log, scheduler
from library.errors import DomainError, UsageError
from library.hyperbolic_kernel import BallPoint, Direction
from library.log import logger
from library.output import FORMATS, ResultDocument
from library.sharp_constants import (C_directional, C_optimal, ExponentPair, Regime, classify_regime,
                                     parse_exponent)
from library.sharpness_lab import SCAN_FAMILIES, bound_violation_scan, sharpness_profile
from library.sphere_quadrature import SLICE_2VAR, MONTE_CARLO, QuadratureSpec
from library.verify import SUITES, run_suites

COMMANDS = ("constant", "sweep-gamma", "verify", "sharpness", "table")

# Relative spread below which a swept K column counts as constant
SWEEP_SPREAD = 1e-9

PREDICTED_DIRECTION = {
    Regime.BELOW: "radial",
    Regime.AT_N: "any",
    Regime.ABOVE: "tangential",
    Regime.INFINITY: "any",
}

# RunConfig field -> (config.yaml section, key)
OVERRIDES = {
    'base_order': ('quadrature', 'BASE_ORDER'),
    'max_refinements': ('quadrature', 'MAX_REFINEMENTS'),
    'abs_tol': ('quadrature', 'ABS_TOL'),
    'rel_tol': ('quadrature', 'REL_TOL'),
    'series_rel_tol': ('series', 'REL_TOL'),
    'max_terms': ('series', 'MAX_TERMS'),
    'samples': ('monte_carlo', 'SAMPLES'),
    'seed': ('monte_carlo', 'SEED'),
    'workers': ('config', 'WORKERS'),
    'path': ('config', 'PATH'),
    'profile': ('config', 'PROFILE'),
    'output': ('output', 'FORMAT'),
}


@dataclass
class RunConfig:
    command: str
    n: int = 3
    p: str = "2"
    x_norm: float = 0.5
    gamma: Optional[float] = None
    path: Optional[str] = None
    base_order: Optional[int] = None
    max_refinements: Optional[int] = None
    abs_tol: Optional[float] = None
    rel_tol: Optional[float] = None
    series_rel_tol: Optional[float] = None
    max_terms: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    workers: Optional[int] = None
    output: Optional[str] = None
    out_file: Optional[str] = None
    only: List[str] = field(default_factory=list)
    profile: Optional[str] = None
    steps: Optional[int] = None
    family: str = "plane"
    trials: Optional[int] = None
    extremum: str = "max"
    verbose: bool = False

    @staticmethod
    def from_args(args) -> 'RunConfig':
        known = RunConfig.__dataclass_fields__
        return RunConfig(**{k: v for k, v in vars(args).items() if k in known})

    def exponent(self) -> ExponentPair:
        return ExponentPair.of(parse_exponent(self.p, self.n))

    def validate(self):
        """Reject invalid combinations before any computation"""
        if self.command not in COMMANDS:
            raise UsageError("unknown command '%s', use one of %s" % (self.command, ", ".join(COMMANDS)))
        if self.command != "verify":
            if int(self.n) != self.n or self.n < 3:
                raise DomainError("dimension n must be an integer >= 3, got %r" % self.n)
            if not 0 <= self.x_norm < 1:
                raise DomainError("|x| must be in [0, 1), got %r" % self.x_norm)
            self.exponent()
        if self.gamma is not None and not math.isfinite(self.gamma):
            raise DomainError("gamma must be a finite angle, got %r" % self.gamma)
        if self.gamma is not None and self.command != "constant":
            raise UsageError("--gamma only applies to the constant command")
        if self.path is not None and self.path not in config.EVALUATION_PATHS:
            raise UsageError("unknown evaluation path '%s', use one of %s"
                             % (self.path, ", ".join(config.EVALUATION_PATHS)))
        if self.output is not None and self.output not in FORMATS:
            raise UsageError("output format must be one of %s, got '%s'" % (", ".join(FORMATS), self.output))
        if self.extremum not in ("max", "min"):
            raise UsageError("extremum must be 'max' or 'min', got '%s'" % self.extremum)
        if self.extremum == "min" and self.path == "CLOSED_FORM":
            raise UsageError("the minimizing directions have no closed form, use DISC, SPHERE or MC")
        if self.family not in SCAN_FAMILIES:
            raise UsageError("unknown scan family '%s', use one of %s" % (self.family, ", ".join(SCAN_FAMILIES)))
        for name in ('steps', 'trials', 'samples', 'workers', 'base_order', 'max_terms'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainError("%s must be >= 1, got %r" % (name.replace("_", "-"), value))
        unknown = [name for name in self.only if name not in SUITES]
        if unknown:
            raise UsageError("unknown suite(s) %s, use one of %s" % (", ".join(unknown), ", ".join(SUITES)))

    def apply(self):
        """Write the overrides into the loaded configuration"""
        for name, (section, key) in OVERRIDES.items():
            value = getattr(self, name)
            if value is not None:
                config.CONFIG_DATA[section][key] = value
        config.check_config(config.CONFIG_DATA)
        if self.verbose:
            log.set_level("DEBUG")
        # Tolerances are validated here, before the first command computes anything
        QuadratureSpec.from_config()

    def as_dict(self) -> dict:
        return asdict(self)


def _point(cfg: RunConfig) -> BallPoint:
    return BallPoint.on_axis(cfg.x_norm, cfg.n)


def _header(cfg: RunConfig, pq: ExponentPair) -> dict:
    regime = classify_regime(pq.p, cfg.n)
    return {"regime": regime.value, "predicted_direction": PREDICTED_DIRECTION[regime], "p": pq.label()}


def cmd_constant(cfg: RunConfig) -> ResultDocument:
    """C_p(x) for the optimal direction, or C_p(x; l_gamma) when gamma is given"""
    pq = cfg.exponent()
    x = _point(cfg)
    if cfg.gamma is None:
        report = C_optimal(pq, x, extremum=cfg.extremum, path=cfg.path)
    else:
        report = C_directional(pq, x, Direction.in_plane(cfg.gamma, cfg.n), path=cfg.path)
    logger.info("C = %.15g (K = %.15g) via %s" % (report.value, report.k_value, report.path.value))
    return ResultDocument(cfg.as_dict(), [report.as_dict()], _header(cfg, pq))


def observed_trend(values) -> str:
    values = np.asarray(values, dtype=float)
    if (values.max() - values.min()) <= SWEEP_SPREAD * abs(values.mean()):
        return "constant"
    steps = np.diff(values)
    if np.all(steps < 0):
        return "decreasing"
    if np.all(steps > 0):
        return "increasing"
    return "mixed"


def cmd_sweep_gamma(cfg: RunConfig) -> ResultDocument:
    """K_p and C_p along l_gamma, gamma_k = k pi / (2 steps), k = 0..steps"""
    pq = cfg.exponent()
    x = _point(cfg)
    steps = int(cfg.steps or config.load_profile(cfg.profile)['SWEEP']['STEPS'])
    gammas = [k * math.pi / (2 * steps) for k in range(steps + 1)]
    reports = scheduler.run_ordered(lambda g: C_directional(pq, x, Direction.in_plane(g, cfg.n), path=cfg.path),
                                    gammas, cfg.workers)
    rows = [{"gamma": g, "K": r.k_value, "C": r.value, "err_est": r.err_est,
             "direction_kind": r.direction_kind.value, "path": r.path.value}
            for g, r in zip(gammas, reports)]
    diagnostics = _header(cfg, pq)
    diagnostics["observed_trend"] = observed_trend([r.k_value for r in reports])
    logger.info("K is %s in gamma (regime %s)" % (diagnostics["observed_trend"], diagnostics["regime"]))
    return ResultDocument(cfg.as_dict(), rows, diagnostics)


def cmd_verify(cfg: RunConfig) -> ResultDocument:
    results = run_suites(cfg.only, profile=cfg.profile, workers=cfg.workers)
    failed = [r for r in results if not r.passed]
    diagnostics = {
        "profile": config.PROFILE_DATA['NAME'],
        "cases": len(results),
        "failed": len(failed),
        "passed": not failed,
    }
    return ResultDocument(cfg.as_dict(), [r.as_dict() for r in results], diagnostics)


def cmd_sharpness(cfg: RunConfig) -> ResultDocument:
    """sharpness_ratio of the extremal candidate per refinement level, and the random-data scan maximum"""
    pq = cfg.exponent()
    x = _point(cfg)
    section = config.load_profile(cfg.profile)['SHARPNESS']
    trials = int(cfg.trials or section['SCAN_TRIALS'])
    seed = int(config.CONFIG_DATA['monte_carlo']['SEED'])

    rows = [{"kind": "extremal-candidate", "level": level, "ratio": ratio, "trials": None, "path": "slice-quadrature"}
            for level, ratio in sharpness_profile(pq, x, section['LEVELS'])]
    worst = bound_violation_scan(pq, x, trials, seed, family=cfg.family, workers=cfg.workers)
    rows.append({"kind": "scan-" + cfg.family, "level": None, "ratio": worst, "trials": trials,
                 "path": SLICE_2VAR if cfg.family == "plane" else MONTE_CARLO})

    attained = rows[-2]["ratio"] >= float(section['MIN_RATIO'])
    bounded = worst <= 1.0 + float(section['SCAN_SLACK'])
    diagnostics = _header(cfg, pq)
    diagnostics.update({"attained": attained, "bounded": bounded, "passed": attained and bounded,
                        "min_ratio": section['MIN_RATIO'], "scan_slack": section['SCAN_SLACK']})
    if not attained:
        logger.error("extremal candidate ratio %.6f stays below %g" % (rows[-2]["ratio"], section['MIN_RATIO']))
    if not bounded:
        logger.error("random boundary data exceed the bound: ratio %.6f" % worst)
    return ResultDocument(cfg.as_dict(), rows, diagnostics)


def cmd_table(cfg: RunConfig) -> ResultDocument:
    """C_p(x) over the (p, |x|) grid of the profile for the dimension n"""
    section = config.load_profile(cfg.profile)['TABLE']
    cells = [(token, float(x_norm)) for token in section['EXPONENTS'] for x_norm in section['X_NORMS']]

    def cell(args):
        token, x_norm = args
        pq = ExponentPair.of(parse_exponent(token, cfg.n))
        report = C_optimal(pq, BallPoint.on_axis(x_norm, cfg.n), extremum=cfg.extremum, path=cfg.path)
        row = report.as_dict()
        row["p_token"] = str(token)
        return row

    rows = scheduler.run_ordered(cell, cells, cfg.workers)
    return ResultDocument(cfg.as_dict(), rows, {"profile": config.PROFILE_DATA['NAME'], "n": cfg.n})


COMMAND_FUNCTIONS = {
    "constant": cmd_constant,
    "sweep-gamma": cmd_sweep_gamma,
    "verify": cmd_verify,
    "sharpness": cmd_sharpness,
    "table": cmd_table,
}


def run_command(cfg: RunConfig) -> ResultDocument:
    cfg.validate()
    cfg.apply()
    logger.debug("Running %s with %s" % (cfg.command, cfg.as_dict()))
    return COMMAND_FUNCTIONS[cfg.command](cfg)


def exit_status(document: ResultDocument) -> int:
    """1 when a command checking invariants reports a failure"""
    return 1 if document.diagnostics.get("passed") is False else 0
