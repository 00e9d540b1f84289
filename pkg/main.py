#!/usr/bin/env python
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

# This file is the command-line program: constant tables, gamma sweeps, verification suites and
# sharpness experiments, written as JSON or CSV (see README)
#
# Exit codes: 0 ok, 1 failed invariant, 2 configuration or usage error, 3 numerical failure
import os
import sys

MIN_PYTHON = (3, 9)
if sys.version_info < MIN_PYTHON:
    print("[ERROR] Python %s.%s or later is required." % MIN_PYTHON)
    try:
        sys.exit(2)
    except:
        os._exit(2)

import argparse

from library.errors import ConfigError, DomainError, NumericalError, UsageError

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--n", type=int, default=3, help="Dimension of the ball B^n (default: 3)")
    parent.add_argument("--p", default="2",
                        help="Exponent p in (1, inf]: a number, 'inf', or 'n', 'n+k', 'kn' (default: 2)")
    parent.add_argument("--x-norm", type=float, default=0.5, dest="x_norm", help="|x| in [0, 1) (default: 0.5)")
    parent.add_argument("--path",
                        help="K evaluation path: AUTO, CLOSED_FORM, DISC, SPHERE or MC (default: config.yaml PATH)")
    parent.add_argument("--base-order", type=int, dest="base_order", help="Gauss-Legendre nodes per panel")
    parent.add_argument("--max-refinements", type=int, dest="max_refinements", help="Panel doublings")
    parent.add_argument("--abs-tol", type=float, dest="abs_tol", help="Quadrature absolute tolerance")
    parent.add_argument("--rel-tol", type=float, dest="rel_tol", help="Quadrature relative tolerance")
    parent.add_argument("--series-rel-tol", type=float, dest="series_rel_tol", help="Hypergeometric series tolerance")
    parent.add_argument("--max-terms", type=int, dest="max_terms", help="Hypergeometric series term limit")
    parent.add_argument("--samples", type=int, help="Monte-Carlo samples")
    parent.add_argument("--seed", type=int, help="Seed of every random draw")
    parent.add_argument("--workers", type=int, help="Threads for grid commands (results never depend on it)")
    parent.add_argument("--profile", help="Profile directory under res/profiles (default: config.yaml PROFILE)")
    parent.add_argument("--output", choices=("json", "csv"), help="Output format (default: config.yaml FORMAT)")
    parent.add_argument("--out-file", dest="out_file",
                        help="Result file, relative paths go to $KHAVINSON_OUTPUT_DIR (default: stdout)")
    parent.add_argument("--verbose", action="store_true", help="Debug logging")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khavinson-constants",
        description="Sharp gradient constants for hyperbolic harmonic functions on the unit ball")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = common_options()

    constant = subparsers.add_parser("constant", parents=[parent], help="C_p(x), or C_p(x; l_gamma) with --gamma")
    constant.add_argument("--gamma", type=float, help="Angle (radians) between l and x")
    constant.add_argument("--extremum", choices=("max", "min"), default="max",
                          help="Optimal (max) or minimizing (min) direction")

    sweep = subparsers.add_parser("sweep-gamma", parents=[parent], help="K_p and C_p along l_gamma, gamma in [0, pi/2]")
    sweep.add_argument("--steps", type=int, help="Number of gamma intervals (default: profile SWEEP.STEPS)")

    verify = subparsers.add_parser("verify", parents=[parent], help="Run the invariant suites of the profile")
    verify.add_argument("--only", action="append", default=[], help="Run only this suite (repeatable)")

    sharpness = subparsers.add_parser("sharpness", parents=[parent], help="Extremal candidate ratios and bound scan")
    sharpness.add_argument("--trials", type=int, help="Random boundary functions (default: profile SCAN_TRIALS)")
    sharpness.add_argument("--family", choices=("plane", "general"), default="plane",
                           help="Random boundary data family")

    table = subparsers.add_parser("table", parents=[parent], help="C_p(x) over the (p, |x|) grid of the profile")
    table.add_argument("--extremum", choices=("max", "min"), default="max",
                       help="Optimal (max) or minimizing (min) direction")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    try:
        # Loading the configuration can fail, import the library only here
        from library.commands import RunConfig, exit_status, run_command
        from library.log import logger
        from library.output import write_document

        cfg = RunConfig.from_args(args)
        document = run_command(cfg)
        write_document(document, cfg.output, cfg.out_file)
    except (ConfigError, UsageError, DomainError) as e:
        print("[ERROR] %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        print("[ERROR] numerical failure in %s: %s" % (e.operation or "unknown operation", e), file=sys.stderr)
        return EXIT_NUMERICAL

    if exit_status(document) != EXIT_OK:
        logger.error("Some invariants failed, see the result file")
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
