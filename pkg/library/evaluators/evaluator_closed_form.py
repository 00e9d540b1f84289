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

# K_p from its closed forms (Gamma factors and hypergeometric series)
# Only available in the directions where the constant is extremal, and for p in {n, inf}

from typing import Tuple

import library.evaluators.evaluator as evaluator
from library.sharp_constants import (CLOSED_FORM_MAX_NORM, DirectionKind, ExponentPair, KPath, K_closed_form, Regime,
                                     closed_form_admissible)
from library.special_functions import SeriesControl
from library.sphere_quadrature import QuadratureSpec


class ClosedForm(evaluator.KEvaluator):
    PATH = KPath.CLOSED_FORM

    @staticmethod
    def admissible(regime: Regime, direction: DirectionKind, x_norm: float) -> bool:
        return closed_form_admissible(regime, direction, x_norm) and x_norm <= CLOSED_FORM_MAX_NORM

    @staticmethod
    def evaluate(pq: ExponentPair, x_norm: float, gamma: float, direction: DirectionKind, n: int,
                 spec: QuadratureSpec = None) -> Tuple[float, float]:
        ctl = SeriesControl.from_config()
        value = K_closed_form(pq, x_norm, direction, n, ctl)
        # series stop once the terms fall below rel_tol
        return value, abs(value) * ctl.rel_tol
