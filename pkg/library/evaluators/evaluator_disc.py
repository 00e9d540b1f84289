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

# K_p by the disc reduction: radial quadrature of the angular integral J_q

from typing import Tuple

import library.evaluators.evaluator as evaluator
from library.sharp_constants import DirectionKind, ExponentPair, KPath, K_disc, Regime
from library.sphere_quadrature import QuadratureSpec


class Disc(evaluator.KEvaluator):
    PATH = KPath.DISC

    @staticmethod
    def admissible(regime: Regime, direction: DirectionKind, x_norm: float) -> bool:
        return True

    @staticmethod
    def evaluate(pq: ExponentPair, x_norm: float, gamma: float, direction: DirectionKind, n: int,
                 spec: QuadratureSpec = None) -> Tuple[float, float]:
        return K_disc(pq, x_norm, gamma, n, spec, with_error=True)
