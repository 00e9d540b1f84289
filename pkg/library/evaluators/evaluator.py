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

# This file defines the evaluation paths of K_p in an abstract class and its abstract methods
# To be overriden by child evaluator classes (closed form, disc reduction, sphere slice, Monte Carlo)

from abc import ABC, abstractmethod
from typing import Tuple

from library.sharp_constants import DirectionKind, ExponentPair, KPath, Regime
from library.sphere_quadrature import QuadratureSpec


class KEvaluator(ABC):
    PATH: KPath = None

    @staticmethod
    @abstractmethod
    def admissible(regime: Regime, direction: DirectionKind, x_norm: float) -> bool:
        pass

    @staticmethod
    @abstractmethod
    def evaluate(pq: ExponentPair, x_norm: float, gamma: float, direction: DirectionKind, n: int,
                 spec: QuadratureSpec = None) -> Tuple[float, float]:  # K value / error estimate
        pass
