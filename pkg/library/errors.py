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

# This file defines the exceptions raised by the library
# The CLI maps them to exit codes (see main.py)


class KhavinsonError(Exception):
    pass


class DomainError(KhavinsonError, ValueError):
    """An argument lies outside the domain of the operation"""
    pass


class UsageError(KhavinsonError, ValueError):
    """Valid arguments used in an unsupported combination (e.g. regime / direction mismatch)"""
    pass


class ConfigError(KhavinsonError):
    pass


class NumericalError(KhavinsonError, ArithmeticError):
    def __init__(self, message: str, operation: str = ""):
        super().__init__(message)
        self.operation = operation


class ConvergenceError(NumericalError):
    """A series did not converge within SeriesControl.max_terms"""

    def __init__(self, operation: str, partial_sum: float, terms: int):
        super().__init__("%s: series did not converge after %d terms (partial sum %.17g)"
                         % (operation, terms, partial_sum), operation)
        self.partial_sum = partial_sum
        self.terms = terms


class AccuracyError(NumericalError):
    """A quadrature did not meet its tolerance after QuadratureSpec.max_refinements"""

    def __init__(self, operation: str, value, error: float):
        super().__init__("%s: tolerance not met, best error estimate %.3g" % (operation, error), operation)
        self.value = value
        self.error = error
