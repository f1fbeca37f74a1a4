"""Exception hierarchy.

Numerical failures (the solver ran but could not certify a result) derive
from :class:`NumericalFailure`; malformed inputs derive from ``ValueError``
so that ordinary argument validation keeps working with ``except ValueError``.
"""

from __future__ import annotations


class FracSchrodingerError(Exception):
    """Base class for every error raised by this package."""


class NumericalFailure(FracSchrodingerError, ArithmeticError):
    """A computation could not reach its requested accuracy."""


class NonConvergent(NumericalFailure):
    """An evaluation did not certify its error bound within budget.

    The best value found and the bound actually achieved are attached so
    callers can decide whether to use them anyway.
    """

    def __init__(self, message: str, value: complex = complex("nan"), bound: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.bound = bound


class QuadratureFailure(NumericalFailure):
    """A quadrature rule failed or its tail estimate exceeded tolerance."""

    def __init__(self, message: str, value: complex = complex("nan"), error: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.error = error


class SectorUnsupported(NumericalFailure):
    """Argument lies in a wedge where the asymptotic expansion is not certified."""


class InvalidOrder(FracSchrodingerError, ValueError):
    """Derivative or Mittag-Leffler order outside Re > 0."""


class SingularAtZero(FracSchrodingerError, ValueError):
    """A power with negative real exponent was evaluated at t = 0."""


class NegativeTime(FracSchrodingerError, ValueError):
    """The causal solution was requested for t < 0."""


class ZeroTimeSeparation(FracSchrodingerError, ValueError):
    """A closed-form propagator was requested at dt = 0."""


class GridTooNarrow(FracSchrodingerError, ValueError):
    """A momentum grid does not contain the packet to the required decay."""


class BoundaryViolation(FracSchrodingerError, ValueError):
    """Initial well data do not vanish at the walls."""


class EdgeDecayViolation(FracSchrodingerError, ValueError):
    """Samples do not decay at the edges of their grid."""


class OriginSingularity(FracSchrodingerError, ValueError):
    """A negative-order derivative met a non-vanishing amplitude at k = 0."""


class UnsupportedLambda(FracSchrodingerError, ValueError):
    """Primitive ambiguity requested for an order other than -1 or -2."""
