"""Exception types raised across the package."""

from __future__ import annotations


class SubfracError(Exception):
    """Base class for all library errors."""


class InvalidOrder(SubfracError, ValueError):
    """Fractional orders outside the admissible range."""


class DomainError(SubfracError, ValueError):
    """Argument outside the domain of the function."""


class NoConvergence(SubfracError, ArithmeticError):
    """A series or expansion did not reach the requested tolerance."""


class QuadratureFailure(SubfracError, ArithmeticError):
    """Adaptive quadrature exhausted its budget without meeting tolerance."""


class OracleFailure(SubfracError, ArithmeticError):
    """Numeric inverse Laplace transform produced non-finite values."""


class DiracCase(SubfracError, ValueError):
    """The requested kernel degenerates to a Dirac delta.

    Callers that can handle the shift/identity analytically should catch this.
    """


class RepNotApplicable(SubfracError, ValueError):
    """Representation of K_{alpha,beta} not valid for the given orders."""


class MethodNotApplicable(SubfracError, ValueError):
    """Green-function method not valid for the given orders/dimension."""


class NotFinite(SubfracError, ArithmeticError):
    """The requested value is infinite (e.g. a Green function at the origin)."""


class UsageError(SubfracError):
    """Bad command-line usage."""
