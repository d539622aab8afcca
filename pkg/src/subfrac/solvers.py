"""Exact-representation solvers built on the subordination kernels.

``solve_spectral`` damps each eigenmode of a bounded-domain problem by the
scalar relaxation E_beta(-lam^alpha t^beta).  ``solve_advection`` applies the
solution operator of the space-time fractional advection equation on the
half line, u(x, t) = int_0^x psi(t, tau) v(x - tau) dtau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import erfc

from .errors import DomainError
from .kernels import OrderPair, f_kernel, phi_kernel, psi_closed_form_equal, psi_kernel, psi_singular_exponent
from .numerics import QuadConfig, integrate_finite
from .special import mittag_leffler_neg


@dataclass(frozen=True)
class SpectralProblem:
    """Eigenvalues lam_j > 0 (nondecreasing) and modal coefficients (v, phi_j)."""

    eigenvalues: tuple
    coefficients: tuple

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        coef = np.asarray(self.coefficients, dtype=float)
        if lam.ndim != 1 or lam.size == 0:
            raise DomainError("need at least one eigenvalue")
        if lam.shape != coef.shape:
            raise DomainError("eigenvalues and coefficients differ in length")
        if np.any(~(lam > 0)):
            raise DomainError("eigenvalues must be positive")
        if np.any(np.diff(lam) < 0):
            raise DomainError("eigenvalues must be nondecreasing")
        object.__setattr__(self, "eigenvalues", tuple(lam.tolist()))
        object.__setattr__(self, "coefficients", tuple(coef.tolist()))

    @property
    def size(self) -> int:
        return len(self.eigenvalues)


def modal_factor(op: OrderPair, lam, t) -> float:
    """E_beta(-lam^alpha t^beta); exp(-lam^alpha t) when beta = 1."""
    x = lam ** op.alpha * t ** op.beta
    if op.beta == 1:
        return math.exp(-x)
    return mittag_leffler_neg(op.beta, 1.0, x)


def solve_spectral(p: SpectralProblem, op: OrderPair, t) -> np.ndarray:
    """Modal amplitudes E_beta(-lam_j^alpha t^beta) (v, phi_j)."""
    if not t > 0:
        raise DomainError("t must be positive")
    return np.array([modal_factor(op, lam, t) * c for lam, c in zip(p.eigenvalues, p.coefficients)])


def dirichlet_interval_eigenfunctions(count: int, x) -> np.ndarray:
    """sqrt(2/pi) sin(j x) for j = 1..count, shape (count, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    j = np.arange(1, count + 1)[:, None]
    return math.sqrt(2.0 / math.pi) * np.sin(j * x[None, :])


def dirichlet_interval_problem(count: int, v: Optional[Callable] = None,
                               q: QuadConfig = QuadConfig()) -> SpectralProblem:
    """Dirichlet Laplacian on (0, pi): lam_j = j^2, phi_j = sqrt(2/pi) sin(jx).

    Without ``v`` the initial profile x(pi - x) is used, whose coefficients
    sqrt(2/pi) 4/j^3 (odd j, zero for even j) are exact.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    lam = [float(j * j) for j in range(1, count + 1)]
    if v is None:
        coef = [math.sqrt(2.0 / math.pi) * 4.0 / j ** 3 if j % 2 else 0.0 for j in range(1, count + 1)]
    else:
        coef = [integrate_finite(lambda x, j=j: _call(v, x) * math.sqrt(2.0 / math.pi) * np.sin(j * x),
                                 0.0, math.pi, q).value for j in range(1, count + 1)]
    return SpectralProblem(tuple(lam), tuple(coef))


def synthesize(amplitudes, eigenfunction_values) -> np.ndarray:
    """Sum_j a_j phi_j(x) given phi_j sampled as rows of ``eigenfunction_values``."""
    a = np.asarray(amplitudes, dtype=float)
    phi = np.asarray(eigenfunction_values, dtype=float)
    return a @ phi[: a.size]


# -- advection --------------------------------------------------------------

def _call(v: Callable, x):
    """Evaluate ``v`` on an array, falling back to a pointwise loop."""
    x = np.asarray(x, dtype=float)
    try:
        y = np.asarray(v(x), dtype=float)
        if y.shape == x.shape:
            return y
        if y.ndim == 0:
            return np.full(x.shape, float(y))
    except (TypeError, ValueError):
        pass
    return np.array([float(v(xi)) for xi in x.ravel()]).reshape(x.shape)


@dataclass(frozen=True)
class AdvectionProblem:
    initial_profile: Callable
    orders: OrderPair
    eval_grid: tuple = field(default=())

    def __post_init__(self):
        g = np.asarray(self.eval_grid, dtype=float)
        if g.ndim != 1 or g.size == 0:
            raise DomainError("eval_grid must be a non-empty 1-D sequence")
        if np.any(g < 0) or np.any(np.diff(g) <= 0):
            raise DomainError("eval_grid must be ascending and non-negative")
        object.__setattr__(self, "eval_grid", tuple(g.tolist()))


def heaviside_shift(v: Callable, x, t) -> np.ndarray:
    """H(x - t) v(x - t) with H(0) = 1/2."""
    x = np.asarray(x, dtype=float)
    d = x - t
    h = np.where(d > 0, 1.0, np.where(d == 0, 0.5, 0.0))
    out = np.zeros(x.shape)
    live = h > 0
    out[live] = h[live] * _call(v, d[live])
    return out


def _psi_vectorized(op: OrderPair, t, q: QuadConfig):
    if op.alpha == op.beta:
        return lambda tau: psi_closed_form_equal(op.alpha, t, tau)
    if op.beta == 1:
        return lambda tau: f_kernel(op.alpha, t, tau)
    if op.alpha == 1:
        return lambda tau: phi_kernel(op.beta, t, tau)
    return lambda tau: psi_kernel(op, t, tau, q)


def solve_advection(p: AdvectionProblem, t, q: QuadConfig = QuadConfig()) -> np.ndarray:
    """u(x, t) on the problem's grid."""
    if not t > 0:
        raise DomainError("t must be positive")
    op = p.orders
    x = np.asarray(p.eval_grid)
    if op.is_delta:
        return heaviside_shift(p.initial_profile, x, t)
    psi = _psi_vectorized(op, t, q)
    qs = q.with_singularity(psi_singular_exponent(op))
    out = np.zeros(x.shape)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        out[i] = integrate_finite(lambda tau, xi=xi: psi(tau) * _call(p.initial_profile, xi - tau),
                                  0.0, float(xi), qs).value
    return out


def advection_half_half_constant(x, t):
    """u for alpha = beta = 1/2 and v = 1: (2/pi) arctan(sqrt(x/t))."""
    return 2.0 / math.pi * np.arctan(np.sqrt(np.asarray(x, dtype=float) / t))


def advection_levy_half_constant(x, t):
    """u for alpha = 1/2, beta = 1 and v = 1: erfc(t / (2 sqrt x))."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(x > 0, erfc(t / (2.0 * np.sqrt(np.where(x > 0, x, 1.0)))), 0.0)


__all__ = [
    "SpectralProblem", "AdvectionProblem", "modal_factor", "solve_spectral",
    "dirichlet_interval_problem", "dirichlet_interval_eigenfunctions", "synthesize",
    "heaviside_shift", "solve_advection", "advection_half_half_constant",
    "advection_levy_half_constant",
]
