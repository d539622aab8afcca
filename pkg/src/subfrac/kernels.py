"""Subordination kernels and the one-variable densities behind them.

Notation used throughout::

    f_a(t, tau)     = t**(-1/a) * L_a(tau * t**(-1/a))       Levy extremal stable
    phi_b(t, tau)   = t**(-b)   * M_b(tau * t**(-b))         Mainardi
    psi_ab(t, tau)  = t**(-b/a) * K_ab(tau * t**(-b/a))

with Laplace transforms (in the second variable) ``exp(-lam**a)``,
``E_b(-lam)`` and ``E_b(-lam**a)`` for L, M and K respectively.  The
degenerate orders ``a = 1`` / ``b = 1`` give Dirac deltas; they are reported
by raising :class:`DiracCase` so callers can apply the shift analytically.

``psi_ab`` also equals twice the Riesz-Feller Green function of order ``a``
and skewness ``-a`` restricted to ``x > 0``; that relation is not computed
here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.special import gammaln

from .errors import DiracCase, DomainError, InvalidOrder, QuadratureFailure, RepNotApplicable
from .numerics import (
    QuadConfig,
    TalbotConfig,
    integrate_semi_infinite,
    inverse_laplace_talbot,
)
from .special import ml_complex

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class OrderPair:
    """Space order ``alpha`` and time order ``beta``, both in (0, 1]."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise InvalidOrder(f"alpha={self.alpha} not in (0, 1]")
        if not 0 < self.beta <= 1:
            raise InvalidOrder(f"beta={self.beta} not in (0, 1]")

    @property
    def is_delta(self) -> bool:
        return self.alpha == 1 and self.beta == 1


@dataclass(frozen=True)
class KernelPoint:
    t: float
    tau: float

    def __post_init__(self):
        if not self.t > 0:
            raise DomainError(f"t={self.t} must be positive")
        if not self.tau >= 0:
            raise DomainError(f"tau={self.tau} must be non-negative")


class Rep(enum.Enum):
    """How to evaluate K_{alpha,beta}."""

    CLOSED_FORM = "closed"
    REP1_LEVY_MAINARDI = "rep1"
    REP2_LEVY_LEVY = "rep2"
    REP3_MAINARDI_MAINARDI = "rep3"
    REP4_HALF_COMPOSITION = "rep4"
    TALBOT = "talbot"


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


# -- Levy / Mainardi core ---------------------------------------------------

_SERIES_TERMS = 400
_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


@lru_cache(maxsize=128)
def _mainardi_coefficients(beta):
    k = np.arange(_SERIES_TERMS, dtype=float)
    s = np.sin(np.pi * beta * (k + 1.0))
    with np.errstate(divide="ignore"):
        log_abs = gammaln(beta * (k + 1.0)) - gammaln(k + 1.0) + np.log(np.abs(s)) - math.log(math.pi)
    sign = np.sign(s) * np.where(k % 2 == 0, 1.0, -1.0)
    return k, log_abs, sign


def _mainardi_series(beta, z):
    """Power series of M_beta at z >= 0, with a flag where it is trustworthy.

    Terms (-z)^k / (k! Gamma(1 - beta(k+1))) are written with the reflection
    formula so that 1/Gamma at non-positive integers is exactly zero.
    """
    k, log_abs, sign = _mainardi_coefficients(beta)
    z = z[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        logz = np.log(z)
        lt = np.where(k == 0, 0.0, k * logz) + log_abs
    lt = np.where(np.isnan(lt), -np.inf, lt)
    peak = lt.max(axis=1)
    # a coefficient may vanish exactly (e.g. beta = 1/2, odd k); use a
    # neighbour to judge the tail
    tail = np.maximum(lt[:, -1], lt[:, -2])
    with np.errstate(over="ignore", invalid="ignore"):
        scaled = sign * np.exp(lt - peak[:, None])
        total = np.sum(scaled, axis=1)
        value = total * np.exp(peak)
    ok = (tail < peak - 40.0) & (total > 0) & (np.abs(total) > 1e-4) & np.isfinite(value)
    return np.where(ok, value, np.nan), ok


def _log_levy_zolotarev(alpha, x):
    """log L_alpha(x) from Zolotarev's non-oscillatory integral over (0, pi).

    L(x) = alpha/(pi(1-alpha)) x^{-1/(1-alpha)} int_0^pi A(u) exp(-X A(u)) du,
    X = x^{-alpha/(1-alpha)}, A(u) = (sin(au)/sin u)^{1/(1-a)} sin((1-a)u)/sin(au).
    """
    a = alpha
    p = 1.0 / (1.0 - a)
    x = np.asarray(x, dtype=float)
    big_x = x ** (-a * p)
    a0 = a ** (a * p) * (1.0 - a)
    # exp(-X A0) bounds the result; skip points that would underflow anyway
    dead = big_x * a0 > 760.0
    if np.any(dead):
        out = np.full(x.shape, -np.inf)
        if not np.all(dead):
            out[~dead] = _log_levy_zolotarev(alpha, x[~dead])
        return out
    # panels graded towards 0 on the scale of the peak width, and towards pi
    w0 = np.minimum(np.pi / 4, 0.5 / np.sqrt(1.0 + big_x * a0))
    left = np.minimum(w0[:, None] * 2.0 ** np.arange(13), np.pi / 2)
    left = np.concatenate([np.zeros((len(x), 1)), left], axis=1)
    right = np.pi - (np.pi / 2) * 2.0 ** -np.arange(1, 22)
    right = np.broadcast_to(np.append(right, np.pi), (len(x), 22))
    edges = np.concatenate([left, right], axis=1)
    lo = edges[:, :-1, None]
    hi = edges[:, 1:, None]
    u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * _GL_X
    w = 0.5 * (hi - lo) * _GL_W
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        log_a = (p * (np.log(np.sin(a * u)) - np.log(np.sin(u)))
                 + np.log(np.sin((1.0 - a) * u)) - np.log(np.sin(a * u)))
        amp = np.exp(log_a)
        integrand = amp * np.exp(-big_x[:, None, None] * (amp - a0))
    integrand = np.where(np.isfinite(integrand), integrand, 0.0)
    s = np.sum(w * integrand, axis=(1, 2))
    with np.errstate(divide="ignore"):
        return (math.log(a * p / math.pi) - p * np.log(x) - big_x * a0 + np.log(s))


def _mainardi_values(beta, z):
    z = np.atleast_1d(z).astype(float)
    out, ok = _mainardi_series(beta, z)
    if not np.all(ok):
        zz = z[~ok]
        log_l = _log_levy_zolotarev(beta, zz ** (-1.0 / beta))
        out[~ok] = np.exp(-math.log(beta) - (1.0 + 1.0 / beta) * np.log(zz) + log_l)
    return out


def _levy_values(alpha, x):
    x = np.atleast_1d(x).astype(float)
    z = x ** (-alpha)
    m, ok = _mainardi_series(alpha, z)
    out = alpha * x ** (-1.0 - alpha) * m
    if not np.all(ok):
        out[~ok] = np.exp(_log_levy_zolotarev(alpha, x[~ok]))
    return out


def levy_density(alpha, r):
    """One-sided Levy stable density L_alpha(r), Laplace transform exp(-lam**alpha)."""
    if alpha == 1:
        raise DiracCase("L_1(r) = delta(r - 1)")
    if not 0 < alpha < 1:
        raise InvalidOrder(f"alpha={alpha} not in (0, 1]")
    r, scalar = _as_array(r)
    if np.any(~(r > 0)):
        raise DomainError("levy_density requires r > 0")
    if alpha == 0.5:
        out = r ** -1.5 * np.exp(-0.25 / r) / (2.0 * _SQRT_PI)
    else:
        out = _levy_values(alpha, r.ravel()).reshape(r.shape)
    return _ret(out, scalar)


def mainardi(beta, r):
    """Mainardi function M_beta(r), Laplace transform E_beta(-lam)."""
    if beta == 1:
        raise DiracCase("M_1(r) = delta(r - 1)")
    if not 0 < beta < 1:
        raise InvalidOrder(f"beta={beta} not in (0, 1]")
    r, scalar = _as_array(r)
    if np.any(~(r >= 0)):
        raise DomainError("mainardi requires r >= 0")
    if beta == 0.5:
        out = np.exp(-0.25 * r * r) / _SQRT_PI
    else:
        out = _mainardi_values(beta, r.ravel()).reshape(r.shape)
    return _ret(out, scalar)


def f_kernel(alpha, t, tau):
    """f_alpha(t, tau) = t^{-1/alpha} L_alpha(tau t^{-1/alpha}); zero at tau = 0."""
    t, tau = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(tau, dtype=float))
    scalar = t.ndim == 0
    if np.any(~(t > 0)) or np.any(~(tau >= 0)):
        raise DomainError("f_kernel requires t > 0, tau >= 0")
    scale = t ** (-1.0 / alpha)
    r = tau * scale
    out = np.zeros(r.shape)
    pos = r > 0
    if np.any(pos):
        out[pos] = scale[pos] * levy_density(alpha, r[pos])
    elif alpha == 1:
        levy_density(alpha, 1.0)
    return _ret(out, scalar)


def phi_kernel(beta, t, tau):
    """phi_beta(t, tau) = t^{-beta} M_beta(tau t^{-beta})."""
    t, tau = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(tau, dtype=float))
    scalar = t.ndim == 0
    if np.any(~(t > 0)) or np.any(~(tau >= 0)):
        raise DomainError("phi_kernel requires t > 0, tau >= 0")
    scale = t ** (-beta)
    out = scale * mainardi(beta, tau * scale)
    return _ret(np.asarray(out), scalar)


# -- K_{alpha,beta} ---------------------------------------------------------

def k_closed_form_equal(alpha, r):
    """K_{alpha,alpha}(r) = sin(alpha pi) r^{alpha-1} / (pi (r^{2alpha} + 2 r^alpha cos(alpha pi) + 1))."""
    r = np.asarray(r, dtype=float)
    ra = r ** alpha
    return (r ** (alpha - 1.0) * math.sin(alpha * math.pi)
            / (math.pi * (ra * ra + 2.0 * ra * math.cos(alpha * math.pi) + 1.0)))


def _has_closed_form(op: OrderPair) -> bool:
    return op.alpha == op.beta or op.alpha == 1 or op.beta == 1


def _check_rep(op: OrderPair, rep: Rep):
    if op.is_delta:
        raise DiracCase("K_{1,1}(r) = delta(r - 1)")
    if rep is Rep.CLOSED_FORM:
        if not _has_closed_form(op):
            raise RepNotApplicable(f"no closed form for {op}")
    elif rep in (Rep.REP1_LEVY_MAINARDI, Rep.REP2_LEVY_LEVY, Rep.REP3_MAINARDI_MAINARDI):
        if op.alpha == 1 or op.beta == 1:
            raise RepNotApplicable(f"{rep.value} needs alpha, beta < 1")
    elif rep is Rep.REP4_HALF_COMPOSITION:
        if not op.alpha < op.beta < 1:
            raise RepNotApplicable("rep4 needs alpha < beta < 1")


def _k_closed(op: OrderPair, r):
    if op.alpha == op.beta:
        return k_closed_form_equal(op.alpha, r)
    if op.beta == 1:
        return levy_density(op.alpha, r)
    return mainardi(op.beta, r)


def _k_rep(op: OrderPair, r: float, rep: Rep, q: QuadConfig) -> float:
    a, b = op.alpha, op.beta
    if rep is Rep.REP1_LEVY_MAINARDI:
        def g(s):
            sc = s ** (-1.0 / a)
            return sc * _levy_values(a, r * sc) * _mainardi_values(b, s)
        return integrate_semi_infinite(g, q).value
    if rep is Rep.REP2_LEVY_LEVY:
        def g(s):
            sc = s ** (b / a)
            return sc * _levy_values(a, r * sc) * _levy_values(b, s)
        return integrate_semi_infinite(g, q).value
    if rep is Rep.REP3_MAINARDI_MAINARDI:
        ra = r ** a

        def g(s):
            return s * _mainardi_values(a, s) * _mainardi_values(b, s * ra)
        return a * r ** (a - 1.0) * integrate_semi_infinite(g, q).value
    if rep is Rep.REP4_HALF_COMPOSITION:
        gam = a / b

        def g(s):
            sc = s ** (-b / a)
            return sc * _levy_values(gam, r * sc) * k_closed_form_equal(b, s)
        return integrate_semi_infinite(g, q).value
    raise RepNotApplicable(str(rep))


def _k_talbot(op: OrderPair, r: float, cfg: TalbotConfig) -> float:
    a, b = op.alpha, op.beta
    if a <= b:
        # E_b(-lam^a) is the Laplace transform of K in r
        return inverse_laplace_talbot(lambda z: ml_complex(b, 1.0, -z ** a), r, cfg)
    # Laplace transform in t of psi(t, r): s^{b-1} r^{a-1} E_{a,a}(-s^b r^a)
    return inverse_laplace_talbot(
        lambda s: s ** (b - 1.0) * r ** (a - 1.0) * ml_complex(a, a, -(s ** b) * r ** a), 1.0, cfg)


def k_density(op: OrderPair, r, rep: Optional[Rep] = None,
              q: QuadConfig = QuadConfig(), talbot: TalbotConfig = TalbotConfig()):
    """K_{alpha,beta}(r), the inverse Laplace transform of E_beta(-lam**alpha).

    ``rep=None`` picks the closed form when one exists, otherwise the
    Levy-Mainardi integral with a fallback to Talbot inversion.
    """
    r, scalar = _as_array(r)
    if np.any(~(r > 0)):
        raise DomainError("k_density requires r > 0")
    auto = rep is None
    if auto:
        rep = Rep.CLOSED_FORM if _has_closed_form(op) else Rep.REP1_LEVY_MAINARDI
    _check_rep(op, rep)
    if rep is Rep.CLOSED_FORM:
        return _ret(np.asarray(_k_closed(op, r)), scalar)
    out = np.empty(r.shape)
    for idx, ri in np.ndenumerate(r):
        if rep is Rep.TALBOT:
            out[idx] = _k_talbot(op, float(ri), talbot)
            continue
        try:
            out[idx] = _k_rep(op, float(ri), rep, q)
        except QuadratureFailure:
            if not auto:
                raise
            out[idx] = _k_talbot(op, float(ri), talbot)
    return _ret(out, scalar)


def k_small_r_limit(op: OrderPair, r):
    """Leading small-r behaviour r^{alpha-1} / (Gamma(alpha) Gamma(1-beta))."""
    return np.asarray(r, dtype=float) ** (op.alpha - 1.0) / (
        math.gamma(op.alpha) * math.gamma(1.0 - op.beta))


def psi_closed_form_equal(alpha, t, tau):
    """psi_{alpha,alpha}(t, tau) in closed form."""
    t = np.asarray(t, dtype=float)
    tau = np.asarray(tau, dtype=float)
    ta = t ** alpha
    sa = tau ** alpha
    return (ta * tau ** (alpha - 1.0) * math.sin(alpha * math.pi)
            / (math.pi * (ta * ta + 2.0 * ta * sa * math.cos(alpha * math.pi) + sa * sa)))


def psi_kernel(op: OrderPair, t, tau, q: QuadConfig = QuadConfig(),
               rep: Optional[Rep] = None):
    """Subordination kernel psi_{alpha,beta}(t, tau) for t, tau > 0."""
    if op.is_delta:
        raise DiracCase("psi_{1,1}(t, tau) = delta(t - tau)")
    t, tau = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(tau, dtype=float))
    scalar = t.ndim == 0
    if np.any(~(t > 0)) or np.any(~(tau > 0)):
        raise DomainError("psi_kernel requires t > 0 and tau > 0")
    if op.alpha == op.beta and rep in (None, Rep.CLOSED_FORM):
        return _ret(np.asarray(psi_closed_form_equal(op.alpha, t, tau)), scalar)
    scale = t ** (-op.beta / op.alpha)
    out = scale * k_density(op, tau * scale, rep=rep, q=q)
    return _ret(np.asarray(out), scalar)


def psi_singular_exponent(op: OrderPair) -> float:
    """Exponent of the tau -> 0 behaviour of psi (alpha - 1 unless beta = 1 or alpha = 1)."""
    if op.alpha < 1 and op.beta < 1:
        return op.alpha - 1.0
    return 0.0


KernelFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def compose_kernels(a: KernelFunction, b: KernelFunction, t, tau,
                    q: QuadConfig = QuadConfig()) -> float:
    """int_0^inf a(t, s) b(s, tau) ds."""
    if not t > 0 or not tau > 0:
        raise DomainError("compose_kernels requires t, tau > 0")
    return integrate_semi_infinite(lambda s: a(t, s) * b(s, tau), q).value


# -- inverse-Laplace oracles ------------------------------------------------

def levy_density_talbot(alpha, r, cfg: TalbotConfig = TalbotConfig()) -> float:
    """L_alpha(r) by numeric inversion of exp(-lam**alpha)."""
    return inverse_laplace_talbot(lambda z: np.exp(-z ** alpha), r, cfg)


def f_kernel_talbot(alpha, t, tau, cfg: TalbotConfig = TalbotConfig()) -> float:
    """f_alpha(t, tau) by inverting exp(-t lam**alpha) at tau."""
    return inverse_laplace_talbot(lambda z: np.exp(-t * z ** alpha), tau, cfg)


def phi_kernel_talbot(beta, t, tau, cfg: TalbotConfig = TalbotConfig()) -> float:
    """phi_beta(t, tau) from its Bromwich integral in t: s^{beta-1} exp(-tau s^beta).

    Accurate while beta is at most about 0.6; beyond that exp(-tau s^beta)
    grows on the left part of the contour.
    """
    return inverse_laplace_talbot(lambda s: s ** (beta - 1.0) * np.exp(-tau * s ** beta), t, cfg)


def mainardi_talbot(beta, r, cfg: TalbotConfig = TalbotConfig()) -> float:
    """M_beta(r) = phi_beta(1, r) by numeric inversion."""
    return phi_kernel_talbot(beta, 1.0, r, cfg)


def k_density_talbot(op: OrderPair, r, cfg: TalbotConfig = TalbotConfig()) -> float:
    if op.is_delta:
        raise DiracCase("K_{1,1}(r) = delta(r - 1)")
    return _k_talbot(op, float(r), cfg)
