"""Mittag-Leffler, incomplete gamma, exponential integral and Tricomi U.

Only the real, non-positive Mittag-Leffler argument is public:
``mittag_leffler_neg(alpha, beta, x)`` returns ``E_{alpha,beta}(-x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import rgamma, zeta

from .errors import DomainError, InvalidOrder, NoConvergence, QuadratureFailure
from .numerics import QuadConfig, integrate_finite, integrate_semi_infinite

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class SeriesConfig:
    """Series tolerances and the Mittag-Leffler regime switch points."""

    rel_tol: float = 1e-15
    max_terms: int = 500
    series_max_x: float = 1.0
    asymptotic_min_x: float = 1e4
    asymptotic_terms: int = 10

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not 0 < self.series_max_x <= self.asymptotic_min_x:
            raise ValueError("need 0 < series_max_x <= asymptotic_min_x")


@dataclass(frozen=True)
class MLArg:
    """Arguments of E_{alpha,beta}(-x)."""

    alpha: float
    beta: float
    x: float

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise InvalidOrder(f"alpha={self.alpha} not in (0, 1]")
        if not 0 < self.beta <= 2:
            raise InvalidOrder(f"beta={self.beta} not in (0, 2]")
        if not self.x >= 0:
            raise DomainError(f"x={self.x} must be >= 0")


def _kahan_series(terms, rel_tol: float, max_terms: int) -> float:
    total = 0.0
    comp = 0.0
    quiet = 0
    for k, term in enumerate(terms):
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= rel_tol * abs(total):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
        if k + 1 >= max_terms:
            break
    raise NoConvergence(f"series not converged in {max_terms} terms")


def _ml_series(alpha, beta, z, cfg):
    def terms():
        power = 1.0
        k = 0
        while True:
            yield power * rgamma(alpha * k + beta)
            power *= z
            k += 1

    return _kahan_series(terms(), cfg.rel_tol, cfg.max_terms)


def _ml_asymptotic(alpha, beta, x, n_terms):
    # algebraic part only; the exponential part vanishes on the negative axis
    z = -x
    return -math.fsum(z ** (-k) * rgamma(beta - alpha * k) for k in range(1, n_terms))


def _spectral_weight(alpha, beta, r, lam):
    """P_{alpha,beta}(r; lam) without the sign restriction."""
    ra = r ** alpha
    num = ra * math.sin(beta * math.pi) + lam * math.sin((beta - alpha) * math.pi)
    den = (ra + lam * math.cos(alpha * math.pi)) ** 2 + (lam * math.sin(alpha * math.pi)) ** 2
    return num / den * r ** (alpha - beta) / math.pi


def ml_spectral_density(alpha, beta, r, lam):
    """Spectral density P_{alpha,beta}(r; lambda) >= 0 of t^{beta-1} E_{alpha,beta}(-lambda t^alpha).

    Defined for ``0 < alpha <= beta <= 1`` except ``alpha = beta = 1``.
    Accepts array ``r``.
    """
    if not (0 < alpha <= beta <= 1) or (alpha == 1 and beta == 1):
        raise InvalidOrder(f"(alpha, beta)=({alpha}, {beta}) outside 0<alpha<=beta<=1")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0) or not lam > 0:
        raise DomainError("r and lambda must be positive")
    out = _spectral_weight(alpha, beta, r, lam)
    return float(out) if out.ndim == 0 else out


def _ml_spectral(alpha, beta, x, cfg):
    """E_{alpha,beta}(-x) = int_0^inf e^{-r} P(r; x) dr, valid for alpha < 1, beta < 1 + alpha."""
    in_triangle = alpha <= beta <= 1
    q = QuadConfig(rel_tol=max(10 * cfg.rel_tol, 1e-13),
                   abs_tol=0.0 if in_triangle else 1e-3 * max(10 * cfg.rel_tol, 1e-13) / x,
                   singular_exponent=min(0.0, alpha - beta))

    def f(r):
        return np.exp(-r) * _spectral_weight(alpha, beta, r, x)

    cos_a = math.cos(alpha * math.pi)
    peak = (-x * cos_a) ** (1.0 / alpha) if cos_a < 0 else 0.0
    try:
        if 0.0 < peak < 700.0:
            head = integrate_finite(f, 0.0, peak, q).value
            tail = integrate_semi_infinite(lambda y: f(peak + y), q.with_singularity(0.0)).value
            return head + tail
        return integrate_semi_infinite(f, q).value
    except QuadratureFailure as exc:
        raise NoConvergence(f"spectral integral failed: {exc}") from exc


def _ml_alpha_one(beta, x, cfg):
    """E_{1,beta}(-x) = e^{-x}/Gamma(beta) [1 + (beta-1) sum_{k>=1} x^k / (k! (k+beta-1))]."""
    if beta == 1.0:
        return math.exp(-x)
    if x > 600.0:
        return _ml_asymptotic(1.0, beta, x, max(cfg.asymptotic_terms, 30))

    def terms():
        power = 1.0
        k = 1
        while True:
            power *= x / k
            yield power / (k + beta - 1.0)
            k += 1

    s = _kahan_series(terms(), cfg.rel_tol, max(cfg.max_terms, int(3 * x) + 100))
    return math.exp(-x) * rgamma(beta) * (1.0 + (beta - 1.0) * s)


def mittag_leffler_neg(alpha, beta, x, cfg: SeriesConfig = SeriesConfig()) -> float:
    """E_{alpha,beta}(-x) for 0 < alpha <= 1, 0 < beta <= 2, x >= 0.

    Taylor series for ``x <= cfg.series_max_x``, the spectral Laplace integral
    up to ``cfg.asymptotic_min_x``, the asymptotic expansion beyond.
    """
    arg = MLArg(float(alpha), float(beta), float(x))
    alpha, beta, x = arg.alpha, arg.beta, arg.x
    if alpha == 1.0:
        if x <= cfg.series_max_x and beta != 1.0:
            return _ml_series(alpha, beta, -x, cfg)
        return _ml_alpha_one(beta, x, cfg)
    if x <= cfg.series_max_x:
        return _ml_series(alpha, beta, -x, cfg)
    if x > cfg.asymptotic_min_x:
        return _ml_asymptotic(alpha, beta, x, cfg.asymptotic_terms)
    if beta >= 1.0 + alpha:
        # E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
        lower = mittag_leffler_neg(alpha, beta - alpha, x, cfg)
        return (lower - rgamma(beta - alpha)) / (-x)
    value = _ml_spectral(alpha, beta, x, cfg)
    if not math.isfinite(value):
        raise NoConvergence("non-finite Mittag-Leffler value")
    return value


def mittag_leffler_neg_array(alpha, beta, x, cfg: SeriesConfig = SeriesConfig()) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    flat = [mittag_leffler_neg(alpha, beta, xi, cfg) for xi in x.ravel()]
    return np.array(flat).reshape(x.shape)


# -- complex argument, used only by the inverse-Laplace oracles -------------

@lru_cache(maxsize=64)
def _ml_coefficients(alpha, beta, n_terms, dps):
    with mpmath.workdps(dps):
        return tuple(mpmath.rgamma(mpmath.mpf(alpha) * k + mpmath.mpf(beta))
                     for k in range(n_terms))


def _ml_complex_series(alpha, beta, z):
    r = abs(z)
    if r == 0.0:
        return complex(rgamma(beta))
    # size of the largest term and index where terms drop below 1e-20 of it
    k = np.arange(0, 4000)
    logt = k * math.log(r) - np.array([math.lgamma(alpha * kk + beta) for kk in k])
    peak = logt.max()
    beyond = np.nonzero((k > np.argmax(logt)) & (logt < peak - 50.0))[0]
    if beyond.size == 0:
        raise NoConvergence("complex Mittag-Leffler series too long")
    n_terms = int(beyond[0]) + 1
    dps = 20 + max(0, int(peak / math.log(10.0)))
    coef = _ml_coefficients(alpha, beta, n_terms, dps)
    with mpmath.workdps(dps):
        zz = mpmath.mpc(z)
        acc = mpmath.mpc(0)
        for c in reversed(coef):
            acc = acc * zz + c
        return complex(acc)


def _ml_complex_asymptotic(alpha, beta, z):
    total = 0.0j
    prev = math.inf
    for k in range(1, 200):
        term = -z ** (-k) * rgamma(beta - alpha * k)
        if abs(term) > prev and k > 2:
            break
        total += term
        prev = abs(term) if term != 0 else prev
        if abs(term) < 1e-17 * abs(total):
            break
    if abs(np.angle(z)) < alpha * math.pi:
        total += z ** ((1.0 - beta) / alpha) * np.exp(z ** (1.0 / alpha)) / alpha
    return total


def ml_complex(alpha, beta, z):
    """E_{alpha,beta}(z) for complex array ``z``, 0 < alpha <= 1.

    Extended-precision Taylor series while ``|z|**(1/alpha) <= 40``, the
    asymptotic expansion (with its exponential term) beyond.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    for idx, zi in np.ndenumerate(z):
        if alpha == 1.0 and beta == 1.0:
            out[idx] = np.exp(zi)
        elif abs(zi) ** (1.0 / alpha) <= 40.0:
            out[idx] = _ml_complex_series(alpha, beta, complex(zi))
        else:
            out[idx] = _ml_complex_asymptotic(alpha, beta, complex(zi))
    return out


# -- incomplete gamma, exponential integral, Tricomi U ----------------------

def exp_integral_e1(z) -> float:
    """E_1(z) for real z > 0: series up to z = 1, continued fraction beyond."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"E1 requires z > 0, got {z}")
    if z <= 1.0:
        def terms():
            term = 1.0
            k = 1
            while True:
                term *= -z / k
                yield -term / k
                k += 1
        return -EULER_GAMMA - math.log(z) + _kahan_series(terms(), 1e-17, 200)
    return _upper_gamma_cf(0.0, z)


def exp_integral_e1_scaled(z) -> float:
    """e^z E_1(z), finite for large z where e^z alone overflows."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"E1 requires z > 0, got {z}")
    if z <= 1.0:
        return math.exp(z) * exp_integral_e1(z)
    if z > 1e6:
        # truncation error below k!/z^{k+1} with k = 6
        w = -1.0 / z
        return math.fsum(math.factorial(k) * w ** k for k in range(6)) / z
    return _upper_gamma_cf_core(0.0, z)


def e1_asymptotic(z, n_terms: int = 10) -> float:
    """Truncated large-argument expansion e^{-z}/z sum_{k<n} k!/(-z)^k."""
    z = float(z)
    if not z > 0:
        raise DomainError(f"z must be positive, got {z}")
    return math.exp(-z) / z * math.fsum(math.factorial(k) / (-z) ** k for k in range(n_terms))


def _upper_gamma_cf(a, z):
    """Gamma(a, z) by the modified Lentz continued fraction, z > a + 1 region."""
    return math.exp(-z + a * math.log(z)) * _upper_gamma_cf_core(a, z)


def _upper_gamma_cf_core(a, z):
    tiny = 1e-300
    b = z + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise NoConvergence("incomplete gamma continued fraction")


def _lower_gamma_series(a, z):
    term = 1.0 / a
    total = term
    n = 0
    while abs(term) > 1e-17 * abs(total):
        n += 1
        term *= z / (a + n)
        total += term
        if n > 10_000:
            raise NoConvergence("incomplete gamma series")
    return total * math.exp(-z + a * math.log(z))


def _lgamma1p(s):
    # log Gamma(1 + s) for |s| <= 1/2 without forming 1 + s
    total = -EULER_GAMMA * s
    k = 2
    while True:
        term = float(zeta(k)) * (-s) ** k / k
        total += term
        if abs(term) <= 1e-17 * max(abs(total), 1e-300) or k > 200:
            return total
        k += 1


def _gamma_upper_small(s, z):
    """Gamma(s, z) for |s| <= 1/2, free of the 1/s cancellation."""
    if z >= 1.0:
        return _upper_gamma_cf(s, z)
    lz = math.log(z)
    # Gamma(s) - z^s / s, with the s -> 0 limit -EULER_GAMMA - log z
    if s == 0.0:
        head = -EULER_GAMMA - lz
    else:
        head = (math.expm1(_lgamma1p(s)) - math.expm1(s * lz)) / s
    zs = math.exp(s * lz)
    term = 1.0
    tail = 0.0
    k = 0
    while True:
        k += 1
        term *= -z / k
        inc = term / (s + k)
        tail += inc
        if abs(inc) <= 1e-17 * abs(tail) or k > 10_000:
            break
    return head - zs * tail


def gamma_upper(a, z) -> float:
    """Upper incomplete gamma Gamma(a, z) for real a and z > 0.

    For z >= 1 the continued fraction serves every ``a``.  Otherwise a <= 1/2
    is reduced to s = a + m in [-1/2, 1/2] and brought
    back by the downward recurrence Gamma(b, z) = (Gamma(b+1, z) - z^b e^{-z}) / b,
    which only divides by |b| >= 1/2.
    """
    a = float(a)
    z = float(z)
    if not z > 0:
        raise DomainError(f"Gamma(a, z) requires z > 0, got {z}")
    if a > 0.5:
        if z < a + 1.0:
            return math.gamma(a) - _lower_gamma_series(a, z)
        return _upper_gamma_cf(a, z)
    if z >= 1.0:
        return _upper_gamma_cf(a, z)
    m = max(0, round(-a))
    s = a + m
    if s == 0.0:
        value = exp_integral_e1(z)
    else:
        value = _gamma_upper_small(s, z)
    ez = math.exp(-z)
    for i in range(1, m + 1):
        b = s - i
        value = (value - z ** b * ez) / b
    return value


def tricomi_u(a, c, z, q: QuadConfig = QuadConfig()) -> float:
    """Tricomi U(a, c, z) from its Laplace integral, a > 0, z > 0."""
    a = float(a)
    c = float(c)
    z = float(z)
    if not a > 0:
        raise DomainError(f"U(a, c, z) requires a > 0, got a={a}")
    if not z > 0:
        raise DomainError(f"U(a, c, z) requires z > 0, got z={z}")

    def f(xi):
        return xi ** (a - 1.0) * (1.0 + xi) ** (c - a - 1.0) * np.exp(-z * xi)

    res = integrate_semi_infinite(f, q.with_singularity(min(0.0, a - 1.0)))
    return res.value * rgamma(a)
