"""Verification suites: every closed form against an independent route.

Each suite returns a list of :class:`CheckResult`.  Suites are registered by
id (``ac01`` ... ``ac13``) and run by ``subfrac verify``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from . import green as gr
from . import kernels as kn
from . import solvers as sv
from . import special as sp
from .numerics import QuadConfig, integrate_semi_infinite

_TWO_PI_INV = 1.0 / (2.0 * math.pi)


@dataclass(frozen=True)
class CheckResult:
    id: str
    observed: float
    expected: float
    tol: float
    passed: bool

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (f"{tag} {self.id} observed={self.observed:.12e} "
                f"expected={self.expected:.12e} tol={self.tol:.3e}")


def rel_check(cid, observed, expected, tol) -> CheckResult:
    observed = float(observed)
    expected = float(expected)
    ok = math.isfinite(observed) and abs(observed - expected) <= tol * abs(expected)
    return CheckResult(cid, observed, expected, tol, ok)


def abs_check(cid, observed, expected, tol) -> CheckResult:
    observed = float(observed)
    expected = float(expected)
    ok = math.isfinite(observed) and abs(observed - expected) <= tol
    return CheckResult(cid, observed, expected, tol, ok)


def flag_check(cid, ok: bool) -> CheckResult:
    return CheckResult(cid, 1.0 if ok else 0.0, 1.0, 0.0, bool(ok))


def _vec(fn):
    return np.vectorize(fn, otypes=[float])


# -- kernels ----------------------------------------------------------------

def check_closed_form_kernels() -> List[CheckResult]:
    half = kn.OrderPair(0.5, 0.5)
    q = QuadConfig(rel_tol=1e-10, abs_tol=1e-14)
    loose = QuadConfig(rel_tol=1e-8, abs_tol=1e-11)
    out = []

    psi = kn.psi_kernel(half, 1.0, 1.0)
    out.append(rel_check("ac01.psi_half.closed", psi, math.sqrt(1.0) / (math.pi * 1.0 * 2.0), 1e-14))
    out.append(rel_check("ac01.psi_half.compose",
                         kn.compose_kernels(lambda t, s: kn.phi_kernel(0.5, t, s),
                                            lambda s, tau: kn.f_kernel(0.5, s, tau), 1.0, 1.0, q),
                         psi, 1e-5))
    out.append(rel_check("ac01.psi_half.talbot", kn.k_density_talbot(half, 1.0), psi, 1e-5))

    t, tau = 1.0, 1.0
    rev = 2.0 * t / (math.pi * (t * t + tau * tau))
    out.append(rel_check("ac01.reversed.closed", rev, 1.0 / math.pi, 1e-14))
    out.append(rel_check("ac01.reversed.compose",
                         kn.compose_kernels(lambda t, s: kn.f_kernel(0.5, t, s),
                                            lambda s, tau: kn.phi_kernel(0.5, s, tau), 1.0, 1.0, q),
                         rev, 1e-5))
    f_t = _vec(lambda s: kn.f_kernel_talbot(0.5, 1.0, s) if s > 0 else 0.0)
    phi_t = _vec(lambda s: kn.phi_kernel_talbot(0.5, s, 1.0))
    out.append(rel_check("ac01.reversed.talbot",
                         integrate_semi_infinite(lambda s: f_t(s) * phi_t(s), loose).value, rev, 1e-5))

    k = kn.k_density(half, 1.0)
    out.append(rel_check("ac01.k_half.closed", k, _TWO_PI_INV, 1e-14))
    out.append(rel_check("ac01.k_half.rep1", kn.k_density(half, 1.0, rep=kn.Rep.REP1_LEVY_MAINARDI), k, 1e-5))
    out.append(rel_check("ac01.k_half.talbot", kn.k_density(half, 1.0, rep=kn.Rep.TALBOT), k, 1e-5))
    return out


PDF_PAIRS = ((0.3, 0.3), (0.5, 0.5), (0.5, 0.8), (0.7, 1.0), (1.0, 0.5))


def _psi_integral(op, t, weight=None, q=QuadConfig(rel_tol=1e-9, abs_tol=1e-13)) -> float:
    qs = q.with_singularity(kn.psi_singular_exponent(op))
    if weight is None:
        return integrate_semi_infinite(lambda tau: kn.psi_kernel(op, t, tau), qs).value
    return integrate_semi_infinite(lambda tau: kn.psi_kernel(op, t, tau) * weight(tau), qs).value


def check_pdf_property() -> List[CheckResult]:
    out = []
    grid = np.geomspace(1e-3, 1e3, 25)
    for a, b in PDF_PAIRS:
        op = kn.OrderPair(a, b)
        for t in (0.5, 1.0, 2.0):
            tag = f"ac02.a{a:g}_b{b:g}_t{t:g}"
            out.append(flag_check(tag + ".nonneg", bool(np.all(kn.psi_kernel(op, t, grid) >= 0))))
            out.append(abs_check(tag + ".mass", _psi_integral(op, t), 1.0, 1e-6))
    return out


SUBSCALAR_PAIRS = ((0.5, 0.5), (0.5, 0.8), (0.7, 1.0), (1.0, 0.5))


def check_scalar_subordination() -> List[CheckResult]:
    out = []
    for a, b in SUBSCALAR_PAIRS:
        op = kn.OrderPair(a, b)
        for lam in (0.5, 1.0, 2.0):
            for t in (0.5, 1.0):
                obs = _psi_integral(op, t, weight=lambda tau, lam=lam: np.exp(-lam * tau))
                exp = sp.mittag_leffler_neg(b, 1.0, lam ** a * t ** b)
                out.append(abs_check(f"ac03.a{a:g}_b{b:g}_lam{lam:g}_t{t:g}", obs, exp, 1e-6))
    return out


def check_representations() -> List[CheckResult]:
    op = kn.OrderPair(0.4, 0.8)
    reps = (kn.Rep.REP1_LEVY_MAINARDI, kn.Rep.REP2_LEVY_LEVY, kn.Rep.REP3_MAINARDI_MAINARDI,
            kn.Rep.REP4_HALF_COMPOSITION, kn.Rep.TALBOT)
    out = []
    for r in (0.25, 1.0, 4.0):
        vals = {rep: kn.k_density(op, r, rep=rep) for rep in reps}
        ref = vals[kn.Rep.TALBOT]
        for rep in reps[:-1]:
            out.append(rel_check(f"ac04.r{r:g}.{rep.value}_vs_talbot", vals[rep], ref, 1e-5))
        v = np.array(list(vals.values()))
        spread = (v.max() - v.min()) / abs(ref)
        out.append(abs_check(f"ac04.r{r:g}.pairwise_spread", spread, 0.0, 1e-5))
    return out


def check_semigroup() -> List[CheckResult]:
    q = QuadConfig(rel_tol=1e-10, abs_tol=1e-14)
    ff = kn.compose_kernels(lambda t, s: kn.f_kernel(0.5, t, s),
                            lambda s, tau: kn.f_kernel(0.5, s, tau), 1.0, 1.0, q)
    pp = kn.compose_kernels(lambda t, s: kn.phi_kernel(0.5, t, s),
                            lambda s, tau: kn.phi_kernel(0.5, s, tau), 1.0, 1.0, q)
    return [
        rel_check("ac05.levy_half_half", ff, kn.f_kernel_talbot(0.25, 1.0, 1.0), 1e-5),
        rel_check("ac05.mainardi_half_half", pp, kn.phi_kernel_talbot(0.25, 1.0, 1.0), 1e-5),
    ]


def check_small_r() -> List[CheckResult]:
    out = []
    for a, b in ((0.5, 0.5), (0.4, 0.8)):
        op = kn.OrderPair(a, b)
        for r in (1e-4, 1e-6):
            ratio = kn.k_density(op, r) / kn.k_small_r_limit(op, r)
            out.append(abs_check(f"ac06.a{a:g}_b{b:g}.r{r:g}", ratio, 1.0, 0.02))
    return out


# -- green ------------------------------------------------------------------

def check_green_closed_forms() -> List[CheckResult]:
    half = kn.OrderPair(0.5, 0.5)
    M = gr.GreenMethod
    cases = ((1, M.CLOSED_FORM_1D_HALF), (1, M.CLOSED_FORM_HALF_HALF), (2, M.CLOSED_FORM_2D),
             (2, M.CLOSED_FORM_HALF_HALF), (3, M.CLOSED_FORM_HALF_HALF), (3, M.CLOSED_FORM_3D_HALF))
    out = []
    t = 1.0
    for z in (0.25, 1.0, 4.0):
        rho = 2.0 * math.sqrt(z * t)
        for n, m in cases:
            qy = gr.GreenQuery(n, rho, t)
            out.append(rel_check(f"ac07.z{z:g}.n{n}.{m.value}",
                                 gr.green_function(half, qy, m),
                                 gr.green_function(half, qy, M.SUBORDINATION), 1e-5))
        qy = gr.GreenQuery(2, rho, t)
        out.append(rel_check(f"ac07.z{z:g}.tricomi_vs_2d",
                             gr.green_function(half, qy, M.CLOSED_FORM_HALF_HALF),
                             gr.green_function(half, qy, M.CLOSED_FORM_2D), 1e-8))
    return out


def check_green_asymptotics() -> List[CheckResult]:
    t = 1.0
    out = []
    x = 2.0 * math.sqrt(100.0 * t)
    _, large = gr.green_1d_half_asymptotics(x, t)
    out.append(abs_check("ac08.large_ratio", gr.green_1d_half(gr.GreenQuery(1, x, t)) / large, 1.0, 0.02))
    x = 2.0 * math.sqrt(1e-6 * t)
    small, _ = gr.green_1d_half_asymptotics(x, t)
    out.append(abs_check("ac08.small_ratio", gr.green_1d_half(gr.GreenQuery(1, x, t)) / small, 1.0, 0.05))
    for x in np.geomspace(0.01, 100.0, 10):
        lo, hi = gr.green_1d_half_bracket(x, t)
        g = gr.green_1d_half(gr.GreenQuery(1, float(x), t))
        out.append(flag_check(f"ac08.bracket.x{x:.3g}", lo < g < hi))
    return out


def check_origin() -> List[CheckResult]:
    out = []
    for n, a, diverges in ((2, 0.6, True), (1, 0.4, True), (1, 0.8, False)):
        probe = gr.probe_origin(kn.OrderPair(a, a), n, 1.0)
        out.append(flag_check(f"ac09.n{n}_a{a:g}.{'diverges' if diverges else 'converges'}",
                              probe.diverges == diverges))
    return out


def check_neutral() -> List[CheckResult]:
    out = []
    a = 0.8
    op = kn.OrderPair(a / 2.0, a)
    for x in (0.5, 1.0, 2.0):
        for t in (0.5, 2.0):
            qy = gr.GreenQuery(1, x, t)
            out.append(rel_check(f"ac10.x{x:g}_t{t:g}", gr.green_neutral(a, x, t),
                                 gr.green_poisson_subordination(op, qy), 1e-4))
    for x in (0.5, 1.0, 2.0):
        qy = gr.GreenQuery(1, x, 1.0)
        out.append(rel_check(f"ac10.poisson_limit.x{x:g}", gr.green_neutral(1.0, x, 1.0),
                             gr.poisson_kernel(qy), 1e-15))
    return out


# -- solvers ----------------------------------------------------------------

def check_advection() -> List[CheckResult]:
    t = 1.0
    grid = np.linspace(0.013, 4.0, 100)
    v = np.cos
    u = sv.solve_advection(sv.AdvectionProblem(v, kn.OrderPair(1.0, 1.0), tuple(grid)), t)
    exact = np.where(grid > t, np.cos(grid - t), 0.0)
    out = [abs_check("ac11.shift.max_abs_diff", np.max(np.abs(u - exact)), 0.0, 0.0)]
    u = sv.solve_advection(sv.AdvectionProblem(lambda y: np.ones_like(y), kn.OrderPair(0.5, 0.5),
                                               tuple(grid)), t)
    out.append(abs_check("ac11.half_half.max_abs_diff",
                         np.max(np.abs(u - sv.advection_half_half_constant(grid, t))), 0.0, 1e-6))
    return out


SPECTRAL_PAIRS = ((0.3, 0.3), (0.5, 0.5), (0.5, 0.8), (0.7, 1.0), (1.0, 0.5), (0.4, 0.9))


def check_spectral() -> List[CheckResult]:
    prob = sv.SpectralProblem(tuple(float(j * j) for j in range(1, 9)), (1.0,) * 8)
    lam = np.array(prob.eigenvalues)
    out = []
    worst = 0.0
    for t in (0.1, 1.0, 3.0):
        a = sv.solve_spectral(prob, kn.OrderPair(1.0, 1.0), t)
        ref = np.exp(-lam * t)
        worst = max(worst, float(np.max(np.abs(a / ref - 1.0))))
    out.append(abs_check("ac12.classical.max_rel_diff", worst, 0.0, 4 * np.finfo(float).eps))
    # the range stops before exp(-lam^a t) underflows to 0 for the top mode
    times = np.geomspace(1e-3, 10.0, 30)
    for a_, b_ in SPECTRAL_PAIRS:
        op = kn.OrderPair(a_, b_)
        amp = np.array([sv.solve_spectral(prob, op, t) for t in times])
        ok = bool(np.all(amp > 0) and np.all(amp <= 1) and np.all(np.diff(amp, axis=0) < 0))
        out.append(flag_check(f"ac12.monotone.a{a_:g}_b{b_:g}", ok))
    return out


# -- special ----------------------------------------------------------------

def check_special_identities() -> List[CheckResult]:
    out = []
    for a in (0.5, 1.0, 1.5):
        for z in (0.25, 1.0, 4.0):
            u = sp.tricomi_u(a, a, z)
            out.append(rel_check(f"ac13.relation.a{a:g}_z{z:g}", u,
                                 math.exp(z) * sp.gamma_upper(1.0 - a, z), 1e-8))
    for a in (-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5):
        for z in (0.25, 1.0, 4.0):
            g1 = sp.gamma_upper(a + 1.0, z)
            res = g1 - z ** a * math.exp(-z) - a * sp.gamma_upper(a, z)
            out.append(abs_check(f"ac13.rec.a{a:g}_z{z:g}", res / g1, 0.0, 1e-10))
    zs = np.geomspace(1e-4, 1e2, 25)
    ok = True
    for z in zs:
        e = sp.exp_integral_e1(z)
        ok &= 0.5 * math.exp(-z) * math.log1p(2.0 / z) < e < math.exp(-z) * math.log1p(1.0 / z)
    out.append(flag_check("ac13.e1_bracket", ok))
    q = QuadConfig(rel_tol=1e-10, abs_tol=1e-14)
    for a, b in ((0.5, 0.5), (0.5, 1.0), (0.7, 0.9)):
        for s in (0.5, 1.0, 2.0):
            f = _vec(lambda t, a=a, b=b: t ** (b - 1.0) * sp.mittag_leffler_neg(a, b, t ** a))
            obs = integrate_semi_infinite(lambda t: np.exp(-s * t) * f(t),
                                          q.with_singularity(min(0.0, b - 1.0))).value
            out.append(rel_check(f"ac13.pairs.a{a:g}_b{b:g}_s{s:g}", obs, s ** (a - b) / (s ** a + 1.0), 1e-6))
    for t in (0.25, 1.0, 4.0):
        out.append(rel_check(f"ac13.mlt1.t{t:g}", sp.tricomi_u(0.5, 0.5, t) / math.sqrt(math.pi),
                             sp.mittag_leffler_neg(0.5, 1.0, math.sqrt(t)), 1e-8))
        out.append(rel_check(f"ac13.mlt2.t{t:g}", sp.tricomi_u(1.5, 1.5, t) / (2.0 * math.sqrt(math.pi)),
                             sp.mittag_leffler_neg(0.5, 0.5, math.sqrt(t)) / math.sqrt(t), 1e-8))
    return out


SUITES: Dict[str, Callable[[], List[CheckResult]]] = {
    "ac01": check_closed_form_kernels,
    "ac02": check_pdf_property,
    "ac03": check_scalar_subordination,
    "ac04": check_representations,
    "ac05": check_semigroup,
    "ac06": check_small_r,
    "ac07": check_green_closed_forms,
    "ac08": check_green_asymptotics,
    "ac09": check_origin,
    "ac10": check_neutral,
    "ac11": check_advection,
    "ac12": check_spectral,
    "ac13": check_special_identities,
}

SUITE_TITLES = {
    "ac01": "closed-form kernel values",
    "ac02": "psi is a probability density in tau",
    "ac03": "scalar subordination identity",
    "ac04": "K representations agree",
    "ac05": "semigroup composition laws",
    "ac06": "small-r asymptotic of K",
    "ac07": "Green closed forms vs subordination",
    "ac08": "asymptotics and bracket of G_{1/2,1/2,1}",
    "ac09": "finiteness at the origin",
    "ac10": "neutral diffusion",
    "ac11": "advection solver",
    "ac12": "spectral solver",
    "ac13": "special-function identities",
}


def run_suites(ids=None) -> List[CheckResult]:
    ids = list(SUITES) if ids is None else list(ids)
    out: List[CheckResult] = []
    for cid in ids:
        out.extend(SUITES[cid]())
    return out
