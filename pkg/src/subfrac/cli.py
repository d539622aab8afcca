"""Command-line front end.

    subfrac eval psi --alpha 0.5 --beta 0.5 --t 1 --tau-grid 0.1:10:50:log
    subfrac solve spectral --alpha 0.5 --beta 0.5 --t 1 --modes 8
    subfrac verify all-checks

Any numeric parameter may be replaced by a ``--<name>-grid start:stop:count:spacing``
range; at most one grid per call.  Output is CSV on stdout with a
``# columns:`` header.  Exit codes: 0 success, 2 usage error, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from . import checks
from .errors import SubfracError, UsageError
from .green import GreenMethod, GreenQuery, green_function
from .kernels import OrderPair, Rep, k_density, levy_density, mainardi, psi_kernel
from .numerics import QuadConfig, TalbotConfig
from .solvers import AdvectionProblem, SpectralProblem, dirichlet_interval_problem, solve_advection, solve_spectral
from .special import mittag_leffler_neg

TOL_ENV = "SUBFRAC_TOL"
FLOAT_FMT = "%.11e"


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    count: int
    spacing: str

    def __post_init__(self):
        if self.spacing not in ("linear", "log"):
            raise UsageError(f"grid spacing must be linear or log, got {self.spacing!r}")
        if not self.start < self.stop:
            raise UsageError("grid needs start < stop")
        if self.count < 2:
            raise UsageError("grid needs count >= 2")
        if self.spacing == "log" and not self.start > 0:
            raise UsageError("log grid needs start > 0")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


def parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError(f"grid {text!r} is not start:stop:count:spacing")
    try:
        return GridSpec(float(parts[0]), float(parts[1]), int(parts[2]), parts[3])
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None


# -- targets ----------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    params: Tuple[str, ...]         # numeric parameters, first is the default x-column
    required: Tuple[str, ...]
    defaults: Dict[str, float]
    func: Callable[..., float]
    value_name: str


def _orders(p) -> OrderPair:
    return OrderPair(p["alpha"], p["beta"])


def _eval_ml(p, ctx):
    return mittag_leffler_neg(p["alpha"], p["beta"], p["x"])


def _eval_levy(p, ctx):
    return levy_density(p["alpha"], p["r"])


def _eval_mainardi(p, ctx):
    return mainardi(p["beta"], p["r"])


def _eval_k(p, ctx):
    return k_density(_orders(p), p["r"], rep=ctx.rep, q=ctx.quad, talbot=ctx.talbot)


def _eval_psi(p, ctx):
    return psi_kernel(_orders(p), p["t"], p["tau"], q=ctx.quad, rep=ctx.rep)


def _eval_green(p, ctx):
    n = p["n"]
    if n != int(n):
        raise UsageError("--n must be an integer")
    return green_function(_orders(p), GreenQuery(int(n), p["rho"], p["t"]), ctx.method, ctx.quad)


EVAL_TARGETS: Dict[str, Target] = {
    "ml": Target(("x", "alpha", "beta"), ("alpha", "x"), {"beta": 1.0}, _eval_ml, "ml"),
    "levy": Target(("r", "alpha"), ("alpha", "r"), {}, _eval_levy, "levy"),
    "mainardi": Target(("r", "beta"), ("beta", "r"), {}, _eval_mainardi, "mainardi"),
    "k": Target(("r", "alpha", "beta"), ("alpha", "beta", "r"), {}, _eval_k, "k"),
    "psi": Target(("tau", "t", "alpha", "beta"), ("alpha", "beta", "t", "tau"), {}, _eval_psi, "psi"),
    "green": Target(("rho", "t", "n", "alpha", "beta"), ("alpha", "beta", "n", "t", "rho"), {},
                    _eval_green, "green"),
}

NUMERIC_FLAGS = ("alpha", "beta", "t", "tau", "rho", "n", "x", "r", "lambda")


@dataclass
class Context:
    quad: QuadConfig
    talbot: TalbotConfig
    rep: Optional[Rep]
    method: Optional[GreenMethod]


# -- parsing ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser):
    for name in NUMERIC_FLAGS:
        dest = name.replace("-", "_")
        p.add_argument(f"--{name}", dest=dest, type=float, default=None)
        p.add_argument(f"--{name}-grid", dest=f"{dest}_grid", default=None,
                       metavar="START:STOP:COUNT:SPACING")
    p.add_argument("--rep", choices=[r.value for r in Rep], default=None)
    p.add_argument("--method", choices=[m.value for m in GreenMethod], default=None)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--nodes", type=int, default=None, help="Talbot node count")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subfrac", description="Subordination kernels, Green functions and solvers.")
    verbs = parser.add_subparsers(dest="verb", parser_class=_Parser)
    verbs.required = True
    ev = verbs.add_parser("eval", help="evaluate a function on a grid")
    ev.add_argument("target", choices=sorted(EVAL_TARGETS))
    _add_common(ev)
    so = verbs.add_parser("solve", help="run a solver")
    so.add_argument("target", choices=["spectral", "advection"])
    _add_common(so)
    so.add_argument("--modes", type=int, default=8, help="Dirichlet modes on (0, pi)")
    so.add_argument("--profile", choices=["one", "exp", "cos"], default="one",
                    help="initial profile for advection")
    ve = verbs.add_parser("verify", help="run verification suites")
    ve.add_argument("target", nargs="+", help="all-checks or suite ids " + ",".join(checks.SUITES))
    return parser


def _default_rel_tol() -> float:
    env = os.environ.get(TOL_ENV)
    if env is None:
        return QuadConfig().rel_tol
    try:
        val = float(env)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={env!r} is not a number") from None
    if not val > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return val


def _context(ns) -> Context:
    rel = ns.rel_tol if ns.rel_tol is not None else _default_rel_tol()
    if not rel > 0:
        raise UsageError("--rel-tol must be positive")
    try:
        quad = QuadConfig(rel_tol=rel)
        talbot = TalbotConfig() if ns.nodes is None else TalbotConfig(num_nodes=ns.nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = Rep(ns.rep) if ns.rep else None
    method = GreenMethod(ns.method) if ns.method else None
    return Context(quad, talbot, rep, method)


def _collect(ns, names: Sequence[str], required: Sequence[str], defaults: Dict[str, float]):
    """Scalars per name and at most one (name, grid values)."""
    scalars: Dict[str, float] = {}
    grid: Optional[Tuple[str, np.ndarray]] = None
    for name in NUMERIC_FLAGS:
        val = getattr(ns, name)
        g = getattr(ns, f"{name}_grid")
        if (val is not None or g is not None) and name not in names:
            raise UsageError(f"--{name} does not apply to {ns.target}")
        if val is not None and g is not None:
            raise UsageError(f"give --{name} or --{name}-grid, not both")
        if g is not None:
            if grid is not None:
                raise UsageError("at most one grid per call")
            grid = (name, parse_grid(g).values())
        elif val is not None:
            scalars[name] = val
    for name, val in defaults.items():
        scalars.setdefault(name, val)
    for name in required:
        if name not in scalars and (grid is None or grid[0] != name):
            raise UsageError(f"--{name} (or --{name}-grid) is required for {ns.target}")
    return scalars, grid


def _write_csv(out: TextIO, columns: Sequence[str], rows):
    out.write("# columns: " + ",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(FLOAT_FMT % v for v in row) + "\n")


# -- verbs ------------------------------------------------------------------

def _run_eval(ns, out: TextIO):
    target = EVAL_TARGETS[ns.target]
    ctx = _context(ns)
    scalars, grid = _collect(ns, target.params, target.required, target.defaults)
    if grid is None:
        xname = target.params[0]
        xs = [scalars[xname]]
    else:
        xname, xs = grid
    rows = []
    for x in xs:
        p = dict(scalars)
        p[xname] = float(x)
        rows.append((float(x), float(target.func(p, ctx))))
    _write_csv(out, (xname, target.value_name), rows)


def _run_spectral(ns, out: TextIO):
    ctx = _context(ns)
    scalars, grid = _collect(ns, ("t", "alpha", "beta", "lambda"), ("alpha", "beta", "t"), {})
    op = _orders(scalars) if "alpha" in scalars and "beta" in scalars else None
    if op is None:
        raise UsageError("spectral needs scalar --alpha and --beta")
    if grid is not None and grid[0] == "lambda":
        prob = SpectralProblem(tuple(grid[1].tolist()), (1.0,) * len(grid[1]))
    elif "lambda" in scalars:
        prob = SpectralProblem((scalars["lambda"],), (1.0,))
    else:
        if ns.modes < 1:
            raise UsageError("--modes must be at least 1")
        prob = dirichlet_interval_problem(ns.modes, q=ctx.quad)
    times = grid[1] if grid is not None and grid[0] == "t" else [scalars["t"]]
    rows = []
    for t in times:
        amp = solve_spectral(prob, op, float(t))
        for j, (lam, a) in enumerate(zip(prob.eigenvalues, amp), start=1):
            rows.append((float(t), float(j), lam, float(a)))
    _write_csv(out, ("t", "j", "lambda", "amplitude"), rows)


_PROFILES: Dict[str, Callable] = {
    "one": lambda y: np.ones_like(y),
    "exp": lambda y: np.exp(-y),
    "cos": np.cos,
}


def _run_advection(ns, out: TextIO):
    ctx = _context(ns)
    scalars, grid = _collect(ns, ("x", "t", "alpha", "beta"), ("alpha", "beta", "t", "x"), {})
    if grid is not None and grid[0] != "x":
        raise UsageError("advection accepts only --x-grid")
    xs = grid[1] if grid is not None else np.array([scalars["x"]])
    prob = AdvectionProblem(_PROFILES[ns.profile], _orders(scalars), tuple(xs.tolist()))
    u = solve_advection(prob, scalars["t"], ctx.quad)
    _write_csv(out, ("x", "u"), zip(prob.eval_grid, u.tolist()))


def _run_verify(ns, out: TextIO) -> int:
    ids: List[str] = []
    for tok in ns.target:
        if tok == "all-checks":
            ids.extend(checks.SUITES)
        elif tok in checks.SUITES:
            ids.append(tok)
        else:
            raise UsageError(f"unknown check suite {tok!r}")
    ok = True
    for cid in dict.fromkeys(ids):
        for res in checks.SUITES[cid]():
            out.write(res.line() + "\n")
            ok &= res.passed
    return 0 if ok else 1


def run(argv: Sequence[str], out: TextIO = None, err: TextIO = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        try:
            ns = parser.parse_args(list(argv))
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        if ns.verb == "verify":
            return _run_verify(ns, out)
        if ns.verb == "eval":
            _run_eval(ns, out)
        elif ns.target == "spectral":
            _run_spectral(ns, out)
        else:
            _run_advection(ns, out)
        return 0
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (SubfracError, ArithmeticError) as exc:
        if isinstance(exc, ValueError):
            # bad orders, domain or method choice: the request itself is invalid
            err.write(f"usage error: {ns.verb} {ns.target}: {type(exc).__name__}: {exc}\n")
            return 2
        err.write(f"error: {ns.verb} {ns.target}: {type(exc).__name__}: {exc}\n")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
