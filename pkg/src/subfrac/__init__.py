"""Subordination kernels, Mittag-Leffler-type special functions, Green
functions and solvers for space-time fractional evolution equations."""

from __future__ import annotations

from .errors import (
    DiracCase,
    DomainError,
    InvalidOrder,
    MethodNotApplicable,
    NoConvergence,
    NotFinite,
    OracleFailure,
    QuadratureFailure,
    RepNotApplicable,
    SubfracError,
    UsageError,
)
from .green import GreenMethod, GreenQuery, green_function, heat_kernel, poisson_kernel
from .kernels import (
    KernelPoint,
    OrderPair,
    Rep,
    compose_kernels,
    f_kernel,
    k_density,
    levy_density,
    mainardi,
    phi_kernel,
    psi_kernel,
)
from .numerics import QuadConfig, QuadResult, TalbotConfig, forward_laplace, integrate_semi_infinite, inverse_laplace_talbot
from .solvers import AdvectionProblem, SpectralProblem, solve_advection, solve_spectral
from .special import (
    MLArg,
    SeriesConfig,
    exp_integral_e1,
    gamma_upper,
    mittag_leffler_neg,
    ml_spectral_density,
    tricomi_u,
)

__version__ = "0.1.0"
