"""Numerics for the power-generalized Mittag-Leffler function

    F(z) = sum_{n>=0} z^n / Gamma(a n + b)^alpha,    a, b, alpha > 0,

evaluated by three mutually checking routes: overflow-safe direct
summation, the exact Plana summation identity, and the saddle-point
asymptotic formula.  Also includes a numerical check of the Laplace-type
integral relation between exponents alpha and alpha+1, an order-of-growth
estimator, and an empirical recurrence probe for the sequence n!^alpha.
"""

from .asymptotics import (
    SectorCase,
    SectorClassification,
    classify_sector,
    eval_asymptotic,
    in_sector,
    saddle_point,
)
from .core import (
    DomainError,
    Params,
    QuadratureError,
    QuadResult,
    ScaledComplex,
    UsageError,
    accumulate_log_terms,
    digamma_real,
    integrate_adaptive,
    lgamma,
    lgamma_real,
    rel_diff,
    scaled_from_log,
)
from .holonomy import (
    ProbeOutcome,
    RecurrenceCandidate,
    RecurrenceHypothesis,
    log_seq,
    probe,
    probe_grid,
)
from .laplace import laplace_residual
from .plana import (
    PlanaComponents,
    SectorError,
    eval_plana,
    log_integrand,
    plana_components,
    plana_convergence_margin,
)
from .series import EvalResult, Method, eval_series, peak_index

__version__ = "0.1.0"

__all__ = [
    "DomainError", "UsageError", "QuadratureError", "SectorError",
    "Params", "ScaledComplex", "EvalResult", "Method", "QuadResult",
    "lgamma", "lgamma_real", "digamma_real", "scaled_from_log",
    "accumulate_log_terms", "integrate_adaptive", "rel_diff",
    "peak_index", "eval_series",
    "log_integrand", "plana_convergence_margin", "eval_plana",
    "plana_components", "PlanaComponents",
    "SectorCase", "SectorClassification", "classify_sector", "in_sector",
    "saddle_point", "eval_asymptotic",
    "laplace_residual",
    "RecurrenceHypothesis", "RecurrenceCandidate", "ProbeOutcome",
    "log_seq", "probe", "probe_grid",
]
