"""Saddle-point asymptotics of F and its sector of validity.

The closed form, assembled entirely in the log domain:

    F(z) ~ (1/(a sqrt(alpha))) (2 pi)^((1-alpha)/2)
           z^((alpha - 2 b alpha + 1) / (2 a alpha)) exp(alpha z^(1/(a alpha)))

valid as z -> infinity inside a sector whose half-opening depends on the
product a*alpha in three cases.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .core import LN2PI, DomainError, Params, scaled_from_log
from .series import EvalResult, Method

__all__ = ["SectorCase", "SectorClassification", "classify_sector",
           "in_sector", "saddle_point", "eval_asymptotic"]


class SectorCase(enum.Enum):
    SMALL = "small"              # a*alpha < 2
    MIDDLE = "middle"            # 2 <= a*alpha < 4
    REAL_AXIS_ONLY = "real_axis_only"  # a*alpha >= 4


@dataclass(frozen=True)
class SectorClassification:
    max_arg: float        # radians, >= 0
    case_index: SectorCase


def classify_sector(params: Params, eps: float = 0.0) -> SectorClassification:
    """Maximum admissible |arg z| for the asymptotic formula, minus eps."""
    if eps < 0.0:
        raise DomainError("classify_sector: eps must be >= 0")
    p = params.a * params.alpha
    if p < 2.0:
        raw = 0.5 * p * math.pi - eps
        case = SectorCase.SMALL
    elif p < 4.0:
        raw = (2.0 - 0.5 * p) * math.pi - eps
        case = SectorCase.MIDDLE
    else:
        raw = 0.0
        case = SectorCase.REAL_AXIS_ONLY
    return SectorClassification(max(raw, 0.0), case)


def in_sector(params: Params, z: complex, eps: float = 0.0) -> bool:
    z = complex(z)
    if z == 0:
        raise DomainError("in_sector: z must be nonzero")
    return abs(cmath.phase(z)) <= classify_sector(params, eps).max_arg


def saddle_point(params: Params, z: complex) -> complex:
    """Approximate saddle t0 = z^(1/(a alpha)) / a + (1 - 2b)/(2a)."""
    z = complex(z)
    if z == 0:
        raise DomainError("saddle_point: z must be nonzero")
    a, b, alpha = params.a, params.b, params.alpha
    return cmath.exp(cmath.log(z) / (a * alpha)) / a + (1.0 - 2.0 * b) / (2.0 * a)


def eval_asymptotic(params: Params, z: complex) -> EvalResult:
    """Closed-form leading asymptotics; sector membership is NOT enforced.

    Callers probing beyond the proven sector get the formula's value
    regardless; use in_sector for enforcement.  err_estimate is the scale
    of the next order, |z|**(-1/(a alpha)).
    """
    z = complex(z)
    if z == 0:
        raise DomainError("eval_asymptotic: z must be nonzero")
    a, b, alpha = params.a, params.b, params.alpha
    lz = cmath.log(z)
    logv = (-math.log(a) - 0.5 * math.log(alpha)
            + 0.5 * (1.0 - alpha) * LN2PI
            + ((alpha - 2.0 * b * alpha + 1.0) / (2.0 * a * alpha)) * lz
            + alpha * cmath.exp(lz / (a * alpha)))
    err = math.exp(-math.log(abs(z)) / (a * alpha))
    return EvalResult(scaled_from_log(logv), Method.ASYMPTOTIC, 1, err)
