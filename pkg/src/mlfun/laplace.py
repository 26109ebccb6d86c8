"""Numerical check of the integral relation tying exponent alpha+1 to alpha:

    integral_0^inf e^(-t/z) F_{1,1}^{(alpha+1)}(t) dt = z F_{1,1}^{(alpha)}(z)

verified on the positive real axis, where the integrand is positive and
quadrature is clean.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DomainError, Params, integrate_adaptive
from .series import eval_series

__all__ = ["laplace_residual"]

# Truncation: stop where the integrand has fallen this far below its running
# maximum (e^-45 is comfortably below the double-precision relative floor).
_DROP = 45.0


def laplace_residual(alpha: float, z: float, tol: float = 1e-9) -> float:
    """Relative residual of the integral relation at real z > 0."""
    if not (isinstance(z, (int, float)) and math.isfinite(z) and z > 0.0):
        raise DomainError("laplace_residual: z must be a positive real")
    if not (alpha > 0.0):
        raise DomainError("laplace_residual: alpha must be positive")
    z = float(z)
    p_hi = Params(1.0, 1.0, alpha + 1.0)
    p_lo = Params(1.0, 1.0, alpha)

    def log_int(t: float) -> float:
        # integrand is real positive: e^{-t/z} F^{(alpha+1)}(t)
        return -t / z + eval_series(p_hi, t, tol).value.abs_log()

    # doubling search for the cutoff T; the exponential damping always wins
    # over the subexponential growth of F, so T exists
    running_max = log_int(0.0)
    t = max(z, 1.0)
    while True:
        v = log_int(t)
        running_max = max(running_max, v)
        if v < running_max - _DROP:
            break
        t *= 2.0
    shift = running_max

    def integrand(ts: np.ndarray) -> np.ndarray:
        return np.asarray([math.exp(log_int(float(s)) - shift)
                           for s in np.atleast_1d(ts)], dtype=complex)

    res = integrate_adaptive(integrand, 0.0, t, tol)
    lhs_log = math.log(abs(res.value)) + shift
    rhs_log = math.log(z) + eval_series(p_lo, z, tol).value.abs_log()
    return abs(math.expm1(lhs_log - rhs_log))
