"""Exact evaluation of F through Plana summation.

The sum over n is converted into

    integral_0^inf f(t) dt  +  f(0)/2
        + i integral_0^inf (f(it) - f(-it)) / (e^(2 pi t) - 1) dt,

with f(t) = z^t / Gamma(a t + b)^alpha.  Valid whenever the vertical
integrals converge, i.e. |arg z| + a alpha pi / 2 < 2 pi.  Serves as an
independent oracle against the direct series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .asymptotics import saddle_point
from .core import (
    DomainError,
    Params,
    QuadResult,
    ScaledComplex,
    digamma_real,
    integrate_adaptive,
    lgamma,
    lgamma_real,
    scaled_from_log,
    stirling_tail,
)
from .series import EvalResult, Method

__all__ = ["SectorError", "log_integrand", "plana_convergence_margin",
           "eval_plana", "plana_components", "PlanaComponents"]

# Log-drop below the integrand peak at which the main integral is cut off.
_MAIN_DROP = 50.0
# Same cutoff for the vertical integrand (relative to its own maximum).
_VERT_DROP = 50.0
# Minimum convergence margin accepted by eval_plana, in radians.
_MARGIN_FLOOR = 0.1


class SectorError(DomainError):
    """z lies outside (or too close to the edge of) the Plana sector."""


def log_integrand(params: Params, z: complex, t: complex) -> complex:
    """log f(t) = t Log z - alpha lgamma(a t + b)."""
    z = complex(z)
    if z == 0:
        raise DomainError("log_integrand: z must be nonzero")
    t = complex(t)
    w = params.a * t + params.b
    if w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real):
        raise DomainError("log_integrand: a t + b hits a pole of Gamma")
    if t == 0:
        return -params.alpha * lgamma(w)
    return t * cmath.log(z) - params.alpha * lgamma(w)


def plana_convergence_margin(params: Params, z: complex) -> float:
    """2 pi - |arg z| - a alpha pi / 2; positive means the identity holds."""
    z = complex(z)
    if z == 0:
        raise DomainError("plana_convergence_margin: z must be nonzero")
    return (2.0 * math.pi - abs(cmath.phase(z))
            - 0.5 * params.a * params.alpha * math.pi)


@dataclass(frozen=True)
class PlanaComponents:
    main: ScaledComplex          # integral of f over [0, inf)
    half_f0: ScaledComplex       # f(0) / 2
    vertical: ScaledComplex      # i * integral of the e^{2 pi t} - 1 kernel
    value: ScaledComplex
    work: int
    err_estimate: float          # relative, for the combined value


def eval_plana(params: Params, z: complex, tol: float = 1e-10) -> EvalResult:
    comp = plana_components(params, z, tol)
    return EvalResult(comp.value, Method.PLANA, comp.work, comp.err_estimate)


def plana_components(params: Params, z: complex, tol: float = 1e-10) -> PlanaComponents:
    """The three Plana pieces, each integral by adaptive quadrature.

    The main integral is split at the real part of the saddle point and
    truncated where log f has dropped 50 nats below its peak; it is
    computed relative to the peak so values like e^(3e6) never touch a
    raw double.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("eval_plana: z must be nonzero")
    margin = plana_convergence_margin(params, z)
    if margin <= _MARGIN_FLOOR:
        raise SectorError(
            f"Plana sector margin {margin:.3f} <= {_MARGIN_FLOOR}; "
            "the vertical integrals do not converge safely")

    a, b, alpha = params.a, params.b, params.alpha
    lz = cmath.log(z)

    def logf(ts: np.ndarray) -> np.ndarray:
        return ts * lz - alpha * lgamma_real(a * ts + b)

    def re_logf(t: float) -> float:
        return float((logf(np.asarray([t]))).real[0])

    # --- main integral -----------------------------------------------------
    t0r = max(saddle_point(params, z).real, 0.0)
    peak_log = re_logf(t0r) if t0r > 0.0 else re_logf(0.0)
    t_lo, t_hi = _main_window(re_logf, t0r, peak_log)

    # The log-integrand spans magnitudes ~t0r*log|z|; evaluating it relative
    # to the saddle keeps the quadrature integrand accurate to ~1e-10 in the
    # log, and a single high-precision reference pins the absolute scale.
    peak_ref = _log_integrand_hp(params, z, t0r)

    def shifted(ts: np.ndarray) -> np.ndarray:
        return np.exp(_logf_rel(ts, t0r, params, lz))

    work = 0
    main_q = 0j
    main_abs_err = 0.0
    pieces = [(t_lo, t0r), (t0r, t_hi)] if t_lo < t0r < t_hi else [(t_lo, t_hi)]
    rel = max(tol / 3.0, 1e-11)
    for lo, hi in pieces:
        res = integrate_adaptive(shifted, lo, hi, rel, abs_floor=tol * 1e-3)
        main_q += res.value
        main_abs_err += res.err_estimate
        work += res.neval
    main = scaled_from_log(peak_ref) * main_q
    main_rel_err = main_abs_err / abs(main_q) if main_q != 0 else math.inf

    # --- f(0)/2 ------------------------------------------------------------
    half_f0 = scaled_from_log(-alpha * float(lgamma_real(b)) - math.log(2.0))

    # --- vertical integral -------------------------------------------------
    vertical, vres = _vertical_integral(params, z, lz, tol)
    work += vres.neval

    value = main + half_f0 + vertical
    err = _combined_rel_err(value, main, main_rel_err, vertical, vres)
    return PlanaComponents(main, half_f0, vertical, value, work, err)


def _log_integrand_hp(params: Params, z: complex, t: float) -> complex:
    """log f(t) at working precision 120 bits, imaginary part reduced mod 2 pi.

    Used once per evaluation to anchor the absolute scale (and global phase)
    of the main integral; double arithmetic would lose ~1e-8 here when
    t * log|z| reaches 1e7.
    """
    import mpmath as mp

    with mp.workprec(120):
        w = mp.mpf(t) * mp.log(mp.mpc(z)) \
            - mp.mpf(params.alpha) * mp.loggamma(mp.mpf(params.a) * t + params.b)
        im = mp.fmod(w.imag, 2 * mp.pi)
        return complex(float(w.real), float(im))


def _logf_rel(ts: np.ndarray, tref: float, params: Params,
              lz: complex) -> np.ndarray:
    """log f(t) - log f(tref), well-conditioned for large arguments."""
    a, b, alpha = params.a, params.b, params.alpha
    ts = np.asarray(ts, dtype=float)
    x1 = a * ts + b
    x0 = a * tref + b
    dt = ts - tref
    if x0 >= 13.0 and np.all(x1 >= 13.0):
        adt = a * dt
        dlg = ((x1 - 0.5) * np.log1p(adt / x0)
               + adt * (math.log(x0) - 1.0)
               + stirling_tail(x1) - stirling_tail(np.asarray([x0]))[0])
        return dt * lz - alpha * dlg
    ref = tref * lz - alpha * float(lgamma_real(x0))
    return ts * lz - alpha * lgamma_real(x1) - ref


def _main_window(re_logf, t0r: float, peak_log: float):
    """Truncation points where log f is _MAIN_DROP nats below the peak."""
    target = peak_log - _MAIN_DROP
    # right flank: probe outward on the saddle-width scale, then bisect
    step = max(1.0, math.sqrt(max(t0r, 1.0)))
    hi = t0r + step
    while re_logf(hi) > target:
        step *= 2.0
        hi = t0r + step
    t_hi = _bisect(re_logf, t0r, hi, target)
    # left flank
    if t0r <= 0.0 or re_logf(0.0) >= target:
        t_lo = 0.0
    else:
        t_lo = _bisect_rising(re_logf, 0.0, t0r, target)
    return t_lo, t_hi


def _bisect(f, lo, hi, target, iters=80):
    # f decreasing on [lo, hi], f(lo) >= target >= f(hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9 * (1.0 + hi):
            break
    return hi

def _bisect_rising(f, lo, hi, target, iters=80):
    # f increasing on [lo, hi], f(lo) <= target <= f(hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9 * (1.0 + hi):
            break
    return lo


def _vertical_integral(params: Params, z: complex, lz: complex, tol: float):
    a, b, alpha = params.a, params.b, params.alpha

    # limit of the integrand at t -> 0: -f'(0)/pi, with
    # f'(0) = Gamma(b)^(-alpha) (Log z - a alpha psi(b))
    f0 = cmath.exp(-alpha * float(lgamma_real(b)))
    limit0 = -f0 * (lz - a * alpha * digamma_real(b)) / math.pi

    def point(t: float) -> complex:
        if t < 1e-6:
            return limit0
        la = lgamma(complex(b, a * t))
        l_plus = 1j * t * lz - alpha * la
        l_minus = -1j * t * lz - alpha * la.conjugate()
        if t < 1.0:
            d = math.log(math.expm1(2.0 * math.pi * t))
        else:
            d = 2.0 * math.pi * t + math.log1p(-math.exp(-2.0 * math.pi * t))
        diff = l_plus - l_minus
        if abs(diff) < 0.5:
            return 1j * cmath.exp(l_minus - d) * _cexpm1(diff)
        return 1j * (cmath.exp(l_plus - d) - cmath.exp(l_minus - d))

    def g(ts: np.ndarray) -> np.ndarray:
        return np.asarray([point(float(t)) for t in np.atleast_1d(ts)],
                          dtype=complex)

    # truncation: follow the (eventually geometric) decay until 50 nats
    # below the running maximum of |g|
    vmax = abs(limit0)
    t = 1.0
    while True:
        m = abs(point(t))
        vmax = max(vmax, m)
        if m < vmax * math.exp(-_VERT_DROP) or t > 1e7:
            break
        t *= 2.0
    res = integrate_adaptive(g, 0.0, t, min(tol, 1e-9),
                             abs_floor=vmax * 1e-14)
    return ScaledComplex.from_complex(res.value), res


def _cexpm1(w: complex) -> complex:
    if abs(w) < 1e-4:
        return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)))
    return cmath.exp(w) - 1.0


def _combined_rel_err(value: ScaledComplex, main: ScaledComplex,
                      main_rel_err: float, vertical: ScaledComplex,
                      vres: QuadResult) -> float:
    if value.is_zero():
        return math.inf
    vmag = value.abs_log()
    err = main_rel_err * math.exp(min(main.abs_log() - vmag, 700.0))
    if abs(vres.value) > 0:
        vert_abs = vres.err_estimate
        err += vert_abs * math.exp(min(-vmag, 700.0)) if vmag < 700.0 else 0.0
    return err
