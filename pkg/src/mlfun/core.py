"""Shared numeric substrate.

Scaled (overflow-safe) complex values, the principal complex log-gamma,
compensated log-domain accumulation, and an adaptive Gauss-Legendre
quadrature engine.  Everything here is a pure function of its inputs and
safe to call from multiple threads.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "UsageError",
    "QuadratureError",
    "Params",
    "ScaledComplex",
    "lgamma",
    "lgamma_real",
    "digamma_real",
    "scaled_from_log",
    "accumulate_log_terms",
    "integrate_adaptive",
    "QuadResult",
    "rel_diff",
]

LN2PI = math.log(2.0 * math.pi)
LNPI = math.log(math.pi)


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """Malformed call (empty input, bad hypothesis, unparsable flag)."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries the best estimate."""

    def __init__(self, message: str, best: complex, err_estimate: float):
        super().__init__(message)
        self.best = best
        self.err_estimate = err_estimate


@dataclass(frozen=True)
class Params:
    """The parameter triple (a, b, alpha), all strictly positive reals."""

    a: float
    b: float
    alpha: float

    def __post_init__(self):
        for name in ("a", "b", "alpha"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise DomainError(f"parameter {name} must be a positive real") from None
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"parameter {name} must be a positive real, got {v!r}")
            object.__setattr__(self, name, v)


# ---------------------------------------------------------------------------
# Scaled complex values:  value = mantissa * exp(log_scale)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScaledComplex:
    """A complex value mantissa * e**log_scale with |mantissa| in [1, e).

    Zero is canonical: mantissa == 0 implies log_scale == 0.  The scale is
    in natural-log units, so log_scale is directly comparable to exponents
    like alpha * z**(1/(a*alpha)).
    """

    mantissa: complex
    log_scale: float

    @staticmethod
    def zero() -> "ScaledComplex":
        return ScaledComplex(0j, 0.0)

    @staticmethod
    def from_parts(mantissa: complex, log_scale: float) -> "ScaledComplex":
        return _normalize(complex(mantissa), float(log_scale))

    @staticmethod
    def from_complex(value: complex) -> "ScaledComplex":
        return _normalize(complex(value), 0.0)

    @staticmethod
    def from_log(w: complex) -> "ScaledComplex":
        return scaled_from_log(w)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def abs_log(self) -> float:
        """Natural log of the magnitude (-inf for zero)."""
        if self.is_zero():
            return -math.inf
        return math.log(abs(self.mantissa)) + self.log_scale

    def log(self) -> complex:
        """Principal complex log of the represented value."""
        if self.is_zero():
            raise DomainError("log of zero")
        return cmath.log(self.mantissa) + self.log_scale

    def to_complex(self) -> complex:
        """The plain complex value; raises OverflowError if unrepresentable."""
        if self.is_zero():
            return 0j
        if self.abs_log() > 709.0:
            raise OverflowError("scaled value exceeds double-precision range")
        return self.mantissa * math.exp(self.log_scale)

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.mantissa.conjugate(), self.log_scale)

    def __add__(self, other: "ScaledComplex") -> "ScaledComplex":
        if not isinstance(other, ScaledComplex):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s = max(self.log_scale, other.log_scale)
        m = (self.mantissa * math.exp(self.log_scale - s)
             + other.mantissa * math.exp(other.log_scale - s))
        return _normalize(m, s)

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.mantissa, self.log_scale)

    def __sub__(self, other: "ScaledComplex") -> "ScaledComplex":
        return self + (-other)

    def __mul__(self, other) -> "ScaledComplex":
        if isinstance(other, ScaledComplex):
            return _normalize(self.mantissa * other.mantissa,
                             self.log_scale + other.log_scale)
        if isinstance(other, (int, float, complex)):
            return _normalize(self.mantissa * other, self.log_scale)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        if isinstance(other, ScaledComplex):
            if other.is_zero():
                raise ZeroDivisionError("division by scaled zero")
            return _normalize(self.mantissa / other.mantissa,
                             self.log_scale - other.log_scale)
        if isinstance(other, (int, float, complex)):
            return _normalize(self.mantissa / other, self.log_scale)
        return NotImplemented


def _normalize(m: complex, s: float) -> ScaledComplex:
    if m == 0:
        return ScaledComplex(0j, 0.0)
    am = abs(m)
    if not math.isfinite(am):
        raise DomainError("non-finite mantissa in scaled value")
    k = math.floor(math.log(am))
    if k != 0:
        # scale in two halves so exp never overflows even for subnormal m
        f = math.exp(-0.5 * k)
        m = (m * f) * f
        s = s + float(k)
    # rounding guard: the shift above can land a hair outside [1, e)
    for _ in range(4):
        am = abs(m)
        if am < 1.0:
            m *= math.e
            s -= 1.0
        elif am >= math.e:
            m /= math.e
            s += 1.0
        else:
            return ScaledComplex(m, s)
    # boundary tie at the rounding level: pin the magnitude to exactly 1
    return ScaledComplex(m / abs(m), s + math.log(abs(m)))


def scaled_from_log(w: complex) -> ScaledComplex:
    """The value e**w as a ScaledComplex; w may have huge real part."""
    w = complex(w)
    frac = w.real - math.floor(w.real)
    m = cmath.exp(complex(frac, w.imag))
    return _normalize(m, w.real - frac)


def rel_diff(x: ScaledComplex, y: ScaledComplex) -> float:
    """|x/y - 1|, computed through the scaled representation."""
    if y.is_zero():
        return math.inf if not x.is_zero() else 0.0
    if x.is_zero():
        return 1.0
    d = x.log() - y.log()
    if abs(d) < 0.5:
        return abs(_cexpm1(d))
    if d.real > 700.0:
        return math.inf
    return abs(cmath.exp(d) - 1.0)


def _cexpm1(w: complex) -> complex:
    """exp(w) - 1, accurate for small |w|."""
    if abs(w) < 1e-4:
        return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)))
    return cmath.exp(w) - 1.0


# ---------------------------------------------------------------------------
# Complex log-gamma (principal branch, continuous off the negative real axis)
# ---------------------------------------------------------------------------

# Bernoulli corrections B_{2k} / (2k (2k-1)); adequate for Re(z) >= 13.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_SHIFT_RE = 13.0


def _stirling_complex(z: complex) -> complex:
    rz = 1.0 / z
    rz2 = rz * rz
    s = 0.0
    for c in reversed(_STIRLING):
        s = s * rz2 + c
    return (z - 0.5) * cmath.log(z) - z + 0.5 * LN2PI + rz * s


def stirling_tail(x: np.ndarray) -> np.ndarray:
    """The Bernoulli correction sum of Stirling's series; needs x >= 13."""
    rx = 1.0 / x
    rx2 = rx * rx
    s = np.zeros_like(x)
    for c in reversed(_STIRLING):
        s = s * rx2 + c
    return rx * s


def _stirling_real(x: np.ndarray) -> np.ndarray:
    return (x - 0.5) * np.log(x) - x + 0.5 * LN2PI + stirling_tail(x)


def lgamma_real(x) -> np.ndarray:
    """Vectorized log-gamma for real positive arguments."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x <= 0.0):
        raise DomainError("lgamma_real requires positive arguments")
    out = np.empty_like(x)
    big = x >= _SHIFT_RE
    if np.any(big):
        out[big] = _stirling_real(x[big])
    small = ~big
    if np.any(small):
        xs = x[small]
        acc = np.zeros_like(xs)
        for j in range(14):
            acc += np.log(xs + j)
        out[small] = _stirling_real(xs + 14.0) - acc
    return out[0] if scalar else out


def _logsinpi_upper(z: complex) -> complex:
    # log(sin(pi z)) continuous for Im(z) > 0 (and the limit from above on
    # the real line): sin(pi z) = e^{-i pi z}(1 - e^{2 i pi z}) / (2i) * (-1)
    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log(1.0 - w) - math.log(2.0) + 0.5j * math.pi


def lgamma(z) -> complex:
    """Principal log-gamma, continuous on the plane cut along (-inf, 0].

    Real for real z > 0; satisfies lgamma(conj z) == conj(lgamma(z)).
    Raises DomainError at the poles of Gamma.
    """
    z = complex(z)
    if z.imag == 0.0:
        x = z.real
        if x <= 0.0 and x == math.floor(x):
            raise DomainError(f"lgamma pole at z = {x}")
        if x > 0.0:
            return complex(float(lgamma_real(x)), 0.0)
        # negative real axis: return the limit from the upper half-plane
    if z.imag < 0.0:
        return lgamma(z.conjugate()).conjugate()
    if z.real < 0.5:
        return LNPI - _logsinpi_upper(z) - lgamma(1.0 - z)
    shift = 0j
    while z.real < _SHIFT_RE:
        shift += cmath.log(z)
        z += 1.0
    return _stirling_complex(z) - shift


def digamma_real(x: float, step: float = 1e-5) -> float:
    """Digamma by central differencing of lgamma; ~1e-9 absolute accuracy."""
    if x <= step:
        step = x / 4.0
    return float(lgamma_real(x + step) - lgamma_real(x - step)) / (2.0 * step)


# ---------------------------------------------------------------------------
# Compensated log-domain accumulation (complex log-sum-exp)
# ---------------------------------------------------------------------------

def _kahan_sum(parts_re: np.ndarray, parts_im: np.ndarray) -> complex:
    sr = cr = 0.0
    si = ci = 0.0
    for vr, vi in zip(parts_re, parts_im):
        y = vr - cr
        t = sr + y
        cr = (t - sr) - y
        sr = t
        y = vi - ci
        t = si + y
        ci = (t - si) - y
        si = t
    return complex(sr, si)


def accumulate_log_terms(terms) -> ScaledComplex:
    """Sum of exp(term_i) over complex log-values, as a ScaledComplex.

    Shifts by the maximum real part and Kahan-compensates the real and
    imaginary accumulations separately (chunkwise pairwise sums feeding a
    compensated outer sum), so no intermediate overflow occurs for shifts
    up to 1e300 in natural-log units.
    """
    arr = np.asarray(terms if isinstance(terms, np.ndarray) else list(terms),
                     dtype=complex)
    if arr.size == 0:
        raise UsageError("accumulate_log_terms: empty input")
    m = float(np.max(arr.real))
    if m == -math.inf:
        return ScaledComplex.zero()
    vals = np.exp(arr - m)
    chunk = 4096
    n_chunks = (vals.size + chunk - 1) // chunk
    parts_re = np.empty(n_chunks)
    parts_im = np.empty(n_chunks)
    for i in range(n_chunks):
        block = vals[i * chunk:(i + 1) * chunk]
        parts_re[i] = np.sum(block.real)
        parts_im[i] = np.sum(block.imag)
    return _normalize(_kahan_sum(parts_re, parts_im), m)


# ---------------------------------------------------------------------------
# Adaptive Gauss-Legendre quadrature with an embedded lower-order rule
# ---------------------------------------------------------------------------

_GL_HI_X, _GL_HI_W = np.polynomial.legendre.leggauss(15)
_GL_LO_X, _GL_LO_W = np.polynomial.legendre.leggauss(7)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    neval: int


def _panel(f, a: float, b: float):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xs = np.concatenate((mid + half * _GL_HI_X, mid + half * _GL_LO_X))
    ys = np.asarray(f(xs), dtype=complex)
    q_hi = half * complex(np.sum(_GL_HI_W * ys[:15]))
    q_lo = half * complex(np.sum(_GL_LO_W * ys[15:]))
    return q_hi, abs(q_hi - q_lo)


def integrate_adaptive(f, lo: float, hi: float, tol: float, *,
                       abs_floor: float = 0.0,
                       max_intervals: int = 20000,
                       initial_panels: int = 8) -> QuadResult:
    """Integrate a vectorized integrand f(ndarray) -> complex ndarray.

    hi may be math.inf; the semi-infinite range is mapped to [0, 1) by
    t = lo + u/(1-u), which probes the tail geometrically (the integrand
    must decay there).  The returned err_estimate is the engine's own
    bound, from the difference between the order-15 rule and the embedded
    order-7 rule on each accepted panel.  Raises QuadratureError (carrying
    the best estimate) if the interval budget is exhausted.
    """
    if not (tol > 0.0):
        raise UsageError("integrate_adaptive: tol must be positive")
    if hi == math.inf:
        g = _map_semi_infinite(f, lo)
        res = integrate_adaptive(g, 0.0, 1.0, tol, abs_floor=abs_floor,
                                 max_intervals=max_intervals,
                                 initial_panels=initial_panels)
        return res
    if not (hi > lo):
        raise UsageError("integrate_adaptive: need hi > lo")

    neval = 0
    heap = []
    total = 0j
    total_err = 0.0
    width = (hi - lo) / initial_panels
    for i in range(initial_panels):
        a = lo + i * width
        b = hi if i == initial_panels - 1 else a + width
        q, e = _panel(f, a, b)
        neval += 22
        heapq.heappush(heap, (-e, a, b, q))
        total += q
        total_err += e

    splits = 0
    min_width = (hi - lo) * 1e-14
    while total_err > max(tol * abs(total), abs_floor):
        if splits >= max_intervals:
            raise QuadratureError(
                "adaptive quadrature: interval budget exhausted",
                total, total_err)
        neg_e, a, b, q = heapq.heappop(heap)
        if (b - a) < min_width:
            # interval too narrow to refine further; treat its estimate as final
            heapq.heappush(heap, (0.0, a, b, q))
            if all(item[0] == 0.0 for item in heap):
                raise QuadratureError(
                    "adaptive quadrature: minimum interval width reached",
                    total, total_err)
            continue
        mid = 0.5 * (a + b)
        q1, e1 = _panel(f, a, mid)
        q2, e2 = _panel(f, mid, b)
        neval += 44
        total += (q1 + q2) - q
        total_err += (e1 + e2) - (-neg_e)
        heapq.heappush(heap, (-e1, a, mid, q1))
        heapq.heappush(heap, (-e2, mid, b, q2))
        splits += 1
    return QuadResult(total, total_err, neval)


def _map_semi_infinite(f, lo: float):
    def g(us: np.ndarray) -> np.ndarray:
        us = np.asarray(us, dtype=float)
        onem = 1.0 - us
        ts = lo + us / onem
        vals = np.asarray(f(ts), dtype=complex) / (onem * onem)
        vals[~np.isfinite(vals)] = 0.0
        return vals
    return g
