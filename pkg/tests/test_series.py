"""Tests for the direct-summation engine."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlfun import DomainError, Method, Params, eval_series, peak_index


def bessel_i0(x: float) -> float:
    """Independent oracle: I0(x) by its own power series in double precision."""
    term = 1.0
    total = 1.0
    n = 1
    while True:
        term *= (x / (2.0 * n)) ** 2
        total += term
        if term < 1e-18 * total:
            return total
        n += 1


def naive_sum(params: Params, z: complex):
    """Plain double-precision summation; also returns sum of |terms|.

    The ratio of the two tells the caller how much cancellation the naive
    sum suffered, i.e. how many of its digits are trustworthy.
    """
    total = 0j
    total_abs = 0.0
    peak = peak_index(params, z)
    best = 0.0
    t = math.exp(-params.alpha * math.lgamma(params.b))
    n = 0
    while True:
        if not (abs(t) < 1e280):
            return None, math.inf   # overflow: naive summation unusable
        total += t
        total_abs += abs(t)
        best = max(best, abs(t))
        if n > peak and abs(t) < 1e-20 * best:
            return total, total_abs
        g0 = math.lgamma(params.a * n + params.b)
        g1 = math.lgamma(params.a * (n + 1) + params.b)
        t *= z * math.exp(-params.alpha * (g1 - g0))
        n += 1


# ---------------------------------------------------------------------------
# peak_index
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("params,z,want", [
    (Params(1, 1, 1), 100, 100.0),
    (Params(1, 3, 1), 100, 100.0),
    (Params(1, 1, 2), 16, 4.0),
    (Params(2, 1, 1), 100, 5.0),
])
def test_peak_index_examples(params, z, want):
    assert peak_index(params, z) == pytest.approx(want, rel=1e-14)


def test_peak_index_zero():
    assert peak_index(Params(1, 1, 1), 0.0) == 0.0


# ---------------------------------------------------------------------------
# eval_series
# ---------------------------------------------------------------------------

def test_exponential_at_two():
    res = eval_series(Params(1, 1, 1), 2.0, 1e-13)
    assert res.method is Method.SERIES
    assert abs(res.value.to_complex() - math.exp(2.0)) < 1e-12 * math.exp(2.0)


@pytest.mark.parametrize("params", [Params(1, 1, 1), Params(0.7, 2.3, 1.6),
                                    Params(2, 0.5, 0.5)])
def test_at_zero_only_first_term_survives(params):
    res = eval_series(params, 0.0, 1e-10)
    want = math.gamma(params.b) ** (-params.alpha)
    assert res.value.to_complex().real == pytest.approx(want, rel=1e-14)
    assert res.work == 1 and res.err_estimate == 0.0


def test_bessel_value_at_one():
    res = eval_series(Params(1, 1, 2), 1.0, 1e-13)
    assert res.value.to_complex().real == pytest.approx(bessel_i0(2.0), rel=1e-12)
    # frozen reference for the same quantity
    assert bessel_i0(2.0) == pytest.approx(2.2795853023360673, rel=1e-14)


def test_tol_out_of_range():
    with pytest.raises(DomainError):
        eval_series(Params(1, 1, 1), 1.0, 0.0)
    with pytest.raises(DomainError):
        eval_series(Params(1, 1, 1), 1.0, 1.5)


@given(st.floats(0.5, 2), st.floats(0.5, 2), st.floats(0.5, 2),
       st.floats(0.1, 30), st.floats(-math.pi, math.pi))
@settings(max_examples=60, deadline=None)
def test_matches_naive_summation(a, b, alpha, mod, arg):
    params = Params(a, b, alpha)
    z = mod * cmath.exp(1j * arg)
    want, want_abs = naive_sum(params, z)
    # restrict to inputs where the naive double sum itself is trustworthy:
    # representable magnitude and at most ~4 digits lost to cancellation
    if want is None or abs(want) < 1e-250 or want_abs > 1e250:
        return
    if 1e-16 * want_abs > 1e-12 * abs(want):
        return
    got = eval_series(params, z, 1e-13)
    assert abs(got.value.to_complex() - want) <= 1e-10 * abs(want)


@given(st.floats(0.5, 2), st.floats(0.5, 2), st.floats(0.5, 2),
       st.floats(0.1, 20), st.floats(0.0, math.pi))
@settings(max_examples=40, deadline=None)
def test_conjugation_symmetry(a, b, alpha, mod, arg):
    params = Params(a, b, alpha)
    z = mod * cmath.exp(1j * arg)
    up = eval_series(params, z, 1e-10).value
    dn = eval_series(params, z.conjugate(), 1e-10).value
    assert dn.mantissa == up.mantissa.conjugate()
    assert dn.log_scale == up.log_scale


@pytest.mark.parametrize("params,z", [
    (Params(1, 1, 1), 5.0), (Params(0.5, 1.5, 0.5), 40.0),
    (Params(2, 0.7, 1.1), 300.0),
])
def test_positive_axis_positivity(params, z):
    res = eval_series(params, z, 1e-10)
    assert res.value.mantissa.imag == 0.0
    assert res.value.mantissa.real > 0.0
    floor = -params.alpha * math.lgamma(params.b)
    assert res.value.abs_log() >= floor - 1e-12


def test_monotone_work_in_tol():
    params = Params(0.8, 1.3, 0.9)
    z = 40.0 * cmath.exp(0.3j)
    w = [eval_series(params, z, tol).work for tol in (1e-13, 1e-12, 1e-11,
                                                      1e-10, 1e-9, 1e-8)]
    assert all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def test_budget_exhaustion_flagged():
    res = eval_series(Params(1, 1, 1), 1e6, 1e-10, max_terms=1000)
    assert res.err_estimate == math.inf
    assert res.work == 1000


def test_huge_argument_no_overflow():
    res = eval_series(Params(1, 1, 1), 1e4, 1e-10)
    assert res.value.abs_log() == pytest.approx(1e4, abs=1e-6)


def test_heavy_cancellation_on_imaginary_axis():
    # |e^{30i}| = 1 while the largest term is e^30: ~13 decimal digits cancel
    res = eval_series(Params(1, 1, 1), 30j, 1e-12)
    want = cmath.exp(30j)
    assert abs(res.value.to_complex() - want) < 1e-12
    assert res.err_estimate < 1e-10


def test_negative_axis_alternating():
    res = eval_series(Params(1, 1, 1), -20.0, 1e-12)
    assert res.value.to_complex().real == pytest.approx(math.exp(-20.0), rel=1e-9)
