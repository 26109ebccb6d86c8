"""Tests for the integral-relation residual."""

import math

import numpy as np
import pytest

from mlfun import DomainError, Params, eval_series, integrate_adaptive, laplace_residual


def test_alpha_one_closed_form_side():
    # right side is 2 e^2; the residual folds both sides together
    assert laplace_residual(1.0, 2.0, 1e-9) < 1e-6


def test_alpha_two_bessel_integrand():
    assert laplace_residual(2.0, 1.0, 1e-9) < 1e-6


def test_alpha_half():
    assert laplace_residual(0.5, 1.0, 1e-9) < 1e-6


def test_independent_quadrature_of_left_side():
    # rebuild the alpha=1, z=5 left side here: integral of e^(-t/5) I0(2 sqrt t)
    p = Params(1, 1, 2)

    def f(ts):
        out = []
        for t in np.atleast_1d(ts):
            v = eval_series(p, float(t), 1e-10).value.to_complex().real
            out.append(math.exp(-t / 5.0) * v)
        return np.asarray(out, dtype=complex)

    lhs = integrate_adaptive(f, 0.0, 400.0, 1e-9).value.real
    rhs = 5.0 * math.exp(5.0)
    assert lhs == pytest.approx(rhs, rel=1e-7)
    assert laplace_residual(1.0, 5.0, 1e-9) < 1e-6


def test_residual_stable_under_tighter_tolerance():
    r1 = laplace_residual(1.0, 2.0, 1e-9)
    r2 = laplace_residual(1.0, 2.0, 5e-10)
    floor = 1e-11   # both residuals sit at the quadrature noise floor
    assert r2 <= 2.0 * max(r1, floor)
    assert r1 <= 2.0 * max(r2, floor)


@pytest.mark.parametrize("alpha,z", [(1.0, -1.0), (1.0, 0.0), (-1.0, 2.0),
                                     (1.0, math.nan)])
def test_domain_errors(alpha, z):
    with pytest.raises(DomainError):
        laplace_residual(alpha, z)
