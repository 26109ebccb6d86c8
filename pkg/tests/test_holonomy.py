"""Tests for the recurrence probe on n!^alpha."""

import math

import numpy as np
import pytest

from mlfun import (
    DomainError,
    RecurrenceHypothesis,
    UsageError,
    log_seq,
    probe,
    probe_grid,
)
from mlfun.holonomy import probe_detail, verify_on_window


def _aligned(got: np.ndarray, want: np.ndarray, tol: float = 1e-6) -> bool:
    """True when two unit vectors agree up to sign."""
    g = got.reshape(-1) / np.linalg.norm(got)
    w = want.reshape(-1) / np.linalg.norm(want)
    return min(np.linalg.norm(g - w), np.linalg.norm(g + w)) < tol


# ---------------------------------------------------------------------------
# log_seq
# ---------------------------------------------------------------------------

def test_log_seq_examples():
    assert log_seq(2.0, 3) == pytest.approx(math.log(36.0), abs=1e-13)
    assert log_seq(0.5, 0) == 0.0
    assert log_seq(1.0, 170) == pytest.approx(math.lgamma(171.0), abs=1e-9)


def test_log_seq_negative_n():
    with pytest.raises(DomainError):
        log_seq(1.0, -1)


# ---------------------------------------------------------------------------
# hypothesis validation
# ---------------------------------------------------------------------------

def test_hypothesis_validation():
    with pytest.raises(UsageError):
        RecurrenceHypothesis(0, 1)
    with pytest.raises(UsageError):
        RecurrenceHypothesis(1, -1)
    assert RecurrenceHypothesis(2, 3).n_coeffs == 12


def test_probe_window_validation():
    hyp = RecurrenceHypothesis(1, 1)
    with pytest.raises(UsageError):
        probe(1.0, hyp, 0, 30)
    with pytest.raises(UsageError):
        probe(1.0, hyp, 10, 7)


# ---------------------------------------------------------------------------
# probe: known recurrences for integer alpha
# ---------------------------------------------------------------------------

def test_alpha_one_linear_recurrence():
    # (n+1) u_n - u_{n+1} = 0: coefficients [[1, 1], [-1, 0]]
    cand = probe(1.0, RecurrenceHypothesis(1, 1), 10, 30, 1e-10)
    assert cand is not None and cand.verified
    assert cand.residual < 1e-10
    assert abs(np.linalg.norm(cand.coeffs) - 1.0) < 1e-12
    assert _aligned(cand.coeffs, np.array([[1.0, 1.0], [-1.0, 0.0]]))


def test_alpha_two_quadratic_recurrence():
    # (n+1)^2 u_n - u_{n+1} = 0: coefficients [[1, 2, 1], [-1, 0, 0]]
    cand = probe(2.0, RecurrenceHypothesis(1, 2), 10, 40, 1e-10)
    assert cand is not None and cand.verified
    assert _aligned(cand.coeffs, np.array([[1.0, 2.0, 1.0], [-1.0, 0.0, 0.0]]))


def test_alpha_half_rejected():
    assert probe(0.5, RecurrenceHypothesis(2, 2), 10, 50, 1e-8) is None


def test_sqrt_two_grid_all_empty():
    for out in probe_grid(math.sqrt(2.0), 2, 2):
        assert out.candidate is None


def test_alpha_three_found_in_grid():
    outs = {(o.hypothesis.order, o.hypothesis.degree): o
            for o in probe_grid(3.0, 2, 3)}
    hit = outs[(1, 3)]
    assert hit.candidate is not None and hit.candidate.verified


def test_alpha_one_found_in_grid():
    outs = {(o.hypothesis.order, o.hypothesis.degree): o
            for o in probe_grid(1.0, 2, 2)}
    assert outs[(1, 1)].candidate is not None


# ---------------------------------------------------------------------------
# soundness, scale invariance, separation
# ---------------------------------------------------------------------------

def test_soundness_on_untouched_window():
    hyp = RecurrenceHypothesis(1, 2)
    cand = probe(2.0, hyp, 10, 40, 1e-10)
    assert cand is not None
    res = verify_on_window(2.0, cand, hyp, 5000, 40)
    assert res < 100 * 1e-10


def test_scale_invariance_larger_hypothesis():
    # a (2,2) search for alpha=1 must still contain the true recurrence:
    # the true coefficients embed with a tiny residual on the probe window
    hyp = RecurrenceHypothesis(2, 2)
    small = probe(1.0, RecurrenceHypothesis(1, 1), 10, 30, 1e-10)
    assert small is not None
    embedded = np.zeros((3, 3))
    embedded[:2, :2] = small.coeffs
    from mlfun.holonomy import RecurrenceCandidate
    emb = RecurrenceCandidate(embedded, small.residual, True)
    assert verify_on_window(1.0, emb, hyp, 10, 30) < 1e-10


def test_true_and_spurious_fits_separate_on_distant_window():
    # both alpha=1 (true) and alpha=0.5 (spurious) pass the local SVD
    # screen; only the true recurrence survives far away
    true_hyp = RecurrenceHypothesis(1, 1)
    d_true = probe_detail(1.0, true_hyp, 10, 30, 1e-10)
    assert d_true.candidate is not None
    res_true = verify_on_window(1.0, d_true.candidate, true_hyp, 100_000, 30)

    sp_hyp = RecurrenceHypothesis(2, 2)
    d_sp = probe_detail(0.5, sp_hyp, 10, 60, 1e-8)
    assert d_sp.candidate is None
    assert d_sp.sigma_ratio < 1e-8   # the local screen alone cannot reject

    from mlfun.holonomy import RecurrenceCandidate, _probe_matrix, _sigma_ratio_and_null
    m = _probe_matrix(0.5, sp_hyp, 10, 60)
    _, null = _sigma_ratio_and_null(m)
    sp_cand = RecurrenceCandidate(null.reshape(3, 3), d_sp.sigma_ratio, False)
    res_sp = verify_on_window(0.5, sp_cand, sp_hyp, 100_000, 60)
    assert res_sp > 1e4 * max(res_true, 1e-300)
