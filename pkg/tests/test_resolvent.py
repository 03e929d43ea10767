import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bandspec import (BandParams, SeqVector, SpectrumViolation, TruncationConfig, Unit, apply,
                      ratio_asymptotics, resolvent_apply, resolvent_kernel,
                      summability_certificates)
from bandspec.resolvent import check_exterior

from conftest import TEST_WEIGHTS, weight_2n


def exterior_point(rng, b, v, lo=1.05, hi=3.0):
    R = ratio_asymptotics(v).L * abs(b.s)
    return b.r + R * rng.uniform(lo, hi) * np.exp(1j * rng.uniform(0, 2 * np.pi))


def test_kernel_unit_distance():
    s = -0.7
    b = BandParams(2.0, s)
    x = resolvent_apply(b, 1.0, SeqVector.basis(0, 12)).entries
    assert np.allclose(x, (-s) ** np.arange(12), rtol=1e-14)
    # s x_{n-1} + (r - alpha) x_n = delta_{n0}
    res = s * np.concatenate([[0], x[:-1]]) + x
    assert np.allclose(res, np.eye(12)[0], atol=1e-15)


def test_far_point_leading_term():
    x = resolvent_apply(BandParams(1.0, 1.0), 1.0 + 1e6, SeqVector.basis(0, 4)).entries
    assert x[0] == pytest.approx(-1e-6, rel=1e-15)
    x = resolvent_apply(BandParams(1.0, 1.0), 1.0 - 1e6, SeqVector.basis(0, 4)).entries
    assert x[0] == pytest.approx(1e-6, rel=1e-15)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 1 + 1j, 0.0, 2.0])
def test_inside_or_on_disk_refused(alpha):
    with pytest.raises(SpectrumViolation):
        resolvent_apply(BandParams(1, -1), alpha, SeqVector.basis(0, 3))


def test_exterior_uses_L_not_N():
    # n+1 has N = 2, L = 1: |r - alpha| = 1.5 |s| is legal
    ev = check_exterior(BandParams(1.0, 1.0), 2.5, TEST_WEIGHTS["n+1"])
    assert ev.tail_ratio == pytest.approx(1 / 1.5)
    with pytest.raises(SpectrumViolation):
        check_exterior(BandParams(1, 1), 2.5, weight_2n())


@pytest.mark.parametrize("name", list(TEST_WEIGHTS))
def test_resolvent_identity(name):
    v = TEST_WEIGHTS[name]
    rng = np.random.default_rng(11)
    m = 512
    for _ in range(20):
        b = BandParams(rng.uniform(0.1, 2) * rng.choice([-1, 1]), rng.uniform(0.2, 1.5) * rng.choice([-1, 1]))
        alpha = exterior_point(rng, b, v)
        y = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        x = resolvent_apply(b, alpha, SeqVector(y), TruncationConfig(m), v)
        res = apply(b, x).entries - alpha * x.entries - y
        assert np.linalg.norm(res[: m - 1]) <= 1e-10 * np.linalg.norm(y)


@given(st.floats(0.2, 2), st.floats(-2, 2).filter(lambda t: abs(t) > 0.1), st.floats(1.1, 4),
       st.floats(0, 2 * math.pi))
def test_toeplitz_structure(r, s, scale, theta):
    b = BandParams(r, s)
    alpha = r + abs(s) * scale * np.exp(1j * theta)
    m = 24
    cols = np.column_stack([resolvent_apply(b, alpha, SeqVector.basis(k, m)).entries for k in range(m)])
    d = resolvent_kernel(b, alpha, m)
    for n in range(m):
        for k in range(m):
            want = d[n - k] if n >= k else 0.0
            assert cols[n, k] == pytest.approx(want, rel=1e-12, abs=1e-300)


@given(st.floats(0.2, 2), st.floats(-2, 2).filter(lambda t: abs(t) > 0.1), st.floats(1.1, 4),
       st.floats(0, 2 * math.pi))
def test_double_application(r, s, scale, theta):
    b = BandParams(r, s)
    alpha = r + abs(s) * scale * np.exp(1j * theta)
    rng = np.random.default_rng(5)
    m = 60
    x = np.zeros(m, dtype=complex)
    x[: m - 10] = rng.standard_normal(m - 10)
    y = apply(b, x).entries - alpha * x
    back = resolvent_apply(b, alpha, SeqVector(y)).entries
    assert np.allclose(back[: m - 1], x[: m - 1], atol=1e-10 * np.abs(x).max())


def test_certificates_unit_geometric_series():
    c = summability_certificates(BandParams(1, -1), 3.0, Unit(), 2.0)
    assert c.row_sup == pytest.approx(1.0, rel=1e-12)
    assert c.col_sup == pytest.approx(1.0, rel=1e-12)
    assert c.both_finite


def test_certificates_vanish_far_out():
    prev = math.inf
    for far in (10.0, 1e3, 1e6):
        c = summability_certificates(BandParams(1, 1), 1 + far, Unit(), 2.0)
        assert c.both_finite and c.row_sup < prev
        prev = c.row_sup
    assert prev < 2e-6


def test_certificates_weighted_2n():
    b = BandParams(1.0, 0.5)
    c = summability_certificates(b, 1 + 3 * 0.5, weight_2n(), 2.0)
    assert c.tail_ratio == pytest.approx(2 / 3)
    assert c.both_finite
    # kernel row sums sum_j (2/3)^j / 1.5 = 2
    assert c.row_sup == pytest.approx(2.0, rel=1e-9)
    assert c.row_partial <= c.row_sup and c.col_partial <= c.col_sup


def test_certificates_refuse_disk():
    with pytest.raises(SpectrumViolation):
        summability_certificates(BandParams(1, 1), 1.5, Unit(), 2.0)


@pytest.mark.parametrize("name", list(TEST_WEIGHTS))
def test_certificates_finite_on_every_weight(name):
    v = TEST_WEIGHTS[name]
    b = BandParams(0.5, 1.0)
    R = ratio_asymptotics(v).L
    c = summability_certificates(b, b.r + 2 * R, v, 2.0)
    assert c.both_finite
    assert c.row_sup >= c.row_partial and c.col_sup >= c.col_partial
