import math
from math import comb

import numpy as np
import pytest

from bandspec import (Affine, BandParams, ContinuityFailure, LogShift, SpaceDescriptor, Unit,
                      ValidationError, Verdict, WeightTable, cesaro_experiment, check_chain,
                      classify_ergodic, growth_experiment)
from bandspec.ergodics import PROPERTIES, chain_edges

from conftest import weight_2n, weight_lin

H, F, U = Verdict.HOLDS, Verdict.FAILS, Verdict.UNDETERMINED
GRID = np.linspace(-1.5, 1.5, 20)

SPACES = {
    "l2": SpaceDescriptor.lp(2.0),
    "l3(n+1)": SpaceDescriptor.lp(3.0, weight_lin()),
    "l2(2^n)": SpaceDescriptor.lp(2.0, weight_2n()),
    "s": SpaceDescriptor.lambda_(LogShift()),
    "H(C)": SpaceDescriptor.lambda_(Affine(1, 1)),
    "s'": SpaceDescriptor.lambda_(LogShift(), dual=True),
    "H(C)'": SpaceDescriptor.lambda_(Affine(1, 1), dual=True),
}


def verdicts(rep):
    return {name: rep.get(name).verdict for name in PROPERTIES}


def test_l2_half_half_power_bounded():
    rep = classify_ergodic(BandParams(0.5, 0.5), SPACES["l2"])
    assert rep.power_bounded.verdict is H and rep.mean_ergodic.verdict is H
    assert rep.norm_powers_to_zero.verdict is F
    # 1 sits on the boundary circle |alpha - 1/2| = 1/2
    assert rep.one_in_spectrum and rep.uniform_mean_ergodic.verdict is F


def test_l2_strict_contraction():
    rep = classify_ergodic(BandParams(0.4, 0.5), SPACES["l2"])
    assert rep.uniform_mean_ergodic.verdict is H and rep.norm_powers_to_zero.verdict is H
    assert "|r|+L|s|" in rep.norm_powers_to_zero.witness


@pytest.mark.parametrize("r,s", [(1, -1), (0.2, 3), (-2, 0.1), (0.5, 0.5)])
def test_h_of_c_everything_fails(r, s):
    rep = classify_ergodic(BandParams(r, s), SPACES["H(C)"])
    assert all(v is F for v in verdicts(rep).values())
    assert rep.supercyclic_excluded.verdict is H
    assert rep.one_in_spectrum


def test_weighted_band_undetermined():
    # n+1: N = 2, L = 1, so |r| + L|s| <= 1 < |r| + N|s| is open
    rep = classify_ergodic(BandParams(-0.5, 0.5), SPACES["l3(n+1)"])
    assert rep.power_bounded.verdict is U and rep.mean_ergodic.verdict is U
    assert rep.norm_powers_to_zero.verdict is F and not rep.one_in_spectrum
    assert rep.uniform_mean_ergodic.verdict is U
    # strictly inside: the spectral radius already forces norm decay
    rep = classify_ergodic(BandParams(0.5, 0.4), SPACES["l3(n+1)"])
    assert rep.power_bounded.verdict is H and rep.uniform_mean_ergodic.verdict is H


def test_weighted_failure_side():
    rep = classify_ergodic(BandParams(0.5, 0.3), SPACES["l2(2^n)"])
    assert rep.power_bounded.verdict is F and rep.cesaro_null.verdict is F


def test_supercyclic_flags():
    ratios = np.where(np.arange(400) % 2 == 0, 2.0, 0.01)
    table = WeightTable(tuple(np.concatenate([[0.0], np.cumsum(np.log(ratios))])), 2.0, 0.0)
    assert classify_ergodic(BandParams(0.1, 0.1), SpaceDescriptor.lp(2.0, table)).supercyclic_excluded.verdict is U
    assert classify_ergodic(BandParams(0.1, 0.1), SPACES["l2"]).supercyclic_excluded.verdict is H
    assert classify_ergodic(BandParams(0.1, 0.1), SPACES["s'"]).supercyclic_excluded.verdict is H
    assert classify_ergodic(BandParams(0.1, 0.1), SPACES["H(C)'"]).supercyclic_excluded.verdict is U


def test_dual_l0_full_equivalence():
    sd = SPACES["s'"]
    for r in GRID:
        for s in GRID:
            v = verdicts(classify_ergodic(BandParams(r, s), sd))
            want = H if abs(r) + abs(s) <= 1 else F
            for name in ("power_bounded", "uniform_mean_ergodic", "mean_ergodic", "cesaro_null"):
                assert v[name] is want


def test_dual_l_positive():
    rep = classify_ergodic(BandParams(1.2, 0.1), SPACES["H(C)'"])
    assert rep.cesaro_null.verdict is F and rep.power_bounded.verdict is F
    rep = classify_ergodic(BandParams(0.3, 0.2), SPACES["H(C)'"])
    assert all(v is H for v in verdicts(rep).values())
    rep = classify_ergodic(BandParams(0.9, 0.5), SPACES["H(C)'"])
    assert rep.power_bounded.verdict is U
    assert classify_ergodic(BandParams(1.0, 0.5), SPACES["H(C)'"]).one_in_spectrum


def test_s_primal_l0():
    rep = classify_ergodic(BandParams(0.3, 0.3), SPACES["s"])
    assert rep.power_bounded.verdict is H and rep.uniform_mean_ergodic.verdict is H
    rep = classify_ergodic(BandParams(1.0, 0.5), SPACES["s"])
    assert rep.mean_ergodic.verdict is F and rep.power_bounded.verdict is F
    # on the edge with 1 in sigma: UME fails, and on a Montel space so does PB
    rep = classify_ergodic(BandParams(0.5, -0.5), SPACES["s"])
    assert rep.uniform_mean_ergodic.verdict is F and rep.power_bounded.verdict is F
    rep = classify_ergodic(BandParams(-0.5, 0.5), SPACES["s"])
    assert rep.power_bounded.verdict is U and rep.uniform_mean_ergodic.verdict is U


@pytest.mark.parametrize("name", list(SPACES))
def test_chain_consistency_grid(name):
    sd = SPACES[name]
    edges = chain_edges(sd.kind)
    for r in GRID:
        for s in GRID:
            rep = classify_ergodic(BandParams(r, s), sd)
            assert check_chain(rep) == []
            v = verdicts(rep)
            for a, b in edges:
                # closure: Holds moves forward, Fails moves backward
                if v[a] is H:
                    assert v[b] is H
                if v[b] is F:
                    assert v[a] is F


def test_threshold_sharpness_l2():
    for r in GRID:
        for s in GRID:
            rep = classify_ergodic(BandParams(r, s), SPACES["l2"])
            want = H if abs(r) + abs(s) <= 1 else F
            assert rep.power_bounded.verdict is want
            assert rep.mean_ergodic.verdict is want
            assert rep.cesaro_null.verdict is want


def test_threshold_on_the_edge():
    for r, s in [(0.25, 0.75), (-0.6, 0.4), (0.1, -0.9)]:
        assert classify_ergodic(BandParams(r, s), SPACES["l2"]).power_bounded.verdict is H
        assert classify_ergodic(BandParams(r, s * (1 + 1e-9)), SPACES["l2"]).power_bounded.verdict is F


def test_unbounded_weight_is_continuity_failure():
    with pytest.raises(ContinuityFailure):
        SpaceDescriptor.lp(2.0, WeightTable((0.0, 1.0), 2.0, 1.0, math.inf))


def test_report_json_shape():
    js = classify_ergodic(BandParams(0.5, 0.5), SPACES["l2"]).to_json()
    assert js["power_bounded"]["verdict"] == "Holds"
    assert set(js) == set(PROPERTIES) | {"supercyclic_excluded", "one_in_spectrum", "space"}


def test_growth_pins(oracle):
    pins = oracle["growth_n5000"]
    cases = {
        "unit_r1_s-1": (BandParams(1, -1), Unit(), 2.0),
        "pow2_r1_s1": (BandParams(1, 1), weight_2n(), 3.0),
        "lin_r1_s1": (BandParams(1, 1), weight_lin(), 2.0),
    }
    for key, (b, v, radius) in cases.items():
        g = growth_experiment(b, v, 5000)
        assert g.rate == pytest.approx(pins[key], rel=1e-9)
        assert g.expected == radius and g.rel_error < 0.02


def test_growth_l1_exact():
    g = growth_experiment(BandParams(1, 1), Unit(), 300, p=1.0 + 1e-12)
    assert g.rate == pytest.approx(2.0, rel=1e-9)


def test_growth_needs_long_run():
    with pytest.raises(ValidationError):
        growth_experiment(BandParams(1, 1), Unit(), 50)


def test_cesaro_table_half_half(oracle):
    t = cesaro_experiment(BandParams(0.5, 0.5), SPACES["l2"], 1000, points=4)
    assert t.ns.tolist() == [1, 10, 100, 1000]
    pins = oracle["cesaro_half_half_e0"]
    for k, n in enumerate(t.ns[1:], start=1):
        assert math.exp(t.cesaro_log[0, k]) == pytest.approx(pins[str(n)], rel=1e-10)
    assert t.decay_present == [True] and t.consistent


def test_cesaro_growth_r1_s1():
    t = cesaro_experiment(BandParams(1, 1), SPACES["l2"], 400)
    pw = np.exp(t.power_over_n_log[0])
    # ||B^n e_0||_2 = sqrt(binom(2n, n))
    for n, val in zip(t.ns, pw):
        assert val == pytest.approx(math.sqrt(comb(2 * n, n)) / n, rel=1e-9)
    assert t.growth_present == [True] and t.consistent


def test_cesaro_no_decay_r1_sm1():
    t = cesaro_experiment(BandParams(1, -1), SPACES["l2"], 200, probes=(0, 3))
    assert all(t.growth_present)
    assert np.all(np.exp(t.power_over_n_log[:, -1]) > 1.0)
    assert t.consistent


def test_cesaro_on_graded_space():
    t = cesaro_experiment(BandParams(0.3, 0.3), SPACES["s"], 200, grade=2)
    assert t.decay_present == [True] and t.consistent
    rows = list(t.rows())
    assert rows[0][:2] == (1, 0) and len(rows[0]) == 6


def test_cesaro_overflow_handled():
    t = cesaro_experiment(BandParams(3, 3), SPACES["l2"], 2000, points=5)
    assert np.all(np.isfinite(t.cesaro_log))
    assert t.power_over_n_log[0, -1] == pytest.approx(
        0.5 * (math.lgamma(4001) - 2 * math.lgamma(2001)) + 2000 * math.log(3) - math.log(2000), rel=1e-9)


def test_cesaro_validation():
    with pytest.raises(ValidationError):
        cesaro_experiment(BandParams(1, 1), SPACES["l2"], 5)
    with pytest.raises(ValidationError):
        cesaro_experiment(BandParams(1, 1), SPACES["l2"], 20, probes=(-1,))
