"""Deterministic self-checks behind ``bandspec verify``."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .ergodics import SpaceDescriptor, Verdict, check_chain, classify_ergodic, growth_experiment
from .grading import graded_fine_spectrum, per_grade_crosscheck, validate_space
from .operator import BandParams, SeqVector, apply, apply_adjoint, cesaro_apply, power_column
from .pseudospectrum import GridSpec, pseudo_grid
from .regions import EMPTY, RadialRegion
from .resolvent import resolvent_apply
from .spectra import adjoint_eigen_membership, fine_spectrum
from .weights import (Affine, AlphaTable, GeometricExp, LogShift, SeriesVerdict, Unit,
                      boundary_series_test)

__all__ = ["CheckResult", "CHECKS", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _weights():
    return {
        "unit": Unit(),
        "2^n": GeometricExp(2.0, Affine(1.0, 0.0)),
        "n+1": GeometricExp(math.e, LogShift()),
        "2^n(n+1)": GeometricExp(2.0, AlphaTable.from_function(
            lambda n: n + np.log2(n + 1.0), 4096, 1.0)),
    }


def check_unit_regression(rng):
    fs = fine_spectrum(BandParams(1, -1), 2.0)
    ok = (fs.sigma == RadialRegion.disk(1.0, 1.0)
          and fs.residual == RadialRegion.open_disk(1.0, 1.0)
          and fs.continuous == RadialRegion.circle(1.0, 1.0)
          and fs.point_spectrum_empty)
    return ok, f"sigma={fs.sigma}, residual={fs.residual}, continuous={fs.continuous}"


def check_resolvent_identity(rng):
    m = 512
    worst = 0.0
    for name, v in _weights().items():
        b = BandParams(float(rng.uniform(-2, 2) or 1.0), float(rng.choice([-1, 1]) * rng.uniform(0.2, 1.5)))
        R = fine_spectrum(b, 2.0, v).sigma.hi
        for _ in range(5):
            rad = R * rng.uniform(1.05, 3.0) + 1e-3
            alpha = b.r + rad * np.exp(1j * rng.uniform(0, 2 * np.pi))
            y = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            x = resolvent_apply(b, alpha, SeqVector(y), v=v)
            res = np.asarray(apply(b, x)) - alpha * np.asarray(x) - y
            worst = max(worst, np.linalg.norm(res[: m - 1]) / np.linalg.norm(y))
    return worst <= 1e-10, f"max relative residual {worst:.3e}"


def check_adjoint_eigenvector(rng):
    b = BandParams(0.7, -1.3)
    worst = 0.0
    for _ in range(20):
        alpha = b.r + abs(b.s) * rng.uniform(0, 0.95) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        em = adjoint_eigen_membership(b, alpha, 2.0, Unit(), m=64)
        if not em.member:
            return False, f"membership false at {alpha}"
        x = np.asarray(em.generator)
        y = np.asarray(apply_adjoint(b, em.generator))
        err = np.abs(y[:-1] - alpha * x[:-1]) / np.maximum(np.abs(alpha * x[:-1]), 1e-300)
        worst = max(worst, float(err.max()))
    return worst <= 1e-12, f"max relative error {worst:.3e}"


def check_growth(rng):
    cases = [(BandParams(1, -1), Unit(), 2.0),
             (BandParams(1, 1), GeometricExp(2.0, Affine(1.0, 0.0)), 3.0),
             (BandParams(1, 1), GeometricExp(math.e, LogShift()), 2.0)]
    errs = [abs(growth_experiment(b, v, 5000).rate - want) / want for b, v, want in cases]
    return max(errs) <= 0.02, "relative errors " + ", ".join(f"{e:.4f}" for e in errs)


def check_ergodic_grid(rng):
    grid = np.linspace(-1.5, 1.5, 20)
    spaces = [SpaceDescriptor.lp(2.0), SpaceDescriptor.lp(2.0, GeometricExp(math.e, LogShift())),
              SpaceDescriptor.lambda_(LogShift()), SpaceDescriptor.lambda_(Affine(1.0, 1.0)),
              SpaceDescriptor.lambda_(LogShift(), dual=True),
              SpaceDescriptor.lambda_(Affine(1.0, 1.0), dual=True)]
    flips = 0
    for r in grid:
        for s in grid:
            b = BandParams(r, s)
            for sd in spaces:
                rep = classify_ergodic(b, sd)
                if check_chain(rep):
                    return False, f"chain violation at r={r}, s={s}, {sd.kind}"
            rep = classify_ergodic(b, spaces[0])
            want = Verdict.HOLDS if abs(r) + abs(s) <= 1 else Verdict.FAILS
            if rep.power_bounded.verdict is not want or rep.mean_ergodic.verdict is not want:
                flips += 1
    return flips == 0, f"{flips} threshold mismatches on the l2 grid"


def check_cesaro(rng):
    b = BandParams(0.5, 0.5)
    x = SeqVector.basis(0, 1)
    m = 10_001
    prev = np.asarray(cesaro_apply(b, 9_999, x, m=m))
    cur = np.asarray(cesaro_apply(b, 10_000, x, m=m))
    norm = float(np.linalg.norm(cur))
    lhs = np.asarray(power_column(b, 10_000, m)) / 10_000
    err = float(np.max(np.abs(lhs - (cur - (9_999 / 10_000) * prev))))
    return norm < 0.2 and err <= 1e-12, f"||T_[1e4] e_0|| = {norm:.4f}, recurrence error {err:.2e}"


def check_pseudospectrum(rng):
    b = BandParams(1, -1)
    g = pseudo_grid(b, GridSpec(nx=41, ny=41, m=300))
    X, Y = np.meshgrid(g.re, g.im)
    d = np.hypot(X - 1, Y)
    inner = float(g.sigma[d < 0.8].max())
    outer = float(g.sigma[d > 1.5].min())
    ok = inner < 1e-3 and outer > 0.5 and g.summary["nested"]
    return ok, f"max inside {inner:.2e}, min outside {outer:.4f}"


def check_graded(rng):
    b = BandParams(1, -1)
    s1 = graded_fine_spectrum(b, validate_space(LogShift()))
    s2 = graded_fine_spectrum(b, validate_space(Affine(1, 1)))
    s3 = graded_fine_spectrum(BandParams(2, 5), validate_space(Affine(1, 1), dual=True))
    ok = (s1.sigma == RadialRegion.disk(1.0, 1.0) and s1.residual == s1.sigma and s1.continuous is EMPTY
          and s2.sigma.kind == "plane" and s3.sigma == RadialRegion.singleton(2.0))
    for alpha in (LogShift(), Affine(1, 1)):
        for dual in (False, True):
            per_grade_crosscheck(b, validate_space(alpha, dual), 6)
    return ok, "Lambda: disk, C; dual: singleton; per-grade aggregation clean"


def check_boundary_series(rng):
    v3 = _weights()["2^n(n+1)"]
    got = (boundary_series_test(Unit(), 2.0, 0.5),
           boundary_series_test(GeometricExp(2.0, Affine(1.0, 0.0)), 2.0, 2.0),
           boundary_series_test(v3, 2.0, 2.0))
    want = (SeriesVerdict.CONVERGES, SeriesVerdict.DIVERGES, SeriesVerdict.CONVERGES)
    return got == want, ", ".join(g.value for g in got)


CHECKS = [
    ("unit_regression", check_unit_regression),
    ("resolvent_identity", check_resolvent_identity),
    ("adjoint_eigenvector", check_adjoint_eigenvector),
    ("growth_rate", check_growth),
    ("ergodic_grid", check_ergodic_grid),
    ("cesaro_decay", check_cesaro),
    ("pseudospectrum_disk", check_pseudospectrum),
    ("graded_spectra", check_graded),
    ("boundary_series", check_boundary_series),
]


def run_checks(seed: int = 0) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        rng = np.random.default_rng(seed)
        t0 = time.perf_counter()
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, not a crashed run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return out
