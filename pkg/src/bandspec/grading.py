"""Power series spaces Lambda_inf(alpha) and their strong duals.

Lambda_inf(alpha) is the intersection over k of l_2(v_k) with
v_k(n) = e^{k alpha_n}; its dual is the union of l_2(1/v_k).  The fine
spectrum depends only on l = lim (alpha_{n+1} - alpha_n) and on whether we
are on the space or on its dual.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AggregationViolation, HypothesisFailure
from .operator import BandParams
from .regions import EMPTY, RadialRegion
from .spectra import FineSpectrum, fine_spectrum
from .weights import (Affine, AlphaSequence, LogShift,
                      SeriesVerdict, check_alpha_gap_limit, grade_weight)

__all__ = ["PowerSeriesSpace", "GradedFineSpectrum", "GradeRecord",
           "CrosscheckReport", "validate_space", "graded_fine_spectrum",
           "per_grade_crosscheck"]

DEFAULT_K_MAX = 6


@dataclass(frozen=True)
class PowerSeriesSpace:
    alpha: AlphaSequence
    l: float
    log_bound_c: float | None
    nuclear: bool
    dual: bool

    @property
    def label(self) -> str:
        return "lambda-dual" if self.dual else "lambda"


def _log_bound(alpha: AlphaSequence) -> float | None:
    """Largest c with alpha_n >= c log(n+1) for all n, or None."""
    if isinstance(alpha, LogShift):
        return 1.0
    if isinstance(alpha, Affine):
        # n >= log(n+1) for n >= 0
        return alpha.slope
    vals = alpha.stored
    n = np.arange(1, vals.size)
    ratios = vals[1:] / np.log1p(n)
    c = float(ratios.min())
    if alpha.declared_l == 0:
        return c if c > 0 else None
    # the linear continuation keeps alpha_n / log(n+1) growing
    return c if c > 0 else None


def _nuclear(alpha: AlphaSequence) -> bool:
    # sup_n log(n+1) / alpha_{n+1} < inf
    if isinstance(alpha, (LogShift, Affine)):
        return True
    vals = alpha.stored
    if np.any(vals[1:] <= 0):
        return False
    if alpha.declared_l > 0:
        return True
    # with l = 0 the stored data must already carry a log lower bound
    return _log_bound(alpha) is not None


def validate_space(alpha: AlphaSequence, dual: bool = False) -> PowerSeriesSpace:
    """Check the hypotheses on alpha and record l, c and nuclearity.

    l must exist and be finite.  A primal space with l = 0 also needs
    alpha_n >= c log(n+1) for some c > 0; with l > 0 this is automatic.
    """
    if not check_alpha_gap_limit(alpha):
        raise HypothesisFailure(
            "lim (alpha_{n+1} - alpha_n) does not exist: tail gaps do not settle at the declared limit")
    l = float(alpha.gap_limit)
    if not math.isfinite(l):
        raise HypothesisFailure("lim (alpha_{n+1} - alpha_n) must be finite")
    c = _log_bound(alpha)
    if not dual and l == 0 and c is None:
        raise HypothesisFailure(
            "l = 0 on Lambda_inf(alpha) requires alpha_n >= c log(n+1) for some c > 0")
    return PowerSeriesSpace(alpha, l, c, _nuclear(alpha), bool(dual))


@dataclass(frozen=True)
class GradedFineSpectrum:
    sigma: RadialRegion
    residual: RadialRegion
    continuous: RadialRegion
    point: RadialRegion
    waelbroeck: RadialRegion
    citation: str

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "residual": self.residual.to_json(),
            "continuous": self.continuous.to_json(),
            "point": self.point.to_json(),
            "waelbroeck": self.waelbroeck.to_json(),
            "citation": self.citation,
        }


def graded_fine_spectrum(b: BandParams, sp: PowerSeriesSpace) -> GradedFineSpectrum:
    r, R = b.r, abs(b.s)
    if not sp.dual and sp.l == 0:
        disk = RadialRegion.disk(r, R)
        return GradedFineSpectrum(disk, disk, EMPTY, EMPTY, disk, "Thm T.s(1)")
    if not sp.dual:
        plane = RadialRegion.plane(r)
        return GradedFineSpectrum(plane, plane, EMPTY, EMPTY, plane, "Thm T.s(2)")
    if sp.l == 0:
        return GradedFineSpectrum(RadialRegion.disk(r, R), RadialRegion.open_disk(r, R),
                                  RadialRegion.circle(r, R), EMPTY, RadialRegion.disk(r, R),
                                  "Thm T.s1(1)")
    pt = RadialRegion.singleton(r)
    return GradedFineSpectrum(pt, pt, EMPTY, EMPTY, pt, "Thm T.s1(2)")


@dataclass(frozen=True)
class GradeRecord:
    k: int
    N: float
    L: float
    L1: float
    sigma_radius: float
    residual_radius: float
    boundary_rule: SeriesVerdict


@dataclass
class CrosscheckReport:
    space: str
    l: float
    grades: list = field(default_factory=list)
    aggregate: RadialRegion | None = None
    graded_sigma: RadialRegion | None = None
    citation: str = ""

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "l": self.l,
            "citation": self.citation,
            "aggregate": self.aggregate.to_json() if self.aggregate else None,
            "graded_sigma": self.graded_sigma.to_json() if self.graded_sigma else None,
            "grades": [
                {"k": g.k, "N": g.N, "L": g.L, "L1": g.L1, "sigma_radius": g.sigma_radius,
                 "residual_radius": g.residual_radius, "boundary_rule": g.boundary_rule.value}
                for g in self.grades
            ],
        }


def per_grade_crosscheck(b: BandParams, sp: PowerSeriesSpace,
                         k_max: int = DEFAULT_K_MAX) -> CrosscheckReport:
    """Compute the l_2 fine spectrum on grades 1..k_max and test aggregation.

    Primal: sigma(B, Lambda) must sit inside the union of the grade spectra.
    Dual: sigma(B, Lambda') must sit inside the intersection over m of the
    unions over k >= m.  The grade radii are e^{+-k l}|s|, so both limits
    are read off from the monotone radius sequence.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    graded = graded_fine_spectrum(b, sp)
    rep = CrosscheckReport(sp.label, sp.l, graded_sigma=graded.sigma, citation=(
        "Lemma L33(iii)" if sp.dual else "Lemma L32(i)"))
    fss: list[FineSpectrum] = []
    for k in range(1, k_max + 1):
        fs = fine_spectrum(b, 2.0, grade_weight(sp.alpha, k, dual=sp.dual))
        fss.append(fs)
        ra = fs.ratios
        if not math.isfinite(ra.N):
            raise AggregationViolation(f"grade {k}: B(r,s) not continuous")
        if not fs.point_spectrum_empty:
            raise AggregationViolation(f"grade {k}: non-empty point spectrum")
        rep.grades.append(GradeRecord(k, ra.N, ra.L, ra.L1, ra.L * abs(b.s),
                                      ra.L1 * abs(b.s), fs.boundary_rule))

    radii = np.array([g.sigma_radius for g in rep.grades])
    steps = np.diff(radii)
    if sp.dual:
        if np.any(steps > 1e-12 * radii[:-1]):
            raise AggregationViolation("dual grade radii must be non-increasing")
        # intersection of tails: limit radius, 0 when the radii decay geometrically
        ratio = radii[-1] / radii[-2]
        limit = 0.0 if ratio < 1.0 - 1e-12 else float(radii[-1])
        rep.aggregate = RadialRegion.disk(b.r, limit) if limit > 0 else RadialRegion.singleton(b.r)
    else:
        if np.any(steps < -1e-12 * radii[:-1]):
            raise AggregationViolation("primal grade radii must be non-decreasing")
        ratio = radii[-1] / radii[-2]
        if ratio > 1.0 + 1e-12:
            rep.aggregate = RadialRegion.plane(b.r)
        else:
            rep.aggregate = RadialRegion.disk(b.r, float(radii.max()))

    if graded.sigma.kind == "plane":
        ok = rep.aggregate.kind == "plane"
    else:
        ok = graded.sigma.is_subset(rep.aggregate)
    if not ok:
        raise AggregationViolation(
            f"sigma on {sp.label} = {graded.sigma} not inside aggregate {rep.aggregate}")

    # residual parts: on the primal l = 0 space every grade past 1/c has a
    # closed residual disk; on the dual l = 0 space every grade has an open one
    if sp.l == 0:
        for g in rep.grades:
            if sp.dual and g.boundary_rule is not SeriesVerdict.DIVERGES:
                raise AggregationViolation(f"dual grade {g.k}: boundary circle should be continuous")
            if (not sp.dual and sp.log_bound_c is not None and g.k * sp.log_bound_c > 1
                    and g.boundary_rule is not SeriesVerdict.CONVERGES):
                raise AggregationViolation(f"grade {g.k}: boundary circle should be residual")
    return rep
