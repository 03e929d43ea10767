"""Fine spectrum of B(r,s) on l_p(v), 1 < p < inf.

sigma is the closed disk of radius L|s| about r; the point spectrum is
empty; the residual part is the open disk of radius L1|s| plus, possibly,
its boundary circle; the rest of sigma is continuous.  Whether the L1
circle is residual is decided by membership of the geometric adjoint
eigenvector ((alpha - r)/s)^n in l_{p'}(1/v).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ContinuityFailure, UnboundedRatio
from .operator import BandParams, SeqVector
from .regions import EMPTY, RadialRegion
from .weights import (EDGE_RTOL, ConjugateExponent, RatioAsymptotics,
                      SeriesVerdict, Unit, WeightFamily, boundary_series_test,
                      ratio_asymptotics)

__all__ = ["PointClass", "FineSpectrum", "EigenMembership", "fine_spectrum",
           "classify_point", "adjoint_eigen_membership", "spectral_radius"]


class PointClass(enum.Enum):
    RESOLVENT = "resolvent"
    RESIDUAL = "residual"
    CONTINUOUS = "continuous"
    BOUNDARY_UNDETERMINED = "boundary_undetermined"


@dataclass(frozen=True)
class FineSpectrum:
    r: float
    s: float
    p: float
    ratios: RatioAsymptotics
    boundary_rule: SeriesVerdict      # series test on the circle |alpha - r| = L1|s|
    point_spectrum_empty: bool = True
    waelbroeck_equals_sigma: bool = True

    @property
    def sigma(self) -> RadialRegion:
        return RadialRegion.disk(self.r, self.ratios.L * abs(self.s))

    @property
    def residual_inner(self) -> RadialRegion:
        """The open L1-disk, always residual."""
        return RadialRegion.open_disk(self.r, self.ratios.L1 * abs(self.s))

    @property
    def residual(self) -> RadialRegion:
        R1 = self.ratios.L1 * abs(self.s)
        if self.boundary_rule is SeriesVerdict.CONVERGES:
            return RadialRegion.disk(self.r, R1)
        return RadialRegion.open_disk(self.r, R1)

    @property
    def continuous(self) -> RadialRegion:
        R1 = self.ratios.L1 * abs(self.s)
        R = self.ratios.L * abs(self.s)
        inner_closed = self.boundary_rule is SeriesVerdict.DIVERGES
        if R1 == R and not inner_closed:
            return EMPTY
        if R1 == 0 and not inner_closed:
            return RadialRegion(self.r, 0.0, R, False, True)
        return RadialRegion(self.r, R1, R, inner_closed, True)

    @property
    def adjoint_point(self) -> RadialRegion:
        return self.residual

    def to_json(self) -> dict:
        out = {
            "space": {"kind": "lp", "p": self.p},
            "band": {"r": self.r, "s": self.s},
            "ratios": {"N": self.ratios.N, "L": self.ratios.L, "L1": self.ratios.L1,
                       "exact": self.ratios.exact},
            "sigma": self.sigma.to_json(),
            "sigma_citation": "Thm charac spect",
            "point": {"kind": "empty"},
            "point_citation": "Thm charac spect p",
            "residual": self.residual.to_json(),
            "residual_citation": "Thm charac spect r; Remark oss1",
            "continuous": self.continuous.to_json(),
            "continuous_citation": "Thm charac spect c",
            "boundary_rule": self.boundary_rule.value,
            "adjoint_point": self.adjoint_point.to_json(),
            "adjoint_point_citation": "Thm charac spect r",
            "waelbroeck": self.sigma.to_json(),
            "waelbroeck_citation": "Banach space: sigma* = sigma",
        }
        if self.boundary_rule is SeriesVerdict.UNDETERMINED:
            out["residual_boundary"] = "undetermined"
        return out


def fine_spectrum(b: BandParams, p: float, v: WeightFamily = Unit()) -> FineSpectrum:
    ConjugateExponent(p)
    try:
        ra = ratio_asymptotics(v)
    except UnboundedRatio as exc:
        raise ContinuityFailure(str(exc)) from exc
    rule = boundary_series_test(v, p, ra.L1)
    return FineSpectrum(b.r, b.s, float(p), ra, rule)


def _on_circle(d: float, R: float) -> bool:
    return abs(d - R) <= EDGE_RTOL * max(R, 1e-300)


def classify_point(fs: FineSpectrum, alpha: complex) -> PointClass:
    """Exactly one class per point; the class depends only on |alpha - r|."""
    d = abs(alpha - fs.r)
    R = fs.ratios.L * abs(fs.s)
    R1 = fs.ratios.L1 * abs(fs.s)
    if _on_circle(d, R1):
        return {SeriesVerdict.CONVERGES: PointClass.RESIDUAL,
                SeriesVerdict.DIVERGES: PointClass.CONTINUOUS,
                SeriesVerdict.UNDETERMINED: PointClass.BOUNDARY_UNDETERMINED}[fs.boundary_rule]
    if d < R1:
        return PointClass.RESIDUAL
    if d > R and not _on_circle(d, R):
        return PointClass.RESOLVENT
    return PointClass.CONTINUOUS


@dataclass(frozen=True)
class EigenMembership:
    member: bool | None
    generator: SeqVector | None = None


def adjoint_eigen_membership(b: BandParams, alpha: complex, p: float,
                             v: WeightFamily = Unit(), m: int = 64) -> EigenMembership:
    """Is alpha an eigenvalue of B* on l_{p'}(1/v)?

    The only candidate eigenvector is x_n = ((alpha - r)/s)^n; membership
    is the boundary series test at rho = |alpha - r|/|s|.  When it holds,
    the first m entries of x are returned.
    """
    rho = abs(alpha - b.r) / abs(b.s)
    ra = ratio_asymptotics(v)
    if _on_circle(rho, ra.L1):
        rho = ra.L1
    verdict = boundary_series_test(v, p, rho)
    if verdict is SeriesVerdict.UNDETERMINED:
        return EigenMembership(None)
    if verdict is SeriesVerdict.DIVERGES:
        return EigenMembership(False)
    q = (alpha - b.r) / b.s
    x = q ** np.arange(m, dtype=float)
    # the eigenvector has infinite support, so the tail is not zero
    return EigenMembership(True, SeqVector(x, tail_zero=(q == 0)))


def spectral_radius(b: BandParams, v: WeightFamily = Unit()) -> float:
    """|r| + L|s|, the largest modulus over the spectrum disk."""
    return abs(b.r) + ratio_asymptotics(v).L * abs(b.s)
