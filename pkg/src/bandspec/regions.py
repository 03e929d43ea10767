"""Symbolic subsets of C that are radial about a center.

Every spectral set in this package has the form
{alpha : lo <| |alpha - c| <| hi}, where each <| is < or <= depending on
whether the corresponding circle is included.  Disks, open disks, circles,
singletons, punctured disks and the whole plane are all special cases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["RadialRegion", "EMPTY"]


@dataclass(frozen=True)
class RadialRegion:
    center: float
    lo: float = 0.0
    hi: float = 0.0
    lo_closed: bool = True
    hi_closed: bool = True
    empty: bool = False

    # constructors -----------------------------------------------------
    @classmethod
    def disk(cls, center, radius):
        return cls(center, 0.0, radius, True, True)

    @classmethod
    def open_disk(cls, center, radius):
        if radius == 0:
            return EMPTY
        return cls(center, 0.0, radius, True, False)

    @classmethod
    def circle(cls, center, radius):
        return cls(center, radius, radius, True, True)

    @classmethod
    def singleton(cls, center):
        return cls(center, 0.0, 0.0, True, True)

    @classmethod
    def plane(cls, center=0.0):
        return cls(center, 0.0, math.inf, True, False)

    # queries ----------------------------------------------------------
    def contains_radius(self, d: float, rtol: float = 0.0) -> bool:
        if self.empty:
            return False
        tol_lo = rtol * max(self.lo, 1e-300)
        tol_hi = rtol * max(self.hi, 1e-300) if math.isfinite(self.hi) else 0.0
        if self.lo_closed:
            ok_lo = d >= self.lo - tol_lo
        else:
            ok_lo = d > self.lo + tol_lo
        if self.hi_closed:
            ok_hi = d <= self.hi + tol_hi
        else:
            ok_hi = d < self.hi - tol_hi
        return ok_lo and ok_hi

    def contains(self, alpha: complex, rtol: float = 0.0) -> bool:
        return self.contains_radius(abs(alpha - self.center), rtol)

    def is_subset(self, other: "RadialRegion") -> bool:
        """Inclusion for regions with a common center."""
        if self.empty:
            return True
        if other.empty:
            return False
        if self.center != other.center:
            raise ValueError("subset test needs a common center")
        lo_ok = (self.lo > other.lo) or (self.lo == other.lo and (other.lo_closed or not self.lo_closed))
        hi_ok = (self.hi < other.hi) or (self.hi == other.hi and (other.hi_closed or not self.hi_closed))
        return lo_ok and hi_ok

    @property
    def kind(self) -> str:
        if self.empty:
            return "empty"
        if math.isinf(self.hi):
            return "plane" if self.lo == 0 and self.lo_closed else "exterior"
        if self.lo == self.hi:
            return "singleton" if self.lo == 0 else "circle"
        if self.lo == 0 and self.lo_closed:
            return "closed_disk" if self.hi_closed else "open_disk"
        if self.lo == 0 and not self.lo_closed and self.hi_closed:
            return "punctured_disk"
        return "annulus"

    def to_json(self) -> dict:
        k = self.kind
        if k == "empty":
            return {"kind": "empty"}
        if k == "plane":
            return {"kind": "plane"}
        if k == "singleton":
            return {"kind": "singleton", "singleton": self.center}
        out = {"kind": k, "center": self.center, "radius": self.hi}
        if k in ("annulus", "exterior"):
            out.update(inner=self.lo, inner_closed=self.lo_closed, outer_closed=self.hi_closed)
        if k == "circle":
            out["radius"] = self.lo
        return out

    def __str__(self):
        k = self.kind
        if k == "empty":
            return "{}"
        if k == "plane":
            return "C"
        if k == "singleton":
            return f"{{{self.center:g}}}"
        if k == "circle":
            return f"|a - {self.center:g}| = {self.lo:g}"
        lo = ("<=" if self.lo_closed else "<")
        hi = ("<=" if self.hi_closed else "<")
        if self.lo == 0 and self.lo_closed:
            return f"|a - {self.center:g}| {hi} {self.hi:g}"
        return f"{self.lo:g} {lo} |a - {self.center:g}| {hi} {self.hi:g}"


EMPTY = RadialRegion(0.0, empty=True)
