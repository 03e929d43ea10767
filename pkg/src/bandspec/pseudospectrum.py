"""epsilon-pseudospectra of weighted finite sections of B(r,s) - alpha I.

Every eigenvalue of a finite section equals r, yet the smallest singular
value of the m x m section is tiny across the whole spectrum disk.  This
module measures that shadow on a grid.

The weighted section T_v (B - alpha) T_v^{-1} is lower bidiagonal with
diagonal r - alpha and subdiagonal s v_n / v_{n-1}.  Multiplying rows and
columns by unimodular scalars does not change singular values, so only
a = |r - alpha| and e_n = |s| v_n / v_{n-1} matter.  In particular
sigma_min depends on alpha only through |r - alpha|.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded
from scipy.spatial import cKDTree

from .errors import ValidationError
from .operator import BandParams
from .weights import Unit, WeightFamily, log_weights, ratio_asymptotics

__all__ = ["GridSpec", "PseudoGrid", "sigma_min", "sigma_min_many", "sigma_min_inverse",
           "section_offdiagonal", "pseudo_grid", "SIGMA_FLOOR", "EPSILONS"]

SIGMA_FLOOR = 1e-280   # values at or below this are reported as the floor
EPSILONS = (1e-1, 1e-2, 1e-3)
_BISECT_RTOL = 1e-12
_BISECT_MAX = 80


def section_offdiagonal(b: BandParams, m: int, v: WeightFamily = Unit()) -> np.ndarray:
    """e_n = |s| v_n / v_{n-1}, n = 1..m-1."""
    if m < 2:
        return np.zeros(0)
    lv = log_weights(v, np.arange(m))
    return abs(b.s) * np.exp(np.diff(lv))


def _count_below(x: np.ndarray, a2: np.ndarray, e2: np.ndarray) -> np.ndarray:
    """#{singular values < x} for bidiagonals with diagonal a, subdiagonal e.

    Sturm count on the zero-diagonal Golub-Kahan tridiagonal whose
    off-diagonals are a, e_1, a, e_2, ..., a.
    """
    m = e2.size + 1
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        q = -x
        neg = (q < 0).astype(np.int64)
        for j in range(2 * m - 1):
            b2 = a2 if j % 2 == 0 else e2[j // 2]
            q = np.where(q == 0, -1e-300, q)
            q = -x - b2 / q
            neg += q < 0
    return neg - m


def sigma_min_many(a: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Smallest singular value for many diagonals a >= 0 sharing subdiagonal e.

    Geometric bisection on the Sturm count to relative width 1e-12.
    """
    a = np.asarray(a, dtype=float)
    out = np.zeros(a.shape)
    live = a > 0
    if not np.any(live):
        return out
    av = a[live]
    a2 = av * av
    e2 = np.asarray(e, dtype=float) ** 2
    emax = float(np.sqrt(e2.max())) if e2.size else 0.0
    hi = av * (1.0 + 1e-15)                     # sigma_min <= a (last column)
    lo = np.maximum(av - emax, SIGMA_FLOOR)     # Weyl
    lo = np.minimum(lo, hi * (1.0 - 1e-12))
    at_floor = _count_below(lo, a2, e2) >= 1
    lo = np.where(at_floor, SIGMA_FLOOR, lo)
    hi = np.where(at_floor, SIGMA_FLOOR, hi)
    for _ in range(_BISECT_MAX):
        open_ = hi > lo * (1.0 + _BISECT_RTOL)
        if not np.any(open_):
            break
        mid = np.sqrt(lo * hi)
        below = _count_below(mid, a2, e2) >= 1
        hi = np.where(open_ & below, mid, hi)
        lo = np.where(open_ & ~below, mid, lo)
    out[live] = np.sqrt(lo * hi)
    return out


def sigma_min(b: BandParams, alpha: complex, m: int, v: WeightFamily = Unit()) -> float:
    """Smallest singular value of the weighted m x m section of B - alpha I.

    Exactly 0 at alpha = r, where the first row of the section vanishes.
    """
    if int(m) != m or m < 1:
        raise ValidationError("section size must be a positive integer")
    a = abs(b.r - alpha)
    if a == 0:
        return 0.0
    return float(sigma_min_many(np.array([a]), section_offdiagonal(b, int(m), v))[0])


def sigma_min_inverse(b: BandParams, alpha: complex, m: int, v: WeightFamily = Unit(),
                      tol: float = 1e-12, maxiter: int = 500) -> float:
    """Same quantity by inverse power iteration on (A^H A)^{-1}.

    Each step is one upper and one lower bidiagonal solve.  The start vector
    is the lowest sine mode carrying the phase that aligns it with the
    dominant singular vector of the constant-coefficient section.  Returns 0
    if the solves overflow, i.e. when sigma_min is below about 1e-150.
    """
    if int(m) != m or m < 1:
        raise ValidationError("section size must be a positive integer")
    d = complex(b.r - alpha)
    if d == 0:
        return 0.0
    m = int(m)
    if m == 1:
        return abs(d)
    e = b.s * np.exp(np.diff(log_weights(v, np.arange(m))))
    lower = np.zeros((2, m), dtype=complex)      # A, lower bidiagonal
    lower[0] = d
    lower[1, :-1] = e
    upper = np.zeros((2, m), dtype=complex)      # A^H, upper bidiagonal
    upper[0, 1:] = e
    upper[1] = np.conj(d)
    n = np.arange(m)
    phase = -np.conj(d) * b.s / abs(d * b.s)
    x = np.sin(np.pi * (n + 1) / (m + 1)) * phase ** n
    x /= np.linalg.norm(x)
    lam_old = 0.0
    with np.errstate(over="raise", invalid="raise"):
        try:
            for _ in range(maxiter):
                w = solve_banded((0, 1), upper, x, check_finite=False)
                wn = np.linalg.norm(w)
                z = solve_banded((1, 0), lower, w / wn, check_finite=False)
                zn = np.linalg.norm(z)
                lam = wn * zn
                if not math.isfinite(lam) or lam == 0:
                    return 0.0
                x = z / zn
                if abs(lam - lam_old) <= tol * lam:
                    break
                lam_old = lam
        except (FloatingPointError, ValueError):
            return 0.0
    return 1.0 / math.sqrt(lam)


# ---------------------------------------------------------------------------
# grids

@dataclass(frozen=True)
class GridSpec:
    box: tuple = (-0.6, 2.6, -1.6, 1.6)   # re_lo, re_hi, im_lo, im_hi
    nx: int = 201
    ny: int = 201
    m: int = 300
    weight: WeightFamily = field(default_factory=Unit)

    def __post_init__(self):
        x0, x1, y0, y1 = (float(t) for t in self.box)
        if not (x0 < x1 and y0 < y1):
            raise ValidationError("grid box must have positive extent")
        if self.nx < 2 or self.ny < 2:
            raise ValidationError("grid needs at least 2 points per axis")
        if self.m < 1:
            raise ValidationError("section size must be a positive integer")
        object.__setattr__(self, "box", (x0, x1, y0, y1))

    @classmethod
    def around(cls, b: BandParams, weight: WeightFamily = Unit(), pad: float = 0.6, **kw) -> "GridSpec":
        """Square box about r containing the spectrum disk with relative padding ``pad``."""
        if pad < 0.25:
            raise ValidationError("padding must be at least 25% of the radius")
        R = ratio_asymptotics(weight).L * abs(b.s)
        h = R * (1.0 + pad)
        return cls((b.r - h, b.r + h, -h, h), weight=weight, **kw)

    def axes(self):
        x0, x1, y0, y1 = self.box
        return np.linspace(x0, x1, self.nx), np.linspace(y0, y1, self.ny)


@dataclass
class PseudoGrid:
    re: np.ndarray
    im: np.ndarray
    sigma: np.ndarray        # shape (ny, nx), row i has imaginary part im[i]
    center: float
    radius: float
    summary: dict

    def rows(self):
        """(re, im, sigma_min) in row-major order."""
        for i, y in enumerate(self.im):
            for j, x in enumerate(self.re):
                yield float(x), float(y), float(self.sigma[i, j])


def _threads() -> int:
    env = os.environ.get("BANDSPEC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValidationError("BANDSPEC_THREADS must be an integer") from None
    return os.cpu_count() or 1


def _hausdorff(A: np.ndarray, B: np.ndarray) -> float:
    if A.size == 0 and B.size == 0:
        return 0.0
    if A.size == 0 or B.size == 0:
        return math.inf
    da, _ = cKDTree(B).query(A)
    db, _ = cKDTree(A).query(B)
    return float(max(da.max(), db.max()))


def pseudo_grid(b: BandParams, spec: GridSpec = GridSpec(), eps=EPSILONS) -> PseudoGrid:
    """sigma_min over the grid, plus sublevel-set statistics per epsilon.

    Only the distinct values of |r - alpha| are evaluated; chunks are
    spread over BANDSPEC_THREADS workers and reassembled in order.
    """
    xs, ys = spec.axes()
    X, Y = np.meshgrid(xs, ys)
    dist = np.hypot(X - b.r, Y)
    uniq, inv = np.unique(dist, return_inverse=True)
    e = section_offdiagonal(b, spec.m, spec.weight)
    workers = min(_threads(), max(1, uniq.size // 2000))
    if workers > 1:
        chunks = np.array_split(uniq, workers)
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda c: sigma_min_many(c, e), chunks))
        vals = np.concatenate(parts)
    else:
        vals = sigma_min_many(uniq, e)
    sig = vals[inv].reshape(dist.shape)

    R = ratio_asymptotics(spec.weight).L * abs(b.s)
    pts = np.column_stack([X.ravel(), Y.ravel()])
    disk = dist.ravel() <= R
    levels = {}
    prev = None
    nested = True
    for ep in sorted(eps, reverse=True):
        mask = sig.ravel() < ep
        if prev is not None and np.any(mask & ~prev):
            nested = False
        prev = mask
        levels[f"{ep:g}"] = {
            "points": int(mask.sum()),
            "hausdorff_to_disk": _hausdorff(pts[mask], pts[disk]),
            "max_radius": float(dist.ravel()[mask].max()) if mask.any() else None,
        }
    summary = {
        "center": b.r,
        "predicted_radius": R,
        "m": spec.m,
        "section_eigenvalues": [b.r],
        "levels": levels,
        "nested": nested,
        "grid_spacing": [float(xs[1] - xs[0]), float(ys[1] - ys[0])],
    }
    return PseudoGrid(xs, ys, sig, b.r, R, summary)
