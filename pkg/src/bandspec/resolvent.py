"""The inverse (B(r,s) - alpha I)^{-1} off the spectrum disk.

The inverse is lower-triangular Toeplitz with kernel
d_j = (-s)^j / (r - alpha)^{j+1}.  It is applied through the bidiagonal
forward recurrence, which is the same thing in exact arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SpectrumViolation
from .operator import BandParams, SeqVector, TruncationConfig, _as_seq
from .weights import (TAIL_RTOL, Unit, WeightFamily, log_weights,
                      ratio_asymptotics, tail_ratio_sup)

__all__ = ["ResolventEvaluation", "Certificates", "resolvent_kernel",
           "resolvent_apply", "summability_certificates", "check_exterior"]


@dataclass(frozen=True)
class ResolventEvaluation:
    alpha: complex
    tail_ratio: float   # L|s| / |r - alpha|
    tail_bound: float   # geometric bound 1 / (|r - alpha| (1 - q)) on kernel row sums

    def kernel(self, b: BandParams, m: int) -> np.ndarray:
        return resolvent_kernel(b, self.alpha, m)


def check_exterior(b: BandParams, alpha: complex, v: WeightFamily = Unit()) -> ResolventEvaluation:
    """Refuse points inside or on the closed disk of radius L|s| about r."""
    L = ratio_asymptotics(v).L
    dist = abs(b.r - alpha)
    if not dist > L * abs(b.s):
        raise SpectrumViolation(
            f"alpha={alpha} satisfies |r - alpha| = {dist:.6g} <= L|s| = {L * abs(b.s):.6g}; "
            "it lies in the spectrum disk")
    q = L * abs(b.s) / dist
    return ResolventEvaluation(complex(alpha), q, 1.0 / (dist * (1.0 - q)))


def resolvent_kernel(b: BandParams, alpha: complex, m: int) -> np.ndarray:
    """d_j = (-s)^j / (r - alpha)^{j+1}, j = 0..m-1."""
    d = b.r - alpha
    j = np.arange(m)
    return (-b.s / d) ** j / d


def resolvent_apply(b: BandParams, alpha: complex, y, cfg: TruncationConfig | None = None,
                    v: WeightFamily = Unit()) -> SeqVector:
    """x = (B - alpha I)^{-1} y via x_n = (y_n - s x_{n-1}) / (r - alpha)."""
    check_exterior(b, alpha, v)
    y = _as_seq(y)
    if cfg is not None:
        y = y.padded(cfg.m)
    d = b.r - alpha
    e = y.entries
    x = np.empty(e.size, dtype=complex)
    prev = 0.0
    for n in range(e.size):
        prev = (e[n] - b.s * prev) / d
        x[n] = prev
    # an unknown input tail never reaches indices < m; the output tail is
    # generally non-zero (the inverse is not banded)
    return SeqVector(x, False, y.known)


@dataclass(frozen=True)
class Certificates:
    row_sup: float       # upper bound, sup_n sum_{k<=n} |kernel| v_n / v_k
    col_sup: float       # upper bound, sup_k sum_{n>=k} |kernel| v_n / v_k
    row_partial: float   # largest exactly summed row (lower bound)
    col_partial: float   # largest exactly summed column prefix (lower bound)
    tail_ratio: float
    both_finite: bool


def summability_certificates(b: BandParams, alpha: complex, v: WeightFamily = Unit(),
                             p: float = 2.0, horizon: int = 256) -> Certificates:
    """Row- and column-sum certificates for the conjugated resolvent matrix.

    Entries with index below 2*horizon are summed exactly (in log-domain);
    everything beyond is bounded by a geometric tail using a ratio bound a
    with v_{j+1} <= a v_j for j >= 2*horizon.  The tail is only claimed
    when a lies in the tolerance band of L and q0*a < 1, where
    q0 = |s| / |r - alpha|.

    The two sums are the l_1 and l_inf operator-norm conditions; l_p for
    1 < p < inf follows by interpolation, so ``p`` does not change them.
    """
    ev = check_exterior(b, alpha, v)
    dist = abs(b.r - alpha)
    lq = math.log(abs(b.s) / dist)
    nmax = 2 * int(horizon)
    idx = np.arange(nmax + 1)
    lv = log_weights(v, idx)
    L = ratio_asymptotics(v).L
    a = tail_ratio_sup(v, nmax)
    qa = abs(b.s) / dist * a
    claim = qa < 1.0 and a <= L * (1.0 + TAIL_RTOL)

    # log of |s/(r-alpha)|^{n-k} v_n / v_k on the lower triangle n >= k
    n_ = idx[:nmax, None]
    k_ = idx[None, :nmax]
    with np.errstate(invalid="ignore"):
        logt = np.where(n_ >= k_, (n_ - k_) * lq + lv[:nmax, None] - lv[None, :nmax], -np.inf)
    t = np.exp(np.minimum(logt, 700.0))
    rows = t.sum(axis=1)          # exact rows n < nmax
    cols = t.sum(axis=0)          # column prefixes, n < nmax
    row_partial = float(rows.max())
    col_partial = float(cols[: int(horizon)].max())

    if not claim:
        return Certificates(math.inf, math.inf, row_partial / dist, col_partial / dist,
                            ev.tail_ratio, False)

    # columns k < nmax: exact prefix over n < nmax plus the tail beyond;
    # columns k >= nmax are bounded by the pure geometric series
    kk = idx[:nmax]
    tail_cols = np.exp((nmax - kk) * lq + lv[nmax] - lv[kk]) / (1.0 - qa)
    col_bound = max(float((cols + tail_cols).max()), 1.0 / (1.0 - qa))

    # rows n >= nmax: 1/(1-qa) + max(0, q0*T - qa/(1-qa)),
    # T = sum_{i<nmax} q0^i v_nmax / v_{nmax-1-i}
    i = np.arange(nmax)
    T = float(np.exp(i * lq + lv[nmax] - lv[nmax - 1 - i]).sum())
    q0 = abs(b.s) / dist
    far_rows = 1.0 / (1.0 - qa) + max(0.0, q0 * T - qa / (1.0 - qa))
    row_bound = max(row_partial, far_rows)

    finite = math.isfinite(row_bound) and math.isfinite(col_bound)
    return Certificates(row_bound / dist, col_bound / dist, row_partial / dist,
                        col_partial / dist, ev.tail_ratio, finite)
