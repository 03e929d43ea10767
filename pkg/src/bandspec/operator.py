"""The lower-bidiagonal operator B(r,s): (Bx)_n = s x_{n-1} + r x_n.

Lower triangularity makes truncation exact: the first m entries of B^n x
depend only on the first m entries of x, so P_m B^n P_m = (P_m B P_m)^n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import ValidationError
from .weights import Unit, WeightFamily, ratio_asymptotics

__all__ = [
    "BandParams", "SeqVector", "TruncationConfig",
    "apply", "apply_adjoint", "power_column", "log_power_column",
    "cesaro_apply", "finite_section",
]


@dataclass(frozen=True)
class BandParams:
    r: float
    s: float

    def __post_init__(self):
        for name in ("r", "s"):
            val = getattr(self, name)
            if isinstance(val, complex) or not math.isfinite(val):
                raise ValidationError(f"{name} must be a finite real number, got {val!r}")
            if val == 0:
                raise ValidationError(f"{name} must be non-zero (standing hypothesis r, s != 0)")
            object.__setattr__(self, name, float(val))


@dataclass(frozen=True)
class TruncationConfig:
    m: int = 512
    tol: float = 1e-10

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ValidationError(f"truncation length must be an integer >= 2, got {self.m}")
        if not self.tol > 0:
            raise ValidationError("tol must be positive")


@dataclass(frozen=True, eq=False)
class SeqVector:
    """Finitely supported complex sequence x_0..x_{m-1}.

    ``tail_zero`` asserts that entries at index >= m vanish; ``known`` is
    the number of leading entries that are exact (entries past it may have
    been contaminated by an unknown tail).
    """

    entries: np.ndarray
    tail_zero: bool = True
    known: int | None = None

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex).ravel()
        if arr.size < 1:
            raise ValidationError("SeqVector needs at least one entry")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("SeqVector entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        known = arr.size if self.known is None else int(self.known)
        object.__setattr__(self, "known", max(0, min(known, arr.size)))

    @property
    def m(self) -> int:
        return self.entries.size

    def __len__(self):
        return self.entries.size

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @classmethod
    def basis(cls, k: int, m: int) -> "SeqVector":
        e = np.zeros(m, dtype=complex)
        e[k] = 1.0
        return cls(e)

    def padded(self, m: int) -> "SeqVector":
        """Extend with zeros to length m (only legal on an asserted-zero tail)."""
        if m <= self.m:
            return self
        if not self.tail_zero:
            raise ValidationError("cannot pad a vector whose tail is unknown")
        out = np.zeros(m, dtype=complex)
        out[: self.m] = self.entries
        return SeqVector(out, True, m if self.known == self.m else self.known)


def _as_seq(x) -> SeqVector:
    return x if isinstance(x, SeqVector) else SeqVector(np.asarray(x))


def apply(b: BandParams, x) -> SeqVector:
    x = _as_seq(x)
    e = x.entries
    y = b.r * e
    y[1:] += b.s * e[:-1]
    # forward influence of x_{m-1} on index m is dropped
    tail_zero = x.tail_zero and e[-1] == 0
    return SeqVector(y, tail_zero, x.known)


def apply_adjoint(b: BandParams, x) -> SeqVector:
    """(B* x)_n = r x_n + s x_{n+1}."""
    x = _as_seq(x)
    e = x.entries
    y = b.r * e
    y[:-1] += b.s * e[1:]
    known = x.known if (x.tail_zero and x.known == x.m) else max(0, min(x.known, x.m) - 1)
    return SeqVector(y, x.tail_zero, known)


def log_power_column(b: BandParams, n: int):
    """log|B^n e_0| and its sign, entries binom(n,k) r^{n-k} s^k for k <= n."""
    if int(n) != n or n < 0:
        raise ValidationError("power must be a non-negative integer")
    k = np.arange(n + 1)
    logmag = (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
              + (n - k) * math.log(abs(b.r)) + k * math.log(abs(b.s)))
    sr = -1.0 if b.r < 0 else 1.0
    ss = -1.0 if b.s < 0 else 1.0
    sign = sr ** ((n - k) % 2) * ss ** (k % 2)
    return logmag, sign


def power_column(b: BandParams, n: int, m: int | None = None) -> SeqVector:
    """B^n e_0 as a vector of length max(n+1, m)."""
    logmag, sign = log_power_column(b, n)
    if logmag.max() > 709.0:
        raise OverflowError("B^n e_0 overflows double precision; use log_power_column")
    size = max(n + 1, m or 0)
    out = np.zeros(size, dtype=complex)
    out[: n + 1] = sign * np.exp(logmag)
    return SeqVector(out)


def cesaro_apply(b: BandParams, n: int, x, m: int | None = None) -> SeqVector:
    """T_[n] x = (1/n) sum_{j=1}^n B^j x by iterated application.

    With ``m`` the input is zero-padded first; m >= len(x) + n keeps the
    whole result exact.
    """
    if int(n) != n or n < 1:
        raise ValidationError("Cesaro index must be a positive integer")
    x = _as_seq(x)
    if m is not None:
        x = x.padded(m)
    cur = x.entries.copy()
    acc = np.zeros_like(cur)
    tail_zero = x.tail_zero
    for _ in range(int(n)):
        if cur[-1] != 0:
            tail_zero = False
        nxt = b.r * cur
        nxt[1:] += b.s * cur[:-1]
        cur = nxt
        acc += cur
    return SeqVector(acc / n, tail_zero, x.known)


def finite_section(b: BandParams, m: int) -> np.ndarray:
    """The m x m upper-left corner: r on the diagonal, s below it."""
    if int(m) != m or m < 1:
        raise ValidationError("section size must be a positive integer")
    A = np.diag(np.full(m, b.r))
    if m > 1:
        A[np.arange(1, m), np.arange(m - 1)] = b.s
    return A


@dataclass(frozen=True)
class NormBounds:
    """Operator norm estimates on lp(v).

    ``quotient_sup`` is the sup over k of ||B e_k|| / ||e_k||, i.e.
    (|r|^p + N^p |s|^p)^(1/p).  ``remark_form`` is (|r|^p + N |s|^p)^(1/p),
    the other candidate lower bound; the two differ unless N = 1, and
    ``discrepant`` says so rather than picking one.
    """
    upper: float
    quotient_sup: float
    remark_form: float
    discrepant: bool


def norm_bounds(b: BandParams, p: float, v: WeightFamily = Unit()) -> NormBounds:
    if not 1 <= p < math.inf:
        raise ValidationError("p must lie in [1, inf)")
    N = ratio_asymptotics(v).N
    r, s = abs(b.r), abs(b.s)
    q = (r ** p + (N * s) ** p) ** (1 / p)
    rf = (r ** p + N * s ** p) ** (1 / p)
    return NormBounds(r + N * s, q, rf, not math.isclose(q, rf, rel_tol=1e-12))
