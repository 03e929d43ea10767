"""Weight sequences v = (v_n) and their consecutive-ratio asymptotics.

Three numbers drive everything downstream: N = sup v_{n+1}/v_n (continuity
and the operator-norm bound), L = limsup (spectral radius of the disk) and
L1 = liminf (radius of the residual part).  Closed-form families give them
exactly; tabulated weights must declare L and L1 because finite data cannot
determine a limsup.

All weight evaluation happens in log-domain; the linear path is only taken
when every log-magnitude stays inside ``LINEAR_RANGE``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np
from scipy.special import logsumexp

from .errors import DeclaredMismatch, UnboundedRatio, ValidationError

LINEAR_RANGE = 300.0
TAIL_FRACTION = 0.25
TAIL_RTOL = 0.05
# Boundary-circle equality test for rho against L1 (relative).
EDGE_RTOL = 1e-12

__all__ = [
    "Affine", "LogShift", "AlphaTable", "AlphaSequence",
    "Unit", "GeometricExp", "WeightTable", "WeightFamily",
    "RatioAsymptotics", "ConjugateExponent", "SeriesVerdict", "NormValue",
    "alpha_values", "log_weights", "ratio_asymptotics", "tail_ratio_sup",
    "weighted_norm", "weighted_norm_log", "boundary_series_test",
    "grade_weight", "reciprocal", "check_alpha_gap_limit",
]


# ---------------------------------------------------------------------------
# exponent sequences alpha_n

@dataclass(frozen=True)
class Affine:
    """alpha_n = slope * n + offset."""

    slope: float
    offset: float = 0.0

    def __post_init__(self):
        if not self.slope > 0 or not math.isfinite(self.slope):
            raise ValidationError(f"Affine slope must be positive and finite, got {self.slope}")
        if not self.offset >= 0 or not math.isfinite(self.offset):
            raise ValidationError(f"Affine offset must be non-negative, got {self.offset}")

    def values(self, n):
        return self.slope * np.asarray(n, dtype=float) + self.offset

    @property
    def gap_limit(self) -> float:
        return self.slope

    @property
    def gap_sup(self) -> float:
        return self.slope

    @property
    def gap_inf(self) -> float:
        return self.slope

    def gap_sup_from(self, n: int) -> float:
        return self.slope

    def gap_inf_from(self, n: int) -> float:
        return self.slope

    exact = True


@dataclass(frozen=True)
class LogShift:
    """alpha_n = log(n + 1); Lambda_inf of this sequence is the space s."""

    def values(self, n):
        return np.log1p(np.asarray(n, dtype=float))

    @property
    def gap_limit(self) -> float:
        return 0.0

    @property
    def gap_sup(self) -> float:
        return math.log(2.0)

    @property
    def gap_inf(self) -> float:
        return 0.0

    def gap_sup_from(self, n: int) -> float:
        # log((n+2)/(n+1)) decreases in n
        return math.log1p(1.0 / (n + 1))

    def gap_inf_from(self, n: int) -> float:
        return 0.0

    exact = True


@dataclass(frozen=True)
class AlphaTable:
    """Finitely many values of alpha plus a declared gap limit.

    Past the stored range alpha is continued linearly with slope
    ``declared_l``; the declaration is checked against the tail of the
    stored gaps by :func:`check_alpha_gap_limit`.
    """

    values_: tuple
    declared_l: float

    def __post_init__(self):
        vals = np.asarray(self.values_, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValidationError("AlphaTable needs at least two values")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValidationError("AlphaTable values must be finite and non-negative")
        if np.any(np.diff(vals) < 0):
            raise ValidationError("AlphaTable values must be non-decreasing")
        if not self.declared_l >= 0 or not math.isfinite(self.declared_l):
            raise ValidationError("declared_l must be a finite non-negative real")
        object.__setattr__(self, "values_", tuple(float(t) for t in vals))

    @classmethod
    def from_function(cls, f, size: int, declared_l: float) -> "AlphaTable":
        """Tabulate alpha_n = f(n) for n < size."""
        return cls(tuple(np.asarray(f(np.arange(size, dtype=float)), dtype=float)), declared_l)

    @property
    def stored(self) -> np.ndarray:
        return np.asarray(self.values_)

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.stored)

    def values(self, n):
        n = np.asarray(n, dtype=float)
        stored = self.stored
        last = stored.size - 1
        idx = np.clip(n, 0, last).astype(int)
        out = stored[idx]
        return np.where(n > last, stored[-1] + (n - last) * self.declared_l, out)

    @property
    def gap_limit(self) -> float:
        return self.declared_l

    @property
    def gap_sup(self) -> float:
        return max(float(self.gaps.max()), self.declared_l)

    @property
    def gap_inf(self) -> float:
        return min(float(self.gaps.min()), self.declared_l)

    def gap_sup_from(self, n: int) -> float:
        g = self.gaps[n:]
        return max(float(g.max()), self.declared_l) if g.size else self.declared_l

    def gap_inf_from(self, n: int) -> float:
        g = self.gaps[n:]
        return min(float(g.min()), self.declared_l) if g.size else self.declared_l

    exact = False


AlphaSequence = Union[Affine, LogShift, AlphaTable]


def alpha_values(alpha: AlphaSequence, n) -> np.ndarray:
    return alpha.values(n)


def _tail(arr: np.ndarray, fraction: float = TAIL_FRACTION) -> np.ndarray:
    k = max(1, int(math.ceil(fraction * arr.size)))
    return arr[-k:]


def check_alpha_gap_limit(alpha: AlphaSequence, *, fraction: float = TAIL_FRACTION,
                          rtol: float = TAIL_RTOL) -> bool:
    """True when the tail of the stored gaps is consistent with a limit.

    Closed forms always pass.  For tables, every gap in the tail window must
    lie within ``rtol * max(l, 1)`` of the declared limit l (absolute scale 1
    so that l = 0 is testable).
    """
    if not isinstance(alpha, AlphaTable):
        return True
    tail = _tail(alpha.gaps, fraction)
    scale = rtol * max(alpha.declared_l, 1.0)
    return bool(np.all(np.abs(tail - alpha.declared_l) <= scale))


# ---------------------------------------------------------------------------
# weight families

@dataclass(frozen=True)
class Unit:
    """v_n = 1, i.e. the unweighted l_p."""

    exact = True


@dataclass(frozen=True)
class GeometricExp:
    """v_n = a ** alpha_n."""

    a: float
    alpha: AlphaSequence

    def __post_init__(self):
        if not self.a > 0 or not math.isfinite(self.a):
            raise ValidationError(f"GeometricExp base must be positive, got {self.a}")

    @property
    def log_a(self) -> float:
        return math.log(self.a)

    @property
    def exact(self) -> bool:
        return self.alpha.exact


@dataclass(frozen=True)
class WeightTable:
    """Tabulated positive weights with declared ratio asymptotics.

    Values are stored as natural logs so extreme scales survive.  Past the
    stored range the weight is continued geometrically with ratio
    ``declared_L``.
    """

    log_values: tuple
    declared_L: float
    declared_L1: float
    declared_N: float | None = None

    def __post_init__(self):
        logs = np.asarray(self.log_values, dtype=float)
        if logs.ndim != 1 or logs.size < 2:
            raise ValidationError("WeightTable needs at least two values")
        if not np.all(np.isfinite(logs)):
            raise ValidationError("WeightTable values must be positive and finite")
        if not (self.declared_L > 0 and math.isfinite(self.declared_L)):
            raise ValidationError("declared_L must be positive and finite")
        if not (0 <= self.declared_L1 <= self.declared_L):
            raise ValidationError("declared_L1 must satisfy 0 <= L1 <= L")
        object.__setattr__(self, "log_values", tuple(float(t) for t in logs))

    @classmethod
    def from_values(cls, values, declared_L, declared_L1, declared_N=None):
        vals = np.asarray(values, dtype=float)
        if np.any(vals <= 0):
            raise ValidationError("weights must be positive")
        return cls(tuple(np.log(vals)), declared_L, declared_L1, declared_N)

    @property
    def stored_logs(self) -> np.ndarray:
        return np.asarray(self.log_values)

    @property
    def log_ratios(self) -> np.ndarray:
        return np.diff(self.stored_logs)

    exact = False


WeightFamily = Union[Unit, GeometricExp, WeightTable]


def log_weights(v: WeightFamily, n) -> np.ndarray:
    """Natural log of v_n, elementwise."""
    n = np.asarray(n)
    if isinstance(v, Unit):
        return np.zeros(n.shape)
    if isinstance(v, GeometricExp):
        if v.a == 1.0:
            return np.zeros(n.shape)
        return v.alpha.values(n) * v.log_a
    if isinstance(v, WeightTable):
        logs = v.stored_logs
        last = logs.size - 1
        idx = np.clip(n, 0, last).astype(int)
        beyond = logs[-1] + (n - last) * math.log(v.declared_L)
        return np.where(n > last, beyond, logs[idx])
    raise TypeError(f"not a weight family: {v!r}")


# ---------------------------------------------------------------------------
# ratio asymptotics

@dataclass(frozen=True)
class RatioAsymptotics:
    N: float
    L: float
    L1: float
    exact: bool

    def __post_init__(self):
        if math.isfinite(self.N):
            slack = 1e-12 * max(self.N, 1.0)
            if not (self.L1 - slack <= self.L <= self.N + slack):
                raise ValidationError(
                    f"ratio asymptotics out of order: L1={self.L1}, L={self.L}, N={self.N}")
        if self.L1 < 0 or self.L <= 0:
            raise ValidationError("ratio asymptotics must be non-negative with L > 0")


def ratio_asymptotics(v: WeightFamily, *, fraction: float = TAIL_FRACTION,
                      rtol: float = TAIL_RTOL) -> RatioAsymptotics:
    """Return (N, L, L1) for the ratio sequence v_{n+1}/v_n.

    Raises UnboundedRatio when N is infinite and DeclaredMismatch when a
    table's declared limits disagree with its tail window.
    """
    if isinstance(v, Unit):
        return RatioAsymptotics(1.0, 1.0, 1.0, True)

    if isinstance(v, GeometricExp):
        alpha = v.alpha
        if isinstance(alpha, AlphaTable) and not check_alpha_gap_limit(alpha, fraction=fraction, rtol=rtol):
            raise DeclaredMismatch(
                f"alpha gaps in the tail window do not approach declared l={alpha.declared_l}")
        la = v.log_a
        gap_n = alpha.gap_sup if la >= 0 else alpha.gap_inf
        N = math.exp(la * gap_n)
        L = math.exp(la * alpha.gap_limit)
        if not math.isfinite(N):
            raise UnboundedRatio("sup v_{n+1}/v_n is infinite; B(r,s) is not continuous")
        return RatioAsymptotics(N, L, L, alpha.exact)

    if isinstance(v, WeightTable):
        ratios = np.exp(v.log_ratios)
        cands = [float(ratios.max()), v.declared_L]
        if v.declared_N is not None:
            cands.append(float(v.declared_N))
        N = max(cands)
        if not math.isfinite(N):
            raise UnboundedRatio("declared sup v_{n+1}/v_n is infinite; B(r,s) is not continuous")
        tail = _tail(ratios, fraction)
        scale = rtol * v.declared_L
        if abs(tail.max() - v.declared_L) > scale or abs(tail.min() - v.declared_L1) > scale:
            raise DeclaredMismatch(
                f"tail window ratios span [{tail.min():.6g}, {tail.max():.6g}], "
                f"declared L1={v.declared_L1}, L={v.declared_L}")
        return RatioAsymptotics(N, v.declared_L, v.declared_L1, False)

    raise TypeError(f"not a weight family: {v!r}")


def tail_ratio_sup(v: WeightFamily, n: int) -> float:
    """Upper bound for sup_{j >= n} v_{j+1}/v_j.

    Exact for closed forms.  Tables use the stored ratios from n on together
    with the declared L inflated by the tail tolerance.
    """
    if isinstance(v, Unit):
        return 1.0
    if isinstance(v, GeometricExp):
        la = v.log_a
        g = v.alpha.gap_sup_from(n) if la >= 0 else v.alpha.gap_inf_from(n)
        return math.exp(la * g)
    if isinstance(v, WeightTable):
        r = np.exp(v.log_ratios[n:])
        declared = v.declared_L * (1.0 + TAIL_RTOL)
        return max(float(r.max()), declared) if r.size else declared
    raise TypeError(f"not a weight family: {v!r}")


def reciprocal(v: WeightFamily) -> WeightFamily:
    """The weight 1/v (used for dual spaces)."""
    if isinstance(v, Unit):
        return v
    if isinstance(v, GeometricExp):
        return GeometricExp(1.0 / v.a, v.alpha)
    if isinstance(v, WeightTable):
        if v.declared_L1 == 0:
            raise UnboundedRatio("1/v has unbounded ratio when liminf v_{n+1}/v_n = 0")
        inv_ratios = np.exp(-v.log_ratios)
        N = max(float(inv_ratios.max()), 1.0 / v.declared_L1)
        return WeightTable(tuple(-v.stored_logs), 1.0 / v.declared_L1, 1.0 / v.declared_L, N)
    raise TypeError(f"not a weight family: {v!r}")


def grade_weight(alpha: AlphaSequence, k: int, dual: bool = False) -> GeometricExp:
    """The k-th grade weight e^{k alpha_n}, or its reciprocal when ``dual``."""
    if int(k) != k or k < 1:
        raise ValidationError(f"grade index must be a positive integer, got {k}")
    return GeometricExp(math.exp(-k if dual else k), alpha)


# ---------------------------------------------------------------------------
# norms

@dataclass(frozen=True)
class ConjugateExponent:
    p: float
    p_prime: float = field(init=False)

    def __post_init__(self):
        if not (1 < self.p < math.inf):
            raise ValidationError(f"p must lie in (1, inf), got {self.p}")
        object.__setattr__(self, "p_prime", self.p / (self.p - 1.0))


class NormValue(NamedTuple):
    log: float
    value: float
    lower_bound: bool = False


def weighted_norm_log(log_abs, p: float, v: WeightFamily, offset: int = 0,
                      lower_bound: bool = False) -> NormValue:
    """l_p(v) norm of a vector given by log|x_n| (index n = offset + i)."""
    log_abs = np.asarray(log_abs, dtype=float)
    idx = offset + np.arange(log_abs.size)
    logs = log_abs + log_weights(v, idx)
    finite = logs[np.isfinite(logs)]
    if finite.size == 0:
        return NormValue(-math.inf, 0.0, lower_bound)
    if np.all(np.abs(finite) < LINEAR_RANGE) and p * np.max(finite) < LINEAR_RANGE:
        val = float(np.sum(np.exp(p * finite)) ** (1.0 / p))
        return NormValue(math.log(val), val, lower_bound)
    lg = float(logsumexp(p * finite) / p)
    val = math.exp(lg) if lg < 709.0 else math.inf
    return NormValue(lg, val, lower_bound)


def weighted_norm(x, p: float, v: WeightFamily) -> NormValue:
    """||x||_{p,v} = ||(x_n v_n)||_p, computed in log-domain when needed.

    ``x`` is an array or a SeqVector; a vector whose tail is not asserted
    zero yields a lower bound and a warning.
    """
    ConjugateExponent(p)
    entries = np.asarray(getattr(x, "entries", x))
    lower = not getattr(x, "tail_zero", True)
    if lower:
        warnings.warn("norm of a vector with unknown tail is only a lower bound", stacklevel=2)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(entries))
    return weighted_norm_log(log_abs, p, v, lower_bound=lower)


# ---------------------------------------------------------------------------
# boundary series  sum_n rho^{n p'} / v_n^{p'}

class SeriesVerdict(enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    UNDETERMINED = "undetermined"


def _log_series_test(log_terms: np.ndarray, start: int, rtol: float) -> SeriesVerdict:
    # fit log t_n ~ c - kappa * log(n+1) on the window; compare kappa with 1
    n = start + np.arange(log_terms.size)
    x = np.log1p(n.astype(float))
    slope = np.polyfit(x, log_terms, 1)[0]
    kappa = -slope
    if kappa > 1.0 + rtol:
        return SeriesVerdict.CONVERGES
    if kappa < 1.0 - rtol:
        return SeriesVerdict.DIVERGES
    return SeriesVerdict.UNDETERMINED


def boundary_series_test(v: WeightFamily, p: float, rho: float, *,
                         fraction: float = TAIL_FRACTION,
                         rtol: float = TAIL_RTOL) -> SeriesVerdict:
    """Decide whether sum_n rho^{n p'} / v_n^{p'} converges.

    This is membership of the geometric sequence with ratio modulus ``rho``
    in l_{p'}(1/v).  Exact for Unit and for GeometricExp over closed-form
    alpha; tabulated weights are decided by comparison with L1 off the
    circle and by a p-series slope fit on the tail window on it.
    """
    if rho < 0:
        raise ValidationError("rho must be non-negative")
    pp = ConjugateExponent(p).p_prime
    if rho == 0:
        return SeriesVerdict.CONVERGES
    lr = math.log(rho)

    if isinstance(v, Unit) or (isinstance(v, GeometricExp) and v.a == 1.0):
        return SeriesVerdict.CONVERGES if lr < 0 else SeriesVerdict.DIVERGES

    if isinstance(v, GeometricExp) and isinstance(v.alpha, Affine):
        # terms = exp(p' (n (log rho - slope log a) - offset log a)): geometric
        return SeriesVerdict.CONVERGES if lr < v.alpha.slope * v.log_a else SeriesVerdict.DIVERGES

    if isinstance(v, GeometricExp) and isinstance(v.alpha, LogShift):
        # terms = rho^{n p'} (n+1)^{-p' log a}
        if lr < 0:
            return SeriesVerdict.CONVERGES
        if lr > 0:
            return SeriesVerdict.DIVERGES
        return SeriesVerdict.CONVERGES if pp * v.log_a > 1.0 else SeriesVerdict.DIVERGES

    # tabulated data
    ra = ratio_asymptotics(v, fraction=fraction, rtol=rtol)
    if ra.L1 == 0 or rho > ra.L1 * (1.0 + EDGE_RTOL):
        return SeriesVerdict.DIVERGES
    if rho < ra.L1 * (1.0 - EDGE_RTOL):
        return SeriesVerdict.CONVERGES
    if isinstance(v, GeometricExp):
        size = len(v.alpha.values_)
    else:
        size = len(v.log_values)
    k = max(2, int(math.ceil(fraction * size)))
    idx = np.arange(size - k, size)
    log_terms = pp * (idx * lr - log_weights(v, idx))
    return _log_series_test(log_terms, size - k, rtol)
