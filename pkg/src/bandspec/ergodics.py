"""Power boundedness, mean ergodicity and related dynamics of B(r,s).

Verdicts are tri-state: a property Holds or Fails only when a proved
implication applies, and is Undetermined in the band the implications
leave open.  After the closed-form rules fire, verdicts are propagated
along the implication chains of the space family so that the report is
closed under them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContinuityFailure, InvariantViolation, UnboundedRatio, ValidationError
from .grading import PowerSeriesSpace, validate_space
from .operator import BandParams, log_power_column
from .spectra import spectral_radius
from .weights import (EDGE_RTOL, AlphaSequence, ConjugateExponent, RatioAsymptotics,
                      Unit, WeightFamily, grade_weight, ratio_asymptotics,
                      weighted_norm_log)

__all__ = ["Verdict", "TriState", "SpaceDescriptor", "ErgodicReport",
           "classify_ergodic", "check_chain", "chain_edges", "cesaro_experiment",
           "CesaroTable", "growth_experiment", "GrowthEstimate"]

PROPERTIES = ("norm_powers_to_zero", "power_bounded", "uniform_mean_ergodic",
              "mean_ergodic", "cesaro_null")


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class TriState:
    verdict: Verdict
    reason: str = ""
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "reason": self.reason, "witness": self.witness}


def _holds(reason, **w):
    return TriState(Verdict.HOLDS, reason, w)


def _fails(reason, **w):
    return TriState(Verdict.FAILS, reason, w)


def _open(reason, **w):
    return TriState(Verdict.UNDETERMINED, reason, w)


@dataclass(frozen=True)
class SpaceDescriptor:
    """Which space B(r,s) acts on.

    kind is "lp" (with p and a weight), "lambda" or "lambda-dual" (with an
    exponent sequence alpha; validated into ``power``).
    """

    kind: str
    p: float = 2.0
    weight: WeightFamily = Unit()
    power: PowerSeriesSpace | None = None

    @classmethod
    def lp(cls, p: float = 2.0, weight: WeightFamily = Unit()) -> "SpaceDescriptor":
        ConjugateExponent(p)
        try:
            ratio_asymptotics(weight)
        except UnboundedRatio as exc:
            raise ContinuityFailure(str(exc)) from exc
        return cls("lp", float(p), weight)

    @classmethod
    def lambda_(cls, alpha: AlphaSequence, dual: bool = False) -> "SpaceDescriptor":
        sp = validate_space(alpha, dual)
        return cls("lambda-dual" if dual else "lambda", 2.0, Unit(), sp)

    @property
    def ratios(self) -> RatioAsymptotics:
        return ratio_asymptotics(self.weight)

    def probe_weight(self, k: int = 1) -> WeightFamily:
        """Weight whose l_p norm measures probes: the space weight or grade k."""
        if self.kind == "lp":
            return self.weight
        return grade_weight(self.power.alpha, k, dual=self.kind == "lambda-dual")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "p": self.p}
        if self.power is not None:
            out.update(l=self.power.l, nuclear=self.power.nuclear,
                       log_bound_c=self.power.log_bound_c)
        return out


@dataclass
class ErgodicReport:
    power_bounded: TriState
    mean_ergodic: TriState
    uniform_mean_ergodic: TriState
    cesaro_null: TriState
    norm_powers_to_zero: TriState
    one_in_spectrum: bool
    supercyclic_excluded: TriState
    space: str = "lp"

    def get(self, name: str) -> TriState:
        return getattr(self, name)

    def to_json(self) -> dict:
        out = {name: self.get(name).to_json() for name in PROPERTIES}
        out["supercyclic_excluded"] = self.supercyclic_excluded.to_json()
        out["one_in_spectrum"] = self.one_in_spectrum
        out["space"] = self.space
        return out


def chain_edges(kind: str) -> list[tuple[str, str]]:
    """Implications A => B valid on the given space family."""
    edges = [
        ("norm_powers_to_zero", "power_bounded"),
        ("norm_powers_to_zero", "uniform_mean_ergodic"),
        ("power_bounded", "mean_ergodic"),
        ("uniform_mean_ergodic", "mean_ergodic"),
        ("mean_ergodic", "cesaro_null"),
    ]
    if kind in ("lambda", "lambda-dual"):
        # Montel spaces: power bounded already gives uniform mean ergodicity
        edges.append(("power_bounded", "uniform_mean_ergodic"))
    return edges


def _ume_excludes_one(kind: str) -> bool:
    # uniform mean ergodic => 1 not in sigma needs sigma_c(B) = 0 at 1, known
    # on l_p(v) and on the primal power series space
    return kind in ("lp", "lambda")


def _close(props: dict, kind: str) -> None:
    edges = chain_edges(kind)
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            va, vb = props[a].verdict, props[b].verdict
            if va is Verdict.HOLDS and vb is Verdict.UNDETERMINED:
                props[b] = _holds(f"implied by {a} ({props[a].reason})", **props[a].witness)
                changed = True
            elif vb is Verdict.FAILS and va is Verdict.UNDETERMINED:
                props[a] = _fails(f"implies {b}, which fails ({props[b].reason})", **props[b].witness)
                changed = True


def check_chain(rep: ErgodicReport) -> list[str]:
    """Implication-chain violations in a report (empty when consistent)."""
    bad = []
    for a, b in chain_edges(rep.space):
        if rep.get(a).verdict is Verdict.HOLDS and rep.get(b).verdict is Verdict.FAILS:
            bad.append(f"{a} Holds but {b} Fails")
    if (_ume_excludes_one(rep.space) and rep.one_in_spectrum
            and rep.uniform_mean_ergodic.verdict is Verdict.HOLDS):
        bad.append("uniform_mean_ergodic Holds although 1 is in the spectrum")
    return bad


def _le(x: float, y: float) -> bool:
    return x <= y * (1.0 + EDGE_RTOL)


def _lt(x: float, y: float) -> bool:
    return x < y * (1.0 - EDGE_RTOL)


def _classify_lp(b: BandParams, sd: SpaceDescriptor):
    ra = sd.ratios
    rho = abs(b.r) + ra.L * abs(b.s)
    rhoN = abs(b.r) + ra.N * abs(b.s)
    one_in = _le(abs(1.0 - b.r), ra.L * abs(b.s))
    w = {"|r|+L|s|": rho, "|r|+N|s|": rhoN}

    P = {}
    if _lt(rho, 1.0):
        P["norm_powers_to_zero"] = _holds("Prop meulpv: spectral radius |r|+L|s| < 1", **w)
    else:
        P["norm_powers_to_zero"] = _fails("Prop meulpv: spectral radius |r|+L|s| >= 1", **w)
    if _le(rhoN, 1.0):
        P["power_bounded"] = _holds("Prop melpv: |r|+N|s| <= 1", **w)
    elif not _le(rho, 1.0):
        P["power_bounded"] = _fails("Prop melpv (4)=>(5): |r|+L|s| > 1", **w)
    else:
        P["power_bounded"] = _open("Prop melpv: band |r|+L|s| <= 1 < |r|+N|s|", **w)
    if not _le(rho, 1.0):
        P["mean_ergodic"] = _fails("Prop melpv (4)=>(5): |r|+L|s| > 1", **w)
        P["cesaro_null"] = _fails("Prop melpv (4)=>(5): |r|+L|s| > 1", **w)
    else:
        P["mean_ergodic"] = _open("Prop melpv: band |r|+L|s| <= 1 < |r|+N|s|", **w)
        P["cesaro_null"] = _open("Prop melpv: band |r|+L|s| <= 1 < |r|+N|s|", **w)
    if _lt(rho, 1.0):
        P["uniform_mean_ergodic"] = _holds("Prop meulpv: |r|+L|s| < 1", **w)
    elif one_in:
        P["uniform_mean_ergodic"] = _fails("Prop meulpv (4)=>(5): 1 in sigma", **w, **{"|1-r|": abs(1 - b.r)})
    else:
        P["uniform_mean_ergodic"] = _open("Prop meulpv: |r|+L|s| >= 1 and 1 not in sigma", **w)
    if ra.L1 > 0:
        sc = _holds("Prop melpv: L1 > 0, open disk in sigma_p(B*)", L1=ra.L1)
    else:
        sc = _open("L1 = 0: no open disk of adjoint eigenvalues", L1=ra.L1)
    return P, one_in, sc


def _classify_lambda(b: BandParams, sd: SpaceDescriptor):
    sp = sd.power
    t = abs(b.r) + abs(b.s)
    w = {"|r|+|s|": t, "l": sp.l}
    P = {}
    if sp.l > 0:
        why = "Prop P.UM_l: sigma = C, so B^n/n does not tend to 0"
        for name in PROPERTIES:
            P[name] = _fails(why, **w)
        return P, True, _holds("Prop P.UM_l: sigma_p(B') = C", **w)

    one_in = _le(abs(1.0 - b.r), abs(b.s))
    for name in PROPERTIES:
        P[name] = _open("Prop P.UM_0: band |r|+|s| = 1", **w)
    if _lt(t, 1.0):
        for name in ("norm_powers_to_zero", "power_bounded", "uniform_mean_ergodic"):
            P[name] = _holds("Prop P.UM_0(b): |r|+|s| < 1", **w)
    elif not _le(t, 1.0):
        P["cesaro_null"] = _fails("Prop P.UM_0(a) (2)=>(3): |r|+|s| > 1", **w)
        P["mean_ergodic"] = _fails("Prop P.UM_0(a) (1)=>(3): |r|+|s| > 1", **w)
    if one_in and P["uniform_mean_ergodic"].verdict is Verdict.UNDETERMINED:
        P["uniform_mean_ergodic"] = _fails("Prop P.UM_0(b) (4)=>(5): 1 in sigma", **w)
    return P, one_in, _holds("Prop P.UM_0(c): sigma_p(B') = closed disk", **w)


def _classify_lambda_dual(b: BandParams, sd: SpaceDescriptor):
    sp = sd.power
    t = abs(b.r) + abs(b.s)
    w = {"|r|+|s|": t, "|r|": abs(b.r), "l": sp.l}
    P = {}
    if sp.l == 0:
        one_in = _le(abs(1.0 - b.r), abs(b.s))
        cond = _le(t, 1.0)
        for name in ("power_bounded", "uniform_mean_ergodic", "mean_ergodic", "cesaro_null"):
            P[name] = (_holds if cond else _fails)(
                "dual Prop (a), l = 0: equivalent to |r|+|s| <= 1", **w)
        if _lt(t, 1.0):
            P["norm_powers_to_zero"] = _holds("dual Prop (b): |r|+|s| < 1", **w)
        else:
            P["norm_powers_to_zero"] = _open("dual Prop (b): only |r|+|s| < 1 is sufficient", **w)
        sc = _holds("dual Prop (c): sigma_p(B') = open disk", **w)
        return P, one_in, sc

    one_in = b.r == 1.0
    for name in PROPERTIES:
        P[name] = _open("dual Prop (a), l > 0: only necessity of |r| <= 1 is known", **w)
    if not _le(abs(b.r), 1.0):
        P["cesaro_null"] = _fails("dual Prop (a) (4)=>(5): |r| > 1", **w)
    if _lt(t, 1.0):
        P["norm_powers_to_zero"] = _holds("dual Prop (b): |r|+|s| < 1", **w)
    sc = _open("adjoint point spectrum not determined for l > 0", **w)
    return P, one_in, sc


def classify_ergodic(b: BandParams, space: SpaceDescriptor) -> ErgodicReport:
    if space.kind == "lp":
        P, one_in, sc = _classify_lp(b, space)
    elif space.kind == "lambda":
        P, one_in, sc = _classify_lambda(b, space)
    elif space.kind == "lambda-dual":
        P, one_in, sc = _classify_lambda_dual(b, space)
    else:
        raise ValidationError(f"unknown space kind {space.kind!r}")
    _close(P, space.kind)
    if (_ume_excludes_one(space.kind) and one_in
            and P["uniform_mean_ergodic"].verdict is Verdict.UNDETERMINED):
        P["uniform_mean_ergodic"] = _fails("uniform mean ergodicity forces 1 out of sigma")
        _close(P, space.kind)
    rep = ErgodicReport(P["power_bounded"], P["mean_ergodic"], P["uniform_mean_ergodic"],
                        P["cesaro_null"], P["norm_powers_to_zero"], bool(one_in), sc, space.kind)
    bad = check_chain(rep)
    if bad:
        raise InvariantViolation("; ".join(bad))
    return rep


# ---------------------------------------------------------------------------
# experiments

@dataclass
class CesaroTable:
    ns: np.ndarray
    probes: tuple
    cesaro_log: np.ndarray        # log ||T_[n] e_j||, shape (len(probes), len(ns))
    power_over_n_log: np.ndarray  # log (||B^n e_j|| / n)
    decay_present: list
    growth_present: list
    consistent: bool
    diagnostics: list

    def rows(self):
        for i, j in enumerate(self.probes):
            for t, n in enumerate(self.ns):
                yield (int(n), int(j), _exp(self.cesaro_log[i, t]), _exp(self.power_over_n_log[i, t]),
                       float(self.cesaro_log[i, t]), float(self.power_over_n_log[i, t]))


def _exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf


def _log_norm(vec: np.ndarray, log_scale: float, p: float, v: WeightFamily) -> float:
    with np.errstate(divide="ignore"):
        la = np.log(np.abs(vec))
    return weighted_norm_log(la + log_scale, p, v).log


def cesaro_experiment(b: BandParams, space: SpaceDescriptor, n_max: int,
                      probes=(0,), grade: int = 1, points: int = 25) -> CesaroTable:
    """Tabulate ||T_[n] e_j|| and ||B^n e_j|| / n at log-spaced n.

    Norms are those of the space (grade ``grade`` for power series
    spaces).  Iterates are kept with a running log scale so that growing
    orbits do not overflow.  The table is compared with classify_ergodic:
    decay is expected when mean_ergodic Holds and growth when cesaro_null
    Fails; a mismatch is reported in ``diagnostics`` and never changes a
    verdict.
    """
    if n_max < 10:
        raise ValidationError("n_max must be at least 10")
    probes = tuple(int(j) for j in probes)
    if any(j < 0 for j in probes):
        raise ValidationError("probe indices must be non-negative")
    ns = np.unique(np.round(np.geomspace(1, n_max, points)).astype(int))
    want = set(ns.tolist())
    v = space.probe_weight(grade)
    p = space.p
    ces = np.empty((len(probes), ns.size))
    pwr = np.empty((len(probes), ns.size))
    for i, j in enumerate(probes):
        size = j + n_max + 1
        cur = np.zeros(size)
        cur[j] = 1.0
        acc = np.zeros(size)
        scale = 0.0          # true vectors are exp(scale) * (cur, acc)
        t = 0
        for n in range(1, n_max + 1):
            hi = j + n + 1
            cur[1:hi] = b.r * cur[1:hi] + b.s * cur[0:hi - 1]
            cur[0] *= b.r
            acc[:hi] += cur[:hi]
            big = np.max(np.abs(acc[:hi]))
            if big > 1e150:
                cur[:hi] /= big
                acc[:hi] /= big
                scale += math.log(big)
            if n in want:
                ces[i, t] = _log_norm(acc[:hi], scale - math.log(n), p, v)
                pwr[i, t] = _log_norm(cur[:hi], scale - math.log(n), p, v)
                t += 1

    rep = classify_ergodic(b, space)
    decay, growth, diags = [], [], []
    for i, j in enumerate(probes):
        c = ces[i]
        g = pwr[i]
        d = bool(c[-1] < np.max(c) - math.log(2.0))
        gr = bool(g[-1] > np.min(g) + 1e-9)
        decay.append(d)
        growth.append(gr)
        if rep.mean_ergodic.verdict is Verdict.HOLDS and not d:
            diags.append(f"probe e_{j}: mean_ergodic Holds but no Cesaro decay by n = {n_max}")
        if rep.cesaro_null.verdict is Verdict.FAILS and not gr:
            diags.append(f"probe e_{j}: cesaro_null Fails but ||B^n e_j||/n shows no growth by n = {n_max}")
    return CesaroTable(ns, probes, ces, pwr, decay, growth, not diags, diags)


@dataclass(frozen=True)
class GrowthEstimate:
    n: int
    rate: float
    log_norm: float
    expected: float

    @property
    def rel_error(self) -> float:
        return abs(self.rate - self.expected) / self.expected


def growth_experiment(b: BandParams, v: WeightFamily, n_max: int, p: float = 2.0) -> GrowthEstimate:
    """||B^n e_0||_{p,v}^{1/n} at n = n_max, from the log-domain binomial column.

    Tends to the spectral radius |r| + L|s| as n grows.
    """
    if n_max < 100:
        raise ValidationError("n_max must be at least 100")
    logmag, _ = log_power_column(b, n_max)
    lg = weighted_norm_log(logmag, p, v).log
    return GrowthEstimate(int(n_max), math.exp(lg / n_max), lg, spectral_radius(b, v))
