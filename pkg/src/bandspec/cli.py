"""Command-line front end.

    bandspec classify   --r 1 --s -1 --space lp --p 2 --weight unit
    bandspec ergodics   --r 0.5 --s 0.5 --space lp
    bandspec resolve    --r 1 --s -1 --at 3 --y basis:0
    bandspec cesaro     --r 0.5 --s 0.5 --n-max 10000 --probes 0,1
    bandspec pseudospec --r 1 --s -1 --m 300 --out grid.csv
    bandspec verify     --seed 0

Exit status: 0 success, 2 invalid input, 3 a hypothesis of the theory
fails (alpha conditions, unbounded weight ratio), 4 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (AggregationViolation, ContinuityFailure, HypothesisFailure,
                     InvariantViolation, SpectrumViolation, ValidationError)
from .ergodics import SpaceDescriptor, cesaro_experiment, classify_ergodic
from .grading import graded_fine_spectrum, per_grade_crosscheck
from .operator import BandParams, SeqVector, TruncationConfig, apply
from .pseudospectrum import GridSpec, pseudo_grid
from .resolvent import resolvent_apply, summability_certificates
from .spectra import classify_point, fine_spectrum
from .weights import (Affine, AlphaTable, GeometricExp, LogShift, Unit, WeightTable,
                      ratio_asymptotics)

COMMANDS = ("classify", "ergodics", "resolve", "cesaro", "pseudospec", "verify")
EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INVARIANT = 0, 2, 3, 4


# ---------------------------------------------------------------------------
# spec strings

def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got {text!r}") from None


def parse_alpha(text: str):
    """affine:SLOPE,OFFSET | log | table:A0,A1,...:L"""
    kind, _, rest = text.partition(":")
    if kind == "affine":
        vals = _floats(rest)
        if len(vals) != 2:
            raise ValidationError("affine alpha needs SLOPE,OFFSET")
        return Affine(*vals)
    if kind == "log":
        return LogShift()
    if kind == "table":
        data, _, l = rest.rpartition(":")
        if not data:
            raise ValidationError("table alpha needs VALUES:L")
        return AlphaTable(tuple(_floats(data)), float(l))
    raise ValidationError(f"unknown alpha spec {text!r}")


def parse_weight(text: str):
    """unit | geometric:A:ALPHA | table:V0,V1,...:L:L1[:N]"""
    kind, _, rest = text.partition(":")
    if kind == "unit":
        return Unit()
    if kind == "geometric":
        a, _, alpha = rest.partition(":")
        try:
            base = float(a)
        except ValueError:
            raise ValidationError(f"geometric weight base must be a number, got {a!r}") from None
        return GeometricExp(base, parse_alpha(alpha))
    if kind == "table":
        parts = rest.split(":")
        if len(parts) not in (3, 4):
            raise ValidationError("table weight needs VALUES:L:L1[:N]")
        N = float(parts[3]) if len(parts) == 4 else None
        return WeightTable.from_values(_floats(parts[0]), float(parts[1]), float(parts[2]), N)
    raise ValidationError(f"unknown weight spec {text!r}")


def _complex(text) -> complex:
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValidationError(f"not a complex number: {text!r}") from None


# ---------------------------------------------------------------------------
# configuration

@dataclass
class RunConfig:
    command: str
    r: float
    s: float
    space: str = "lp"
    p: float = 2.0
    weight: str = "unit"
    alpha: str | None = None
    m: int | None = None
    tol: float = 1e-10
    out: str | None = None
    fmt: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.command == "verify":
            return
        if self.r is None or self.s is None:
            raise ValidationError("--r and --s are required")
        if self.space not in ("lp", "lambda", "lambda-dual"):
            raise ValidationError(f"space must be lp, lambda or lambda-dual, got {self.space!r}")
        if self.space == "lp" and not 1 < self.p < math.inf:
            raise ValidationError("p must lie in (1, inf) on l_p")
        if self.space != "lp" and self.alpha is None:
            raise ValidationError(f"--alpha is required for space {self.space}")
        if self.fmt not in (None, "json", "csv"):
            raise ValidationError("format must be json or csv")

    def band(self) -> BandParams:
        return BandParams(self.r, self.s)

    def descriptor(self) -> SpaceDescriptor:
        if self.space == "lp":
            return SpaceDescriptor.lp(self.p, parse_weight(self.weight))
        return SpaceDescriptor.lambda_(parse_alpha(self.alpha), self.space == "lambda-dual")


def _flatten_config(cfg: dict) -> dict:
    """Map the nested JSON config layout onto flat option names."""
    flat = {}
    for key, val in cfg.items():
        if key == "band":
            flat.update(val)
        elif key == "space" and isinstance(val, dict):
            flat["space"] = val.get("kind", "lp")
            for k in ("p", "weight", "alpha"):
                if k in val:
                    flat[k] = val[k]
        elif key in ("numeric", "grid"):
            flat.update(val)
        elif key == "output":
            if "path" in val:
                flat["out"] = val["path"]
            if "format" in val:
                flat["format"] = val["format"]
        else:
            flat[key] = val
    return flat


EXTRA_KEYS = ("at", "y", "n_max", "probes", "grade", "box", "nx", "ny", "summary",
              "k_max", "points", "seed", "horizon")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    vals = {}
    if getattr(ns, "config", None):
        try:
            raw = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {ns.config}: {exc}") from None
        vals.update(_flatten_config(raw))
    for k, v in vars(ns).items():
        if v is not None and k != "config":
            vals[k.replace("-", "_")] = v
    cmd = vals.get("command")
    extra = {k: vals[k] for k in EXTRA_KEYS if k in vals}
    cfg = RunConfig(
        command=cmd,
        r=_num(vals.get("r")),
        s=_num(vals.get("s")),
        space=vals.get("space", "lp"),
        p=float(vals.get("p", 2.0)),
        weight=vals.get("weight", "unit"),
        alpha=vals.get("alpha"),
        m=int(vals["m"]) if "m" in vals else None,
        tol=float(vals.get("tol", 1e-10)),
        out=vals.get("out"),
        fmt=vals.get("format"),
        extra=extra,
    )
    cfg.validate()
    return cfg


def _num(x):
    if x is None:
        return None
    try:
        return float(x)
    except (TypeError, ValueError):
        raise ValidationError(f"not a real number: {x!r}") from None


# ---------------------------------------------------------------------------
# output

def _clean(obj):
    """JSON-safe copy: non-finite floats become strings, numpy scalars plain."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2) + "\n"


def _emit(text: str, path: str | None, stdout) -> None:
    if path:
        Path(path).write_text(text)
    else:
        stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{x:.17g}" if isinstance(x, float) else x for x in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands

def _classify(cfg: RunConfig) -> dict:
    b = cfg.band()
    if cfg.space == "lp":
        v = parse_weight(cfg.weight)
        fs = fine_spectrum(b, cfg.p, v)
        out = fs.to_json()
        out["weight"] = cfg.weight
        pts = cfg.extra.get("at")
        if pts:
            items = pts if isinstance(pts, list) else str(pts).split(";")
            out["points"] = [{"alpha": str(_complex(t)), "class": classify_point(fs, _complex(t)).value}
                             for t in items]
        return out
    sd = cfg.descriptor()
    graded = graded_fine_spectrum(b, sd.power)
    cross = per_grade_crosscheck(b, sd.power, int(cfg.extra.get("k_max", 6)))
    out = graded.to_json()
    out.update(space=sd.to_json(), band={"r": b.r, "s": b.s}, alpha=cfg.alpha,
               crosscheck=cross.to_json())
    return out


def _ergodics(cfg: RunConfig) -> dict:
    sd = cfg.descriptor()
    rep = classify_ergodic(cfg.band(), sd)
    out = rep.to_json()
    out["space"] = sd.to_json()
    out["band"] = {"r": cfg.r, "s": cfg.s}
    return out


def _resolve(cfg: RunConfig) -> dict:
    if cfg.space != "lp":
        raise ValidationError("resolve is defined on l_p(v) only")
    b = cfg.band()
    v = parse_weight(cfg.weight)
    if "at" not in cfg.extra:
        raise ValidationError("--at is required for resolve")
    alpha = _complex(cfg.extra["at"])
    tc = TruncationConfig(cfg.m or 512, cfg.tol)
    ytext = str(cfg.extra.get("y", "basis:0"))
    if ytext.startswith("basis:"):
        y = SeqVector.basis(int(ytext[6:]), tc.m)
    else:
        y = SeqVector([_complex(t) for t in ytext.split(",")]).padded(tc.m)
    x = resolvent_apply(b, alpha, y, tc, v)
    res = np.asarray(apply(b, x)) - alpha * np.asarray(x) - np.asarray(y)
    cert = summability_certificates(b, alpha, v, cfg.p, int(cfg.extra.get("horizon", 256)))
    return {
        "band": {"r": b.r, "s": b.s},
        "alpha": {"re": alpha.real, "im": alpha.imag},
        "m": tc.m,
        "x": {"re": np.real(x.entries).tolist(), "im": np.imag(x.entries).tolist()},
        "residual_max": float(np.max(np.abs(res[: tc.m - 1]))),
        "tail_ratio": cert.tail_ratio,
        "certificates": {"row_sup": cert.row_sup, "col_sup": cert.col_sup,
                         "row_partial": cert.row_partial, "col_partial": cert.col_partial,
                         "both_finite": cert.both_finite,
                         "citation": "Thm charac spect proof, (D1)/(D2)"},
    }


def _cesaro(cfg: RunConfig):
    sd = cfg.descriptor()
    probes = cfg.extra.get("probes", "0")
    probes = probes if isinstance(probes, list) else [int(t) for t in str(probes).split(",")]
    tab = cesaro_experiment(cfg.band(), sd, int(cfg.extra.get("n_max", 1000)), probes,
                            int(cfg.extra.get("grade", 1)))
    header = ("n", "probe", "cesaro_norm", "power_over_n", "cesaro_log", "power_over_n_log")
    if (cfg.fmt or "csv") == "csv":
        return _csv_text(header, tab.rows())
    return dumps({"rows": [dict(zip(header, row)) for row in tab.rows()],
                  "decay_present": tab.decay_present, "growth_present": tab.growth_present,
                  "consistent": tab.consistent, "diagnostics": tab.diagnostics})


def _pseudospec(cfg: RunConfig, stdout, stderr):
    if cfg.space != "lp" or cfg.p != 2.0:
        raise ValidationError("pseudospectra are computed on l_2(v) only")
    b = cfg.band()
    v = parse_weight(cfg.weight)
    ratio_asymptotics(v)
    kw = {"m": cfg.m or 300}
    for k in ("nx", "ny"):
        if k in cfg.extra:
            kw[k] = int(cfg.extra[k])
    if "box" in cfg.extra:
        box = cfg.extra["box"]
        box = box if isinstance(box, list) else _floats(str(box))
        if len(box) != 4:
            raise ValidationError("box needs RE_LO,RE_HI,IM_LO,IM_HI")
        spec = GridSpec(tuple(box), weight=v, **kw)
    else:
        spec = GridSpec.around(b, v, **kw)
    g = pseudo_grid(b, spec)
    summary = dumps(dict(g.summary, box=list(spec.box), nx=spec.nx, ny=spec.ny))
    if cfg.fmt == "json":
        _emit(summary, cfg.out, stdout)
        return
    _emit(_csv_text(("re", "im", "sigma_min"), g.rows()), cfg.out, stdout)
    spath = cfg.extra.get("summary") or (cfg.out + ".summary.json" if cfg.out else None)
    if spath:
        Path(spath).write_text(summary)
    else:
        stderr.write(summary)


def _verify(cfg: RunConfig, stdout) -> int:
    from .verify import run_checks
    results = run_checks(int(cfg.extra.get("seed", 0)))
    for r in results:
        stdout.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n")
    npass = sum(r.passed for r in results)
    stdout.write(f"passed {npass}, failed {len(results) - npass}\n")
    return EXIT_OK if npass == len(results) else EXIT_INVARIANT


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if cfg.command == "verify":
            return _verify(cfg, stdout)
        if cfg.command == "classify":
            _emit(dumps(_classify(cfg)), cfg.out, stdout)
        elif cfg.command == "ergodics":
            _emit(dumps(_ergodics(cfg)), cfg.out, stdout)
        elif cfg.command == "resolve":
            _emit(dumps(_resolve(cfg)), cfg.out, stdout)
        elif cfg.command == "cesaro":
            _emit(_cesaro(cfg), cfg.out, stdout)
        elif cfg.command == "pseudospec":
            _pseudospec(cfg, stdout, stderr)
        return EXIT_OK
    except (HypothesisFailure, ContinuityFailure) as exc:
        stderr.write(f"hypothesis failure: {exc}\n")
        return EXIT_HYPOTHESIS
    except (InvariantViolation, AggregationViolation) as exc:
        stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except (ValueError, SpectrumViolation) as exc:
        # ValidationError, and float() on a malformed spec string
        stderr.write(f"invalid input: {exc}\n")
        return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bandspec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override it")
    common.add_argument("--r", type=float)
    common.add_argument("--s", type=float)
    common.add_argument("--space", choices=("lp", "lambda", "lambda-dual"))
    common.add_argument("--p", type=float)
    common.add_argument("--weight", help="unit | geometric:A:ALPHA | table:V0,V1,...:L:L1[:N]")
    common.add_argument("--alpha", help="affine:SLOPE,OFFSET | log | table:A0,A1,...:L")
    common.add_argument("--m", type=int, help="truncation / section size")
    common.add_argument("--tol", type=float)
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "csv"))

    p = sub.add_parser("classify", parents=[common], help="fine spectrum report")
    p.add_argument("--at", help="points to classify, separated by ';'")
    p.add_argument("--k-max", dest="k_max", type=int, help="grades in the per-grade cross-check")
    sub.add_parser("ergodics", parents=[common], help="ergodic classification report")
    p = sub.add_parser("resolve", parents=[common], help="apply the resolvent at a point")
    p.add_argument("--at", help="complex point outside the spectrum")
    p.add_argument("--y", help="basis:K or comma-separated entries")
    p.add_argument("--horizon", type=int)
    p = sub.add_parser("cesaro", parents=[common], help="Cesaro decay table")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--probes", help="comma-separated basis indices")
    p.add_argument("--grade", type=int, help="grade used for power series space norms")
    p = sub.add_parser("pseudospec", parents=[common], help="sigma_min grid")
    p.add_argument("--box", help="RE_LO,RE_HI,IM_LO,IM_HI")
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--summary", help="path for the summary JSON")
    p = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    p.add_argument("--seed", type=int)
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
