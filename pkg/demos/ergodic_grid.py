"""Ergodic verdicts over the (r, s) square, per space."""
import numpy as np

from bandspec import (Affine, BandParams, LogShift, SpaceDescriptor, Verdict, check_chain,
                      cesaro_experiment, classify_ergodic, growth_experiment, Unit)

grid = np.linspace(-1.5, 1.5, 12)  # even count keeps 0 off the grid
spaces = {
    "l2": SpaceDescriptor.lp(2.0),
    "s": SpaceDescriptor.lambda_(LogShift()),
    "H(C)'": SpaceDescriptor.lambda_(Affine(1, 1), dual=True),
}
mark = {Verdict.HOLDS: "+", Verdict.FAILS: ".", Verdict.UNDETERMINED: "?"}

for name, sd in spaces.items():
    print(f"power bounded on {name}  (rows r, cols s)")
    for r in grid:
        row = [classify_ergodic(BandParams(r, s), sd) for s in grid]
        assert not any(check_chain(rep) for rep in row)
        print(f"{r:+.2f} " + "".join(mark[rep.power_bounded.verdict] for rep in row))
    print()

rep = classify_ergodic(BandParams(0.5, 0.5), spaces["l2"])
for key, val in rep.to_json().items():
    print(key, val)

g = growth_experiment(BandParams(1, -1), Unit(), 5000)
print("growth rate", g.rate, "expected", g.expected)

t = cesaro_experiment(BandParams(0.5, 0.5), spaces["l2"], 2000, points=6)
for row in t.rows():
    print(row)
