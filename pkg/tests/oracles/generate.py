"""Independent oracle computations, frozen into tests/fixtures/oracles.json.

Nothing here imports the package.  Methods: exact integer and rational
arithmetic, direct iteration, and dense SVD of explicitly built matrices.
Run once before the build; the tests only read the JSON.
"""
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "oracles.json"


def cesaro_norms():
    # T_[n] e_0 for r = s = 1/2 by direct iteration with a running sum
    n_max = 10_000
    x = np.zeros(n_max + 2)
    x[0] = 1.0
    acc = np.zeros_like(x)
    out = {}
    for j in range(1, n_max + 1):
        y = 0.5 * x
        y[1:] += 0.5 * x[:-1]
        x = y
        acc += x
        if j in (10, 100, 1000, 10_000):
            out[str(j)] = float(np.linalg.norm(acc / j))
    return out


def cesaro_exact(n):
    # (T_[n] e_0)_k = (1/n) sum_{j=1}^n binom(j,k) / 2^j, exact
    entries = [sum(Fraction(math.comb(j, k), 2 ** j) for j in range(max(k, 1), n + 1)) / n
               for k in range(n + 1)]
    return float(sum(e * e for e in entries)) ** 0.5


def growth_rates(n=5000):
    c = [1] * (n + 1)
    for k in range(1, n + 1):
        c[k] = c[k - 1] * (n - k + 1) // k
    unit = sum(t * t for t in c)                     # = binom(2n, n)
    assert unit == math.comb(2 * n, n)
    two = sum(t * t * 4 ** k for k, t in enumerate(c))        # v_k = 2^k
    lin = sum(t * t * (k + 1) ** 2 for k, t in enumerate(c))  # v_k = k + 1
    return {name: math.exp(math.log(val) / (2 * n))
            for name, val in (("unit_r1_s-1", unit), ("pow2_r1_s1", two), ("lin_r1_s1", lin))}


def section(r, s, alpha, m, logv=None):
    A = np.diag(np.full(m, r - alpha, dtype=complex))
    sub = np.full(m - 1, s, dtype=complex)
    if logv is not None:
        sub = sub * np.exp(np.diff(logv))
    A[np.arange(1, m), np.arange(m - 1)] = sub
    return A


def smin(A):
    return float(np.linalg.svd(A, compute_uv=False)[-1])


def pseudospectrum():
    xs = np.linspace(-0.6, 2.6, 201)
    ys = np.linspace(-1.6, 1.6, 201)
    X, Y = np.meshgrid(xs, ys)
    d = np.hypot(X - 1, Y)
    inner_far = float(d[d < 0.8].max())
    outer_near = float(d[d > 1.5].min())
    out = {
        "inner_max_distance": inner_far,
        "outer_min_distance": outer_near,
        # sigma_min depends only on |alpha - r|, so the extreme grid values sit
        # at these two distances
        "inner_sigma_at_max_distance": smin(section(1, -1, 1 + inner_far, 300)),
        "outer_sigma_at_min_distance": smin(section(1, -1, 1 + outer_near, 300)),
        "floor": 0.5,
        "alpha_1_5_m300": smin(section(1, -1, 1.5, 300)),
        "m_sweep_alpha_2_5": {str(m): smin(section(1, -1, 2.5, m)) for m in (50, 100, 200, 300)},
        "m_sweep_alpha_0_5j": {str(m): smin(section(1, -1, 1 + 0.5j, m)) for m in (10, 20, 30, 40)},
        "outside_points": {f"{a}": smin(section(1, -1, a, 300))
                           for a in (2.5, 3.0, -0.75, 1 + 2j)},
    }
    # weighted section for v_n = n + 1, r = 0.5, s = 1 (L = 1, N = 2)
    m = 60
    logv = np.log(np.arange(1, m + 1, dtype=float))
    out["weighted_lin"] = {f"{a}": smin(section(0.5, 1.0, a, m, logv)) for a in (2.0, 3.5, -2.0 + 1j)}
    return out


def main():
    data = {
        "cesaro_half_half_e0": cesaro_norms(),
        "cesaro_half_half_e0_exact": {str(n): cesaro_exact(n) for n in (10, 50)},
        "growth_n5000": growth_rates(),
        "pseudospectrum_r1_s-1": pseudospectrum(),
    }
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(json.dumps(data, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
