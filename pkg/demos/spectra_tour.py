"""Walk through the fine spectrum of B(r,s) on a few weighted lp spaces."""
import numpy as np

from bandspec import (Affine, BandParams, GeometricExp, LogShift, Unit, boundary_series_test,
                      classify_point, fine_spectrum, resolvent_apply, SeqVector, TruncationConfig,
                      apply)

b = BandParams(1, 1)
weights = {
    "unit": Unit(),
    "2^n": GeometricExp(2.0, Affine(1.0, 0.0)),
    "n+1": GeometricExp(np.e, LogShift()),
}

for name, v in weights.items():
    fs = fine_spectrum(b, 2.0, v)
    print(f"{name:>5}: sigma = {fs.sigma}, sigma_r = {fs.residual}, sigma_c = {fs.continuous}")

# the boundary circle belongs to sigma_r only if the series converges there
print(boundary_series_test(Unit(), 2.0, 0.5).value)
print(boundary_series_test(weights["2^n"], 2.0, 2.0).value)

fs = fine_spectrum(b, 2.0, weights["2^n"])
for a in (1.0, 2.0, 3.0, 1 + 2j, 4.5):
    print(a, classify_point(fs, a).value)

# outside the disk the resolvent is a convergent Toeplitz kernel
m = 64
y = np.zeros(m)
y[0] = 1.0
x = resolvent_apply(b, 3.5, SeqVector(y), TruncationConfig(m), Unit())
res = apply(b, x).entries - 3.5 * x.entries - y
print(np.abs(res[:-1]).max(), x.entries[:4].real)
