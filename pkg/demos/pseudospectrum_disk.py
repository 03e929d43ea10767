"""Finite sections have spectrum {r}, yet sigma_min sees the whole disk."""
import numpy as np

from bandspec import BandParams, GridSpec, finite_section, pseudo_grid, sigma_min, sigma_min_inverse

b = BandParams(1, -1)
A = finite_section(b, 300)
print(np.unique(np.linalg.eigvals(A)))

for a in (1.5, 1 + 0.9j, 2.05, 2.5, 3.0):
    print(a, sigma_min(b, a, 300), sigma_min_inverse(b, a, 300))

g = pseudo_grid(b, GridSpec(nx=81, ny=81, m=300))
print(g.summary)

# crude contour picture, one char per grid cell
step = 4
for row in np.log10(np.maximum(g.sigma[::step, ::step], 1e-300)):
    print("".join("#" if v < -3 else "+" if v < -1 else "." for v in row))
