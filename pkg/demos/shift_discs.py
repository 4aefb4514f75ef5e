"""
Rank-k ranges of the shift
==========================

The n x n shift S_n moves e_1 -> e_2 -> ... -> e_n -> 0. Its rank-k
numerical range turns out to be a centred disc of radius cos(k pi/(n+1))
while that cosine is non-negative, and empty beyond. This script computes
the ranges numerically and lays them next to the closed form.

Run from the repository root:  python3 demos/shift_discs.py
"""

import math
from pathlib import Path

import numpy as np

from rankrange import hausdorff, rank_ranges, shift_matrix, shift_range
from rankrange.formats import export_svg, result_document

out_dir = Path("demo_output")
out_dir.mkdir(exist_ok=True)

# %%
# One eigenvalue sweep of e^{it} S + e^{-it} S^* serves every k at once.
# For the shift the support c(t) does not depend on t at all: it is half
# of the k-th eigenvalue 2 cos(k pi/(n+1)) of the path-graph matrix.

n = 6
S = shift_matrix(n)
for res in rank_ranges(S, theta_samples=720, tol=1e-9):
    c = res.supports[:, 1]
    exact = shift_range(n, res.k)
    line = f"k={res.k}: support spread {np.ptp(c):.1e}, kind {res.region.kind:8s}"
    if exact is None:
        print(line, "closed form: empty")
    else:
        gap = hausdorff(res.region, exact)
        print(line, f"radius {exact.radius:.7f}, Hausdorff gap {gap:.2e}")

# %%
# For odd n the middle rank k = (n+1)/2 has radius cos(pi/2) = 0: the range
# collapses to the single point 0, and the polygon classifier reports it.

for n in (3, 5, 7):
    res = rank_ranges(shift_matrix(n), [(n + 1) // 2])[0]
    print(f"n={n}, k={(n + 1) // 2}: {res.region!r}")

# %%
# Pictures: each computed polygon with the closed-form disc dashed on top.

for k in (1, 2, 3):
    res = rank_ranges(shift_matrix(6), [k])[0]
    svg = export_svg(result_document(res), shift_range(6, k))
    path = out_dir / f"shift6_k{k}.svg"
    path.write_bytes(svg)
    print("wrote", path)

# %%
# The outer error of a 720-angle sweep is tiny: a circumscribed regular
# N-gon overshoots a disc of radius R by R (sec(pi/N) - 1).

R = math.cos(math.pi / 7)
print(f"expected overshoot for R={R:.4f}: {R * (1 / math.cos(math.pi / 720) - 1):.2e}")
