"""
Nilpotent contractions as compressions of shifts
================================================

If ||T|| <= 1 and T^n = 0, stacking the vectors D T^t x (D the defect
operator (I - T^*T)^{1/2}) gives an isometry V with

    T = V^* (I_r (x) S_n^*) V,     r = rank D.

Compressions can only shrink rank-k ranges, so the rank-k range of T sits
inside that of r copies of the adjoint shift: a disc of radius
cos(ceil(k/r) pi/(n+1)). In particular the numerical radius is at most
||T|| cos(pi/(n+1)).

Run from the repository root:  python3 demos/nilpotent_dilation.py
"""

import numpy as np

from rankrange import (
    build_dilation,
    radius_bound_report,
    containment_reports,
    verify_dilation,
)
from rankrange.samples import random_nilpotent_contraction

rng = np.random.default_rng(7)

# %%
# Build the isometry for a random strictly lower triangular contraction and
# check the three identities it must satisfy.

T = random_nilpotent_contraction(rng, 5, norm_range=(0.9, 0.9))
model = build_dilation(T)
iso, intertwine, compression = verify_dilation(model)
print(f"n = {model.n}, r = {model.r}, V is {model.V.shape[0]} x {model.V.shape[1]}")
print(f"residuals: V*V - I {iso:.1e}, VT - KV {intertwine:.1e}, T - V*KV {compression:.1e}")

# %%
# Containment of the computed rank-k ranges in the discs. A positive
# margin is the room left between the computed region and the disc.

for rep in containment_reports(T, [1, 2, 3, 4]):
    bound = "empty" if rep.bound is None else f"{rep.bound.radius:.4f}"
    print(f"k={rep.k}: {rep.computed_region.kind:8s} bound radius {bound:>7s}, "
          f"margin {rep.margin:+.4f}, contained {rep.contained}")

# %%
# The numerical radius bound over a batch of random examples: the ratio
# omega / (||T|| cos(pi/(n+1))) never exceeds 1, and scaled shifts hit 1.

ratios = []
for _ in range(200):
    T = random_nilpotent_contraction(rng, int(rng.integers(2, 8)))
    omega, bound = radius_bound_report(T)
    ratios.append(omega / bound)
print(f"largest ratio over 200 random matrices: {max(ratios):.4f}")
