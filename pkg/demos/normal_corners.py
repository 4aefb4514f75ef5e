"""
Normal matrices and kinks in the support function
==================================================

For a normal matrix with eigenvalues l_1..l_n the rank-k range is the
intersection of the convex hulls of every n-k+1 of the eigenvalues. It is
a polygon with sharp corners, and at a corner the support function c(t)
has a kink. A uniform angle grid only sees the kink to first order, so
the plain sweep overshoots a little; ``refine=True`` locates the exact
crossing angles and recovers the corners.

Run from the repository root:  python3 demos/normal_corners.py
"""

import numpy as np

from rankrange import hausdorff, normal_range, rank_range, rank_ranges
from rankrange.samples import random_normal

rng = np.random.default_rng(42)

# %%
# Four eigenvalues at the corners of a tilted square. The rank-2 range is
# the single point where the diagonals cross.

eigs = np.exp(0.3j) * np.array([1, 1j, -1, -1j]) + (0.2 - 0.1j)
T = np.diag(eigs)
exact = normal_range(eigs, 2)
plain = rank_range(T, 2)
fine = rank_range(T, 2, refine=True)
print("exact   ", exact)
print("uniform ", plain.region, f"gap {hausdorff(plain.region, exact):.2e}")
print("refined ", fine.region, f"gap {hausdorff(fine.region, exact):.2e}",
      f"({len(fine.refined_supports)} extra angles)")

# %%
# A random 6 x 6 normal matrix, all ranks. Conjugating by a random unitary
# hides the eigenvalues, so the engine really works from the matrix.

T, eigs = random_normal(rng, 6)
for plain, fine in zip(rank_ranges(T), rank_ranges(T, refine=True)):
    exact = normal_range(eigs, plain.k)
    if exact.is_empty:
        print(f"k={plain.k}: empty (uniform {plain.region.kind}, refined {fine.region.kind})")
        continue
    print(f"k={plain.k}: {exact.kind:8s} uniform gap {hausdorff(plain.region, exact):.1e}, "
          f"refined gap {hausdorff(fine.region, exact):.1e}")
