"""Exact rank-k ranges for matrices where a closed form is known.

These are used as ground truth for the numerical engine: the n x n shift,
Hermitian and normal matrices, and the disc that contains the rank-k
range of a nilpotent contraction.
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import ConvexRegion, DiscRegion, convex_hull, polygon_intersection

__all__ = [
    "IntervalRegion",
    "rho",
    "replicated_kth_largest",
    "tridiag_eigenvalue",
    "char_det",
    "shift_range",
    "hermitian_range",
    "normal_range",
    "nilpotent_bound",
    "MAX_NORMAL_DIM",
]

MAX_NORMAL_DIM = 14


@dataclass(frozen=True)
class IntervalRegion:
    """Closed real interval [lo, hi]; ``lo is None`` marks the empty set."""

    lo: float | None
    hi: float | None

    @classmethod
    def empty(cls):
        return cls(None, None)

    @property
    def is_empty(self):
        return self.lo is None

    def to_region(self):
        if self.is_empty:
            return ConvexRegion.empty()
        if self.lo == self.hi:
            return ConvexRegion.point(self.lo)
        return ConvexRegion.segment(self.lo, self.hi)


def rho(k, r):
    """ceil(k / r): where the k-th largest lands after repeating each value r times."""
    if k < 1 or r < 1:
        raise ValueError("rho needs k >= 1 and r >= 1")
    q, rem = divmod(k, r)
    return q if rem == 0 else q + 1


def replicated_kth_largest(values, r, k):
    """k-th largest term of ``values`` with every entry repeated r times.

    ``values`` must be strictly decreasing; the answer is ``values[rho(k, r) - 1]``.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("values must be a non-empty 1-D sequence")
    if np.any(np.diff(values) >= 0):
        raise ValueError("values must be strictly decreasing")
    if not 1 <= k <= values.size * r:
        raise ValueError(f"k must lie in [1, {values.size * r}]")
    return float(values[rho(k, r) - 1])


def tridiag_eigenvalue(n, nu):
    """nu-th largest eigenvalue of e^{it} S_n + e^{-it} S_n^*: 2 cos(nu pi / (n + 1))."""
    if not 1 <= nu <= n:
        raise ValueError(f"nu must lie in [1, {n}]")
    return 2.0 * math.cos(nu * math.pi / (n + 1))


def char_det(n, lam):
    """det(e^{it} S_n + e^{-it} S_n^* - lam I) from the three-term recurrence.

    D_n = -lam D_{n-1} - D_{n-2} with D_0 = 1 and D_{-1} = 0. The value
    does not depend on the angle t.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = 0.0, 1.0
    for _ in range(n):
        prev, cur = cur, -lam * cur - prev
    return cur


def _cos_ratio(p, q):
    """cos(p pi / q) for 0 < p <= q / 2, exactly 0 at p = q / 2."""
    return 0.0 if 2 * p == q else math.cos(p * math.pi / q)


def shift_range(n, k):
    """Exact rank-k range of the n x n shift: a centred disc, or None if empty."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}]")
    if k <= (n + 1) // 2:
        return DiscRegion(0.0, _cos_ratio(k, n + 1))
    return None


def hermitian_range(spectrum, k):
    """Rank-k range of a Hermitian matrix with descending eigenvalues ``spectrum``.

    It is the interval between the k-th smallest and the k-th largest
    eigenvalue, empty when those cross.
    """
    s = np.asarray(spectrum, dtype=float)
    n = s.size
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}]")
    lo, hi = float(s[n - k]), float(s[k - 1])
    if lo > hi:
        return IntervalRegion.empty()
    return IntervalRegion(lo, hi)


def normal_range(eigs, k, tol=None):
    """Rank-k range of a normal matrix from its eigenvalues.

    Intersection, over every choice of n - k + 1 eigenvalues, of the convex
    hull of the chosen ones. Subsets are visited in lexicographic order and
    the loop stops as soon as the running intersection is empty.
    """
    eigs = np.asarray(eigs, dtype=complex).reshape(-1)
    n = eigs.size
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}]")
    if n > MAX_NORMAL_DIM:
        raise ValueError(f"normal_range enumerates subsets; n = {n} exceeds {MAX_NORMAL_DIM}")
    region = None
    for idx in combinations(range(n), n - k + 1):
        hull = convex_hull(eigs[list(idx)], tol)
        region = hull if region is None else polygon_intersection(region, hull, tol)
        if region.is_empty:
            break
    return region


def nilpotent_bound(n, k, r):
    """Disc containing the rank-k range of a contraction T with T^n = 0.

    ``r`` is the rank of the defect operator (I - T^*T)^{1/2}. Returns None
    (empty) when rho(k, r) exceeds floor((n + 1) / 2) or k > n r.
    """
    if n < 1 or k < 1 or r < 1:
        raise ValueError("n, k and r must be positive")
    if k > n * r:
        return None
    p = rho(k, r)
    if p > (n + 1) // 2:
        return None
    return DiscRegion(0.0, _cos_ratio(p, n + 1))
