"""Convex regions in the complex plane and the operations the engine needs.

Points are Python/numpy complex numbers. A :class:`ConvexRegion` is one of
four kinds (empty, point, segment, polygon); polygons are stored with
counterclockwise, strictly convex vertex order. A :class:`HalfPlane`
``(theta, c)`` is the set ``{z : Re(e^{i theta} z) <= c}``.

Intersections are computed by clipping a vertex list against half-planes
one at a time, then classifying the result with a length tolerance.
"""

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HalfPlane",
    "ConvexRegion",
    "DiscRegion",
    "default_tol",
    "intersect_half_planes",
    "half_plane_chain",
    "clip_chain",
    "polygon_intersection",
    "convex_hull",
    "classify",
    "distance_to",
    "contains_point",
    "is_subset",
    "hausdorff",
    "disc_polygon",
    "boundary_samples",
]

TWO_PI = 2.0 * math.pi
_ROUNDING = 64 * np.finfo(float).eps


def default_tol(bounding_radius=1.0):
    return 1e-9 * max(1.0, bounding_radius)


@dataclass(frozen=True)
class HalfPlane:
    theta: float
    c: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)
        object.__setattr__(self, "c", float(self.c))

    def margin(self, z):
        """``Re(e^{i theta} z) - c``; positive means outside."""
        return (np.exp(1j * self.theta) * np.asarray(z)).real - self.c


@dataclass(frozen=True, eq=False)
class ConvexRegion:
    kind: str
    vertices: np.ndarray = field(repr=False)

    KINDS = ("empty", "point", "segment", "polygon")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        v = np.asarray(self.vertices, dtype=complex).reshape(-1)
        expected = {"empty": 0, "point": 1, "segment": 2}.get(self.kind)
        if expected is not None and v.size != expected:
            raise ValueError(f"{self.kind} needs {expected} vertices, got {v.size}")
        if self.kind == "polygon" and v.size < 3:
            raise ValueError("polygon needs at least 3 vertices")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def empty(cls):
        return cls("empty", [])

    @classmethod
    def point(cls, z):
        return cls("point", [z])

    @classmethod
    def segment(cls, a, b):
        return cls("segment", [a, b])

    @classmethod
    def polygon(cls, vertices):
        return cls("polygon", vertices)

    @property
    def is_empty(self):
        return self.kind == "empty"

    def half_planes(self):
        """Half-planes whose intersection is this region (none for empty)."""
        v = self.vertices
        if self.kind == "point":
            z = v[0]
            return [HalfPlane(0.0, z.real), HalfPlane(math.pi, -z.real),
                    HalfPlane(-math.pi / 2, z.imag), HalfPlane(math.pi / 2, -z.imag)]
        if self.kind == "segment":
            a, b = v
            d = (b - a) / abs(b - a)
            normals_and_anchors = [(-1j * d, a), (1j * d, a), (d, b), (-d, a)]
        elif self.kind == "polygon":
            e = np.roll(v, -1) - v
            normals_and_anchors = zip(-1j * e / np.abs(e), v)
        else:
            return []
        planes = []
        for nrm, anchor in normals_and_anchors:
            w = np.conj(nrm)
            planes.append(HalfPlane(-np.angle(nrm), (w * anchor).real))
        return planes

    def __repr__(self):
        if self.kind == "empty":
            return "ConvexRegion.empty()"
        if self.kind == "point":
            return f"ConvexRegion.point({self.vertices[0]!r})"
        if self.kind == "segment":
            return f"ConvexRegion.segment({self.vertices[0]!r}, {self.vertices[1]!r})"
        return f"ConvexRegion.polygon(<{self.vertices.size} vertices>)"


@dataclass(frozen=True)
class DiscRegion:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError("disc radius must be non-negative")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    def to_region(self, m=1024):
        return disc_polygon(self, m)


# --- clipping ---------------------------------------------------------------

def _dedupe_cyclic(v, eps):
    if v.size <= 1:
        return v
    keep = np.abs(v - np.roll(v, 1)) > eps
    if not keep.any():
        return v[:1]
    return v[keep]


def _clip(v, theta, c, eps, tol):
    """Clip a convex vertex chain by ``Re(e^{i theta} z) <= c``.

    Vertices with margin <= eps count as inside (on the line). If every
    vertex is outside, those within ``tol`` are kept as a degenerate
    remainder; otherwise the result is empty.
    """
    if v.size == 0:
        return v
    f = (np.exp(1j * theta) * v).real - c
    inside = f <= eps
    if inside.all():
        return v
    if not inside.any():
        near = f <= tol
        return v[near] if near.any() else v[:0]
    m = v.size
    out = np.flatnonzero(~inside)
    starts = out[inside[out - 1]]
    if starts.size == 1 and m >= 3:
        # convex chain: the outside vertices form one cyclic run s..e
        s = int(starts[0])
        e = (s + out.size - 1) % m
        prev, nxt = (s - 1) % m, (e + 1) % m
        kept = v[(nxt + np.arange(m - out.size)) % m]
        # only the new crossing points can duplicate a neighbour
        added, last = [], kept[-1]
        if f[prev] < -eps:
            a = v[prev] + f[prev] / (f[prev] - f[s]) * (v[s] - v[prev])
            if abs(a - last) > eps:
                added.append(a)
                last = a
        if f[nxt] < -eps:
            b = v[e] + f[e] / (f[e] - f[nxt]) * (v[nxt] - v[e])
            if abs(b - last) > eps and abs(b - kept[0]) > eps:
                added.append(b)
        if not added:
            return _dedupe_cyclic(kept, eps)
        return np.concatenate([kept, added])
    fn = np.roll(f, -1)
    vn = np.roll(v, -1)
    cross = ((f < -eps) & (fn > eps)) | ((f > eps) & (fn < -eps))
    t = np.where(cross, f / np.where(cross, f - fn, 1.0), 0.0)
    cand = np.stack([v, v + t * (vn - v)], axis=1).reshape(-1)
    mask = np.stack([inside, cross], axis=1).reshape(-1)
    return _dedupe_cyclic(cand[mask], eps)


def _box(radius, center=0j):
    r = float(radius)
    return center + np.array([-r - 1j * r, r - 1j * r, r + 1j * r, -r + 1j * r])


def _diameter_pair(v):
    if v.size == 1:
        return 0.0, 0, 0
    best, bi, bj = -1.0, 0, 0
    for i in range(0, v.size, 256):
        d = np.abs(v[i:i + 256, None] - v[None, :])
        idx = np.unravel_index(np.argmax(d), d.shape)
        if d[idx] > best:
            best, bi, bj = float(d[idx]), i + idx[0], idx[1]
    return best, bi, bj


def _width(v):
    """Minimal width of the convex hull of an ordered convex chain."""
    e = np.roll(v, -1) - v
    le = np.abs(e)
    ok = le > 0
    if not ok.any():
        return 0.0
    e, a = e[ok] / le[ok], v[ok]
    best = np.inf
    for i in range(0, e.size, 256):
        # distance of every vertex from each edge line
        dist = np.abs(((v[None, :] - a[i:i + 256, None]) * np.conj(e[i:i + 256, None])).imag)
        best = min(best, float(np.min(np.max(dist, axis=1))))
    return best


def _strictly_convex(v, tol):
    """Drop near-duplicate and non-left-turn vertices from a CCW chain."""
    changed = True
    while changed and v.size >= 3:
        changed = False
        v2 = _dedupe_cyclic(v, tol)
        if v2.size != v.size:
            v, changed = v2, True
        if v.size < 3:
            break
        a = v - np.roll(v, 1)
        b = np.roll(v, -1) - v
        cr = (np.conj(a) * b).imag
        keep = cr > _ROUNDING * np.abs(a) * np.abs(b)
        if not keep.all():
            if not keep.any():
                break
            v, changed = v[keep], True
    return v


def classify(vertices, tol):
    """Turn an ordered convex vertex chain into a :class:`ConvexRegion`."""
    v = np.asarray(vertices, dtype=complex).reshape(-1)
    if v.size == 0:
        return ConvexRegion.empty()
    diam, i, j = _diameter_pair(v)
    if diam <= tol:
        return ConvexRegion.point(v.mean())
    if v.size == 2 or _width(v) <= tol:
        a, b = v[i], v[j]
        if (a.real, a.imag) > (b.real, b.imag):
            a, b = b, a
        return ConvexRegion.segment(a, b)
    area2 = float(np.sum((np.conj(v) * np.roll(v, -1)).imag))
    if area2 < 0:
        v = v[::-1]
    v = _strictly_convex(v, tol)
    if v.size < 3:
        return classify(v, tol)
    return ConvexRegion.polygon(v)


def clip_chain(v, planes, bounding_radius, tol=None):
    """Clip a convex vertex chain by further half-planes (no classification)."""
    tol = default_tol(bounding_radius) if tol is None else tol
    eps = _ROUNDING * max(1.0, bounding_radius)
    v = np.asarray(v, dtype=complex)
    for h in planes:
        v = _clip(v, h.theta, h.c, eps, tol)
        if v.size == 0:
            break
    return v


def half_plane_chain(planes, bounding_radius, tol=None):
    """Raw vertex chain of a half-plane intersection clipped to the box.

    See :func:`intersect_half_planes`; an empty array means empty.
    """
    planes = list(planes)
    if bounding_radius <= 0:
        raise ValueError("bounding_radius must be positive")
    if len(planes) < 3:
        raise ValueError("need at least 3 half-planes")

    tightest = {}
    for h in planes:
        tightest[h.theta] = min(h.c, tightest.get(h.theta, math.inf))

    angles = np.sort(np.fromiter(tightest, dtype=float))
    gaps = np.diff(np.concatenate([angles, [angles[0] + TWO_PI]]))
    if gaps.max() >= math.pi - 1e-12:
        raise ValueError("half-plane normals leave an angular gap >= pi; region is unbounded")

    # dict preserves first-seen order, so clipping follows the caller's order
    deduped = [HalfPlane(t, c) for t, c in tightest.items()]
    return clip_chain(_box(bounding_radius), deduped, bounding_radius, tol)


def intersect_half_planes(planes, bounding_radius, tol=None):
    """Intersect half-planes inside the square of half-width ``bounding_radius``.

    The normals must positively span the plane (largest angular gap < pi),
    otherwise the answer would just be an artefact of the box and
    ``ValueError`` is raised. Planes sharing an angle keep the smallest bound.
    """
    tol = default_tol(bounding_radius) if tol is None else tol
    return classify(half_plane_chain(planes, bounding_radius, tol), tol)


def polygon_intersection(P, Q, tol=None):
    if P.is_empty or Q.is_empty:
        return ConvexRegion.empty()
    scale = max(1.0, float(np.max(np.abs(P.vertices))), float(np.max(np.abs(Q.vertices))))
    tol = default_tol(scale) if tol is None else tol
    eps = _ROUNDING * scale
    v = P.vertices.copy()
    for h in Q.half_planes():
        v = _clip(v, h.theta, h.c, eps, tol)
        if v.size == 0:
            return ConvexRegion.empty()
    return classify(v, tol)


def convex_hull(points, tol=None):
    """Convex hull (Andrew's monotone chain) classified as point/segment/polygon."""
    pts = np.unique(np.asarray(points, dtype=complex).reshape(-1))
    if pts.size == 0:
        raise ValueError("convex_hull needs at least one point")
    scale = max(1.0, float(np.max(np.abs(pts))))
    tol = default_tol(scale) if tol is None else tol
    if pts.size <= 2:
        return classify(pts, tol)
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]

    def turn(o, a, b):
        return ((a - o).conjugate() * (b - o)).imag

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in pts[::-1]:
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = np.array(lower[:-1] + upper[:-1])
    return classify(hull, tol)


# --- distances --------------------------------------------------------------

def _segment_distance(z, a, b):
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0:
        return np.abs(z - a)
    t = np.clip(((z - a) * np.conj(d)).real / L2, 0.0, 1.0)
    return np.abs(z - (a + t * d))


def distance_to(region, z):
    """Euclidean distance from each point of ``z`` to the region (0 inside)."""
    z = np.asarray(z, dtype=complex)
    if isinstance(region, DiscRegion):
        return np.maximum(0.0, np.abs(z - region.center) - region.radius)
    if region.is_empty:
        return np.full(z.shape, np.inf)
    v = region.vertices
    if region.kind == "point":
        return np.abs(z - v[0])
    if region.kind == "segment":
        return _segment_distance(z, v[0], v[1])
    zf = z.reshape(-1)
    a = v[None, :]
    e = np.roll(v, -1)[None, :] - a
    rel = zf[:, None] - a
    inside = np.all((np.conj(e) * rel).imag >= 0.0, axis=1)
    t = np.clip((rel * np.conj(e)).real / (np.abs(e) ** 2), 0.0, 1.0)
    d = np.min(np.abs(rel - t * e), axis=1)
    return np.where(inside, 0.0, d).reshape(z.shape)


def contains_point(region, z, tol=1e-9):
    if not isinstance(region, DiscRegion) and region.is_empty:
        return False
    return bool(distance_to(region, z) <= tol)


def _extreme_points(region):
    if isinstance(region, DiscRegion):
        return boundary_samples(region, 4096)
    return region.vertices


def is_subset(A, B, tol=1e-9):
    """True if every extreme point of ``A`` lies within ``tol`` of ``B``."""
    if not isinstance(A, DiscRegion) and A.is_empty:
        return True
    if not isinstance(B, DiscRegion) and B.is_empty:
        return False
    return bool(np.all(distance_to(B, _extreme_points(A)) <= tol))


def boundary_samples(region, m=1024):
    """At least ``m`` boundary points (polygon vertices always included)."""
    if isinstance(region, DiscRegion):
        if region.radius == 0:
            return np.array([region.center])
        ang = TWO_PI * np.arange(m) / m
        return region.center + region.radius * np.exp(1j * ang)
    v = region.vertices
    if region.kind in ("empty", "point"):
        return v.copy()
    if region.kind == "segment":
        return v[0] + np.linspace(0.0, 1.0, m) * (v[1] - v[0])
    per_edge = max(1, -(-m // v.size))
    t = np.arange(per_edge) / per_edge
    e = np.roll(v, -1) - v
    return (v[:, None] + t[None, :] * e[:, None]).reshape(-1)


def hausdorff(A, B, m=1024):
    """Symmetric Hausdorff distance between two non-empty convex regions.

    Distance to a convex set is a convex function, so for polygons the
    one-sided maximum sits at a vertex; the dense samples only matter for
    discs.
    """
    for R in (A, B):
        if not isinstance(R, DiscRegion) and R.is_empty:
            raise ValueError("Hausdorff distance is undefined for an empty region")
    ab = float(np.max(distance_to(B, boundary_samples(A, m))))
    ba = float(np.max(distance_to(A, boundary_samples(B, m))))
    return max(ab, ba)


def disc_polygon(disc, m):
    """Regular m-gon inscribed in ``disc`` (a point when the radius is 0)."""
    if m < 3:
        raise ValueError("disc_polygon needs m >= 3")
    if disc.radius == 0:
        return ConvexRegion.point(disc.center)
    ang = TWO_PI * np.arange(m) / m
    return ConvexRegion.polygon(disc.center + disc.radius * np.exp(1j * ang))
