import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull, HalfspaceIntersection

from rankrange.geometry import (
    ConvexRegion,
    DiscRegion,
    HalfPlane,
    classify,
    contains_point,
    convex_hull,
    disc_polygon,
    distance_to,
    hausdorff,
    intersect_half_planes,
    is_subset,
    polygon_intersection,
)


def uniform_planes(c, count=720):
    return [HalfPlane(2 * math.pi * j / count, c) for j in range(count)]


def square(h=1.0, shift=0j):
    return ConvexRegion.polygon(shift + h * np.array([-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j]))


def random_planes(rng, count):
    theta = rng.uniform(0, 2 * math.pi, count)
    c = rng.uniform(0.2, 1.5, count)
    # a fixed frame of normals keeps the intersection bounded
    theta = np.concatenate([theta, [0, math.pi / 2, math.pi, 3 * math.pi / 2]])
    c = np.concatenate([c, [2.0, 2.0, 2.0, 2.0]])
    return [HalfPlane(t, cc) for t, cc in zip(theta, c)]


def test_half_plane_normalises_angle():
    h = HalfPlane(-math.pi / 2, 1.0)
    assert h.theta == pytest.approx(3 * math.pi / 2)
    assert h.margin(2j) == pytest.approx(1.0)  # Re(-i * 2i) - 1


def test_region_kinds_validate_vertex_counts():
    with pytest.raises(ValueError):
        ConvexRegion("point", [1, 2])
    with pytest.raises(ValueError):
        ConvexRegion("polygon", [0, 1])
    with pytest.raises(ValueError):
        ConvexRegion("blob", [])
    with pytest.raises(ValueError):
        DiscRegion(0, -1)


def test_intersect_uniform_planes_examples():
    disc = intersect_half_planes(uniform_planes(1.0), 2.0, 1e-9)
    assert disc.kind == "polygon"
    assert hausdorff(disc, DiscRegion(0, 1)) <= 1e-5
    point = intersect_half_planes(uniform_planes(0.0), 2.0, 1e-9)
    assert point.kind == "point" and abs(point.vertices[0]) <= 1e-9
    assert intersect_half_planes(uniform_planes(-0.3), 2.0, 1e-9).is_empty


def test_intersect_rejects_unbounded_families():
    with pytest.raises(ValueError):
        intersect_half_planes([HalfPlane(t, 1.0) for t in (0.0, 0.5, 1.0)], 2.0)
    with pytest.raises(ValueError):
        intersect_half_planes([HalfPlane(0.0, 1.0)], 2.0)


def test_duplicate_normals_keep_tightest():
    planes = uniform_planes(1.0, 8) + [HalfPlane(0.0, 0.5)]
    region = intersect_half_planes(planes, 2.0)
    assert np.max(region.vertices.real) == pytest.approx(0.5)


def test_intersect_matches_scipy(rng):
    planes = random_planes(rng, 30)
    ours = intersect_half_planes(planes, 10.0)
    A = np.array([[math.cos(h.theta), -math.sin(h.theta), -h.c] for h in planes])
    pts = HalfspaceIntersection(A, np.zeros(2)).intersections
    hull = ConvexHull(pts)
    theirs = ConvexRegion.polygon(pts[hull.vertices, 0] + 1j * pts[hull.vertices, 1])
    assert hausdorff(ours, theirs) <= 1e-9


@given(st.integers(0, 2**32 - 1))
def test_intersection_properties(seed):
    rng = np.random.default_rng(seed)
    planes = random_planes(rng, 12)
    base = intersect_half_planes(planes, 10.0)
    assert not base.is_empty
    # contained in every half-plane
    for h in planes:
        assert np.all(h.margin(base.vertices) <= 1e-9)
    # order does not matter
    shuffled = [planes[i] for i in rng.permutation(len(planes))]
    assert hausdorff(base, intersect_half_planes(shuffled, 10.0)) <= 1e-9
    # a redundant plane changes nothing
    far = HalfPlane(rng.uniform(0, 2 * math.pi), 5.0)
    assert hausdorff(base, intersect_half_planes(planes + [far], 10.0)) <= 1e-9


def test_polygon_intersection_examples():
    half = ConvexRegion.polygon([0 - 1j, 1 - 1j, 1 + 1j, 0 + 1j])
    got = polygon_intersection(square(), half)
    assert hausdorff(got, half) <= 1e-12

    left = convex_hull([1j, -1, -1j])
    right = convex_hull([1, 1j, -1j])
    seg = polygon_intersection(left, right)
    assert seg.kind == "segment"
    assert hausdorff(seg, ConvexRegion.segment(1j, -1j)) <= 1e-12
    pt = polygon_intersection(polygon_intersection(seg, convex_hull([1, -1, -1j])),
                              convex_hull([1, 1j, -1]))
    assert pt.kind == "point" and abs(pt.vertices[0]) <= 1e-12

    P = square(0.7, 0.2 + 0.1j)
    assert hausdorff(polygon_intersection(P, P), P) <= 1e-12


@given(st.integers(0, 2**32 - 1))
def test_polygon_intersection_subset_and_commutative(seed):
    rng = np.random.default_rng(seed)
    A = convex_hull(rng.normal(size=8) + 1j * rng.normal(size=8))
    B = convex_hull(0.5 + rng.normal(size=8) + 1j * rng.normal(size=8))
    AB, BA = polygon_intersection(A, B), polygon_intersection(B, A)
    assert AB.is_empty == BA.is_empty
    if not AB.is_empty:
        assert is_subset(AB, A, 1e-9) and is_subset(AB, B, 1e-9)
        assert hausdorff(AB, BA) <= 1e-9


def test_convex_hull_examples():
    sq = convex_hull([1, 1j, -1, -1j])
    assert sq.kind == "polygon" and sq.vertices.size == 4
    assert hausdorff(convex_hull([0, 1, 2]), ConvexRegion.segment(0, 2)) == 0
    pt = convex_hull([5])
    assert pt.kind == "point" and pt.vertices[0] == 5


def test_convex_hull_matches_scipy(rng):
    pts = rng.normal(size=40) + 1j * rng.normal(size=40)
    ours = convex_hull(pts)
    ref = ConvexHull(np.column_stack([pts.real, pts.imag]))
    assert set(np.round(ours.vertices, 12)) == set(np.round(pts[ref.vertices], 12))


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=1, max_size=15),
       st.randoms())
def test_convex_hull_ignores_order_and_duplicates(pairs, rnd):
    pts = [complex(x, y) for x, y in pairs]
    shuffled = pts + pts[: len(pts) // 2]
    rnd.shuffle(shuffled)
    a, b = convex_hull(pts), convex_hull(shuffled)
    assert a.kind == b.kind
    assert hausdorff(a, b) <= 1e-12


def test_polygon_vertices_are_ccw_strictly_convex(rng):
    poly = convex_hull(rng.normal(size=30) + 1j * rng.normal(size=30))
    v = poly.vertices
    e = np.roll(v, -1) - v
    cross = (np.conj(e) * np.roll(e, -1)).imag
    assert np.all(cross > 0)


def test_classify_by_diameter_and_width():
    assert classify(np.array([1 + 1j, 1 + 1j + 1e-12]), 1e-9).kind == "point"
    thin = np.array([0, 1, 1 + 1e-12j, 1e-12j])
    assert classify(thin, 1e-9).kind == "segment"
    assert classify(np.array([]), 1e-9).is_empty


def test_contains_point_examples():
    assert not contains_point(ConvexRegion.empty(), 0)
    assert contains_point(ConvexRegion.point(0), 1e-12, 1e-9)
    unit = disc_polygon(DiscRegion(0, 1), 1024)
    assert contains_point(unit, 0.999)
    assert not contains_point(unit, 1.01, 1e-3)


def test_is_subset_examples():
    small = disc_polygon(DiscRegion(0, 0.3), 256)
    big = disc_polygon(DiscRegion(0, 0.7), 256)
    assert is_subset(ConvexRegion.empty(), small)
    assert is_subset(small, big)
    assert not is_subset(big, small)
    assert is_subset(small, DiscRegion(0, 0.3))
    assert not is_subset(small, ConvexRegion.empty())


def test_hausdorff_examples():
    sq = square()
    assert hausdorff(sq, sq) == 0
    assert hausdorff(ConvexRegion.point(0), ConvexRegion.point(3 + 4j)) == pytest.approx(5)
    assert hausdorff(sq, square(1.0, 0.1)) == pytest.approx(0.1, abs=1e-12)
    with pytest.raises(ValueError):
        hausdorff(sq, ConvexRegion.empty())


@given(st.integers(0, 2**32 - 1))
def test_hausdorff_is_a_metric_on_random_triples(seed):
    rng = np.random.default_rng(seed)
    A, B, C = (convex_hull(rng.normal(size=6) + 1j * rng.normal(size=6)) for _ in range(3))
    ab, ba = hausdorff(A, B), hausdorff(B, A)
    assert ab == pytest.approx(ba, abs=1e-12)
    assert hausdorff(A, C) <= ab + hausdorff(B, C) + 1e-6


def test_distance_to_polygon_matches_brute_force(rng):
    poly = convex_hull(rng.normal(size=10) + 1j * rng.normal(size=10))
    z = 3 * (rng.normal(size=50) + 1j * rng.normal(size=50))
    fine = np.concatenate([a + np.linspace(0, 1, 2001) * (b - a)
                           for a, b in zip(poly.vertices, np.roll(poly.vertices, -1))])
    brute = np.min(np.abs(z[:, None] - fine[None, :]), axis=1)
    got = distance_to(poly, z)
    outside = got > 0
    assert np.allclose(got[outside], brute[outside], atol=1e-3)


def test_disc_polygon_examples():
    sq = disc_polygon(DiscRegion(0, 1), 4)
    assert np.allclose(sq.vertices, [1, 1j, -1, -1j])
    pt = disc_polygon(DiscRegion(0, 0), 17)
    assert pt.kind == "point" and pt.vertices[0] == 0
    d = DiscRegion(2, 1)
    assert hausdorff(disc_polygon(d, 1024), d) <= 5e-6


def test_half_planes_reproduce_region():
    for region in (square(0.5, 1j), ConvexRegion.point(0.3 - 0.2j),
                   ConvexRegion.segment(-1 + 1j, 2 - 1j)):
        planes = region.half_planes()
        for h in planes:
            assert np.all(h.margin(region.vertices) <= 1e-12)
        again = intersect_half_planes(planes, 5.0, 1e-9)
        assert again.kind == region.kind
        assert hausdorff(again, region) <= 1e-9
