import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from rangeshape.geometry import ConvexPolygon, hausdorff, unit_directions

pts_strategy = st.lists(
    st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=3, max_size=40
).map(np.array)


def _qhull_vertices(P):
    try:
        hull = ConvexHull(P)
    except Exception:
        return None
    return P[hull.vertices]


@given(pts_strategy)
def test_hull_agrees_with_qhull(P):
    ref = _qhull_vertices(P)
    if ref is None or ConvexHull(P).volume < 1e-6:
        return
    poly = ConvexPolygon.from_points(P)
    assert poly.area() > 0  # counterclockwise
    assert np.isclose(poly.area(), ConvexHull(P).volume, rtol=1e-9)
    assert np.all(poly.contains(P, atol=1e-9))


@given(pts_strategy)
def test_diameter_brute_force(P):
    poly = ConvexPolygon.from_points(P)
    V = poly.vertices
    brute = np.max(np.hypot(*(V[:, None, :] - V[None, :, :]).transpose(2, 0, 1)))
    assert np.isclose(poly.diameter(), brute, rtol=1e-12, atol=1e-12)


def test_degenerate_hulls():
    assert len(ConvexPolygon.from_points([[1, 2]] * 5)) == 1
    seg = ConvexPolygon.from_points([[0, 0], [1, 1], [2, 2], [0.5, 0.5]])
    assert len(seg) == 2 and np.isclose(seg.diameter(), 2 * np.sqrt(2))
    assert seg.area() == 0.0


def test_centroid_of_square_and_triangle():
    sq = ConvexPolygon.from_points([[0, 0], [2, 0], [2, 2], [0, 2]])
    assert np.allclose(sq.centroid(), [1, 1])
    tri = ConvexPolygon.from_points([[0, 0], [3, 0], [0, 3]])
    assert np.allclose(tri.centroid(), [1, 1])


def test_interior_margin_signs():
    sq = ConvexPolygon.from_points([[1, 1], [-1, 1], [-1, -1], [1, -1]])
    assert np.isclose(sq.interior_margin(), 1.0)
    assert sq.translate([3, 0]).interior_margin() < 0
    assert np.isclose(ConvexPolygon([[3.0, 4.0]]).interior_margin(), -5.0)


def test_support_matches_definition(rng):
    P = ConvexPolygon.from_points(rng.normal(size=(30, 2)))
    th, U = unit_directions(64, offset=0.1)
    assert np.allclose(P.support(th), np.max(U @ P.vertices.T, axis=1))


def test_hausdorff_square_vs_diamond():
    sq = ConvexPolygon.from_points([[1, 1], [-1, 1], [-1, -1], [1, -1]])
    di = ConvexPolygon.from_points([[1, 0], [0, 1], [-1, 0], [0, -1]])
    # farthest square corner (1, 1) is sqrt(2)/2 from the diamond's edge x + y = 1
    assert np.isclose(hausdorff(sq, di), np.sqrt(2) / 2, atol=1e-6)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_hausdorff_of_translate(dx, dy):
    P = ConvexPolygon.from_points([[0, 0], [1, 0], [0, 1]])
    assert hausdorff(P, P.translate([dx, dy])) == pytest.approx(np.hypot(dx, dy), abs=1e-5)


def test_rejects_bad_vertices():
    with pytest.raises(ValueError):
        ConvexPolygon(np.array([[np.inf, 0.0]]))
    with pytest.raises(ValueError):
        ConvexPolygon.from_points(np.zeros((0, 2)))
