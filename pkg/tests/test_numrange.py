import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from rangeshape.geometry import ConvexPolygon, hausdorff
from rangeshape.numrange import (
    center_matrix,
    degeneracy_report,
    numerical_range,
    origin_margin,
    support_point,
)
from rangeshape.linalg import hermitian_parts

from helpers import random_matrix

J = np.array([[0, 1], [0, 0]], dtype=complex)


def test_jordan_block_is_disk():
    prof = numerical_range(J, 720)
    assert np.allclose(prof.h, 0.5, atol=1e-12)
    assert np.allclose(np.hypot(*prof.points.T), 0.5, atol=1e-12)


def test_normal_matrix_range_is_hull_of_eigenvalues(rng):
    ev = rng.normal(size=5) + 1j * rng.normal(size=5)
    U = np.linalg.qr(random_matrix(rng, 5))[0]
    A = U @ np.diag(ev) @ U.conj().T
    P = numerical_range(A, 720).polygon
    pts = np.column_stack([ev.real, ev.imag])
    ref = ConvexPolygon.from_points(pts[ConvexHull(pts).vertices])
    assert hausdorff(P, ref) < 1e-9
    assert len(P) == len(ref)


def test_sampled_rayleigh_quotients_inside(rng):
    # oracle: W(A) is the set of <Ax, x>; random unit vectors must land in the hull
    A = random_matrix(rng, 4)
    prof = numerical_range(A, 2048)
    X = rng.normal(size=(4, 5000)) + 1j * rng.normal(size=(4, 5000))
    X /= np.linalg.norm(X, axis=0)
    q = np.einsum("ij,ik,kj->j", X.conj(), A, X)
    th = prof.thetas
    proj = np.cos(th)[:, None] * q.real + np.sin(th)[:, None] * q.imag
    assert np.all(proj <= prof.h[:, None] + 1e-10)
    # and the support values are attained by some Rayleigh quotient
    assert np.max(np.abs(prof.h - np.einsum("ij,ij->i", prof.points,
                                            np.column_stack([np.cos(th), np.sin(th)])))) < 1e-10


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi, exclude_max=True))
def test_support_point_is_eigen_attained(d, seed, theta):
    A = random_matrix(np.random.default_rng(seed), d)
    pair = hermitian_parts(A)
    h, p = support_point(pair, theta)
    M = np.cos(theta) * pair.H + np.sin(theta) * pair.K
    assert h == pytest.approx(np.linalg.eigvalsh(M)[-1], abs=1e-10)
    assert p @ [np.cos(theta), np.sin(theta)] == pytest.approx(h, abs=1e-10)


def test_unitary_invariance(rng):
    A = random_matrix(rng, 4)
    U = np.linalg.qr(random_matrix(rng, 4))[0]
    h1 = numerical_range(A, 360).h
    h2 = numerical_range(U.conj().T @ A @ U, 360).h
    assert np.allclose(h1, h2, atol=1e-10)


def test_affine_covariance(rng):
    A = random_matrix(rng, 3)
    a, b = 2.0 * np.exp(0.7j), 1 - 2j
    P = numerical_range(A, 1440).polygon
    Q = numerical_range(a * A + b * np.eye(3), 1440).polygon
    z = a * P.complex_vertices + b
    mapped = ConvexPolygon.from_points(np.column_stack([z.real, z.imag]))
    assert hausdorff(mapped, Q) < 1e-4 * Q.diameter()


def test_centering_puts_origin_inside(rng):
    for d in range(2, 7):
        lam, A0 = center_matrix(random_matrix(rng, d))
        assert origin_margin(A0) > 0


def test_angle_validation():
    with pytest.raises(ValueError):
        numerical_range(J, 2)
    with pytest.raises(ValueError):
        numerical_range(J, thetas=[0.0, 1.0, 0.5])


def test_segment_and_point_ranges():
    seg = numerical_range(np.diag([0, 1]), 64).polygon
    assert len(seg) == 2 and np.isclose(seg.diameter(), 1)
    pt = numerical_range(np.eye(3) * (2 - 1j), 16).polygon
    assert len(pt) == 1 and np.allclose(pt.vertices, [[2, -1]])


def test_degeneracy_examples():
    r = degeneracy_report(np.diag([0, 1]))
    assert r.degenerate
    assert np.allclose(sorted(map(tuple, r.segment_endpoints)), [(0, 0), (1, 0)], atol=1e-12)
    assert not degeneracy_report(J).degenerate
    s = degeneracy_report(3j * np.eye(2))
    assert s.degenerate and s.alpha == 0 and np.allclose(s.segment_endpoints, [[0, 3], [0, 3]])


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_degeneracy_reconstruction(seed, d):
    rng = np.random.default_rng(seed)
    R = random_matrix(rng, d)
    R = R + R.conj().T
    alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    A = alpha * R + beta * np.eye(d)
    rep = degeneracy_report(A)
    assert rep.degenerate
    assert rep.residual <= 1e-10 * max(1.0, np.linalg.norm(A))
    assert np.allclose(rep.R, rep.R.conj().T)
    assert np.isclose(np.linalg.norm(rep.R), 1.0)
