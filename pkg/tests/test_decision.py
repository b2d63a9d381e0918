import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rangeshape.decision import (
    DEGREE_EXCEEDS_D,
    NO,
    RZ_PASS,
    YES,
    SymmetrizeOptions,
    decide_matrix,
    decide_polar_poly,
    decide_polygon,
    roundtrip_check,
    symmetrize,
)
from rangeshape.errors import NotAnchored
from rangeshape.geometry import ConvexPolygon, hausdorff
from rangeshape.linalg import hermitian_parts
from rangeshape.numrange import numerical_range
from rangeshape.rigidity import NOT_RIGIDLY_CONVEX, BivariatePoly, kippenhahn_poly

from helpers import random_centered, random_matrix

J = np.array([[0, 1], [0, 0]], dtype=complex)
DISK = BivariatePoly.from_terms([(0, 0, 1), (2, 0, -1), (0, 2, -1)])
TV_SCREEN = BivariatePoly.from_terms([(0, 0, 1), (4, 0, -1), (0, 4, -1)])
SQUARE = ConvexPolygon.from_points([[1, 1], [-1, 1], [-1, -1], [1, -1]])


def test_disk_decision():
    v = decide_polar_poly(DISK, 2)
    assert (v.verdict, v.reason) == (YES, RZ_PASS)
    # the scaled Jordan block 2J has this polar
    assert roundtrip_check(hermitian_parts(2 * J), DISK) < 1e-10
    v1 = decide_polar_poly(DISK, 1)
    assert (v1.verdict, v1.reason) == (NO, DEGREE_EXCEEDS_D)
    assert any("lower-degree" in c for c in v1.caveats)


@pytest.mark.parametrize("d", [1, 2, 4, 9])
def test_tv_screen_rejected(d):
    v = decide_polar_poly(TV_SCREEN, d)
    assert (v.verdict, v.reason) == (NO, NOT_RIGIDLY_CONVEX)


def test_unanchored_propagates():
    with pytest.raises(NotAnchored):
        decide_polar_poly(DISK.scaled(-1), 3)


def test_square_gate():
    v = decide_polygon(SQUARE, 4)
    assert v.verdict == YES
    W = numerical_range(v.witness.matrix, 720).polygon
    assert hausdorff(W, SQUARE) < 1e-6
    assert np.allclose(np.sort_complex(np.diag(v.witness.matrix)),
                       np.sort_complex(np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])))
    v3 = decide_polygon(SQUARE, 3)
    assert (v3.verdict, v3.reason) == (NO, DEGREE_EXCEEDS_D)


def test_point_and_segment():
    pt = decide_polygon(ConvexPolygon([[2.0, -1.0]]), 1)
    assert pt.verdict == YES and np.allclose(pt.witness.matrix, [[2 - 1j]])
    seg = ConvexPolygon.from_points([[0, 0], [1, 2]])
    assert decide_polygon(seg, 1).verdict == NO
    v = decide_polygon(seg, 3)
    assert v.verdict == YES
    assert hausdorff(numerical_range(v.witness.matrix, 64).polygon, seg) < 1e-12


@given(st.integers(0, 2**32 - 1), st.integers(3, 8))
@settings(max_examples=25)
def test_translation_coherence(seed, m):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0, 2 * np.pi, m))
    P = ConvexPolygon.from_points(np.column_stack([np.cos(t), np.sin(t)]))
    shift = rng.normal(scale=5, size=2)
    for d in (len(P) - 1, len(P)):
        if d >= 1:
            assert decide_polygon(P, d).verdict == decide_polygon(P.translate(shift), d).verdict


@given(st.integers(0, 2**32 - 1), st.integers(3, 6))
@settings(max_examples=15)
def test_normal_matrix_polygon_consistency(seed, d):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0, 2 * np.pi, d))
    if np.min(np.diff(np.append(t, t[0] + 2 * np.pi))) < 0.05:
        return
    ev = np.exp(1j * t)  # on a circle: every eigenvalue is extreme
    U = np.linalg.qr(random_matrix(rng, d))[0]
    P = numerical_range(U @ np.diag(ev) @ U.conj().T, 720).polygon
    assert len(P) == d
    assert decide_polygon(P, d).verdict == YES
    assert decide_polygon(P, d - 1).verdict == NO


def test_forward_soundness_and_monotonicity(rng):
    for d in range(1, 7):
        q = kippenhahn_poly(hermitian_parts(random_centered(rng, d)))
        assert decide_polar_poly(q, d, 90).verdict == YES
        assert decide_polar_poly(q, d + 1, 90).verdict == YES
        if d > 1:
            assert decide_polar_poly(q, d - 1, 90).reason == DEGREE_EXCEEDS_D


def test_decide_matrix_attaches_itself():
    A = np.array([[1, 2j], [0, -1]])
    v = decide_matrix(A)
    assert v.verdict == YES and np.allclose(v.witness.matrix, A)


def test_roundtrip_negative_control():
    assert roundtrip_check(hermitian_parts(np.zeros((2, 2))), BivariatePoly.constant()) == 0
    assert roundtrip_check(hermitian_parts(np.diag([1.0, 2.0])), DISK) > 0.1


def test_symmetrize_fixed_points():
    A = np.array([[1, 2 + 1j], [2 + 1j, 0]])
    r = symmetrize(A)
    assert r.B is not A and np.array_equal(r.B, A)
    assert r.achieved_distance == 0 and r.restarts_used == 0 and r.evaluations == 0
    D = np.diag([0.0, 1.0])
    assert np.array_equal(symmetrize(D).B, D)


def test_explicit_symmetric_jordan_partner():
    B = np.array([[0.5, 0.5j], [0.5j, -0.5]])
    assert np.array_equal(B, B.T)
    assert np.allclose(B @ B, 0)
    assert np.allclose(numerical_range(B, 720).h, 0.5, atol=1e-12)


def test_symmetrize_degenerate_shortcut(rng):
    R = random_matrix(rng, 3)
    A = (1 - 2j) * (R + R.conj().T) + 3 * np.eye(3)
    r = symmetrize(A)
    assert r.converged and r.evaluations == 0 and np.array_equal(r.B, r.B.T)


def test_symmetrize_jordan(rng):
    r = symmetrize(J, SymmetrizeOptions(seed=3))
    assert r.converged and np.array_equal(r.B, r.B.T)
    assert r.achieved_distance <= 1e-3


def test_symmetrize_is_deterministic(rng):
    A = random_matrix(rng, 2)
    r1 = symmetrize(A, SymmetrizeOptions(seed=5))
    r2 = symmetrize(A, SymmetrizeOptions(seed=5))
    assert np.array_equal(r1.B, r2.B)


def test_symmetrize_reports_failure_honestly(rng):
    A = random_matrix(rng, 3)
    r = symmetrize(A, SymmetrizeOptions(max_restarts=1, max_evals=20))
    assert not r.converged
    assert r.achieved_distance > 1e-3 * numerical_range(A).polygon.diameter()
    assert np.array_equal(r.B, r.B.T)


def test_symmetrize_parallel_matches_serial(rng):
    A = random_matrix(rng, 2)
    r1 = symmetrize(A, SymmetrizeOptions(max_restarts=2, workers=1))
    r2 = symmetrize(A, SymmetrizeOptions(max_restarts=2, workers=2))
    assert np.array_equal(r1.B, r2.B)
