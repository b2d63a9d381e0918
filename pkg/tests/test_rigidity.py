import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rangeshape.errors import NotAnchored
from rangeshape.linalg import hermitian_parts
from rangeshape.rigidity import (
    INCONCLUSIVE,
    NOT_RIGIDLY_CONVEX,
    RIGIDLY_CONVEX,
    BivariatePoly,
    all_roots_real,
    kippenhahn_poly,
    power_sums,
    restrict_to_line,
    rigid_convexity,
    rz_test,
)

from helpers import random_matrix
from sturm import all_real_exact

DISK = BivariatePoly.from_terms([(0, 0, 1), (2, 0, -1), (0, 2, -1)])
TV_SCREEN = BivariatePoly.from_terms([(0, 0, 1), (4, 0, -1), (0, 4, -1)])


def _det_direct(pair, xi, eta):
    return np.linalg.det(np.eye(pair.d) - xi * pair.H - eta * pair.K).real


def test_jordan_block_polynomial():
    q = kippenhahn_poly(hermitian_parts(np.array([[0, 1], [0, 0]])))
    ref = BivariatePoly.from_terms([(0, 0, 1), (2, 0, -0.25), (0, 2, -0.25)])
    assert q.degree == 2
    assert np.allclose(q.coeffs, ref.coeffs, atol=1e-12)


@pytest.mark.parametrize("A, terms", [
    (np.diag([0.0, 1.0]), [(0, 0, 1), (1, 0, -1)]),
    (np.array([[2 + 3j]]), [(0, 0, 1), (1, 0, -2), (0, 1, -3)]),
    (np.zeros((3, 3)), [(0, 0, 1)]),
])
def test_small_polynomials(A, terms):
    q = kippenhahn_poly(hermitian_parts(A))
    ref = BivariatePoly.from_terms(terms)
    assert q.degree == ref.degree
    assert np.allclose(q.coeffs, ref.coeffs, atol=1e-12)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_fit_matches_direct_determinants(d, seed):
    rng = np.random.default_rng(seed)
    pair = hermitian_parts(random_matrix(rng, d))
    q = kippenhahn_poly(pair)
    assert q.degree == d
    r = 1 / pair.scale()
    xi, eta = rng.uniform(-r, r, size=(2, 20))
    direct = np.array([_det_direct(pair, x, y) for x, y in zip(xi, eta)])
    assert np.max(np.abs(q(xi, eta) - direct)) <= 1e-8 * max(1.0, np.max(np.abs(direct)))


def test_polynomial_algebra():
    a = BivariatePoly.affine(1, 2, 3)
    b = BivariatePoly.affine(1, -1, 0)
    p = a * b
    x, y = 0.3, -0.7
    assert p(x, y) == pytest.approx(a(x, y) * b(x, y))
    assert (a + b)(x, y) == pytest.approx(a(x, y) + b(x, y))
    assert p.degree == 2 and a.degree == 1
    assert BivariatePoly.from_json(p.to_json()).coeffs.tolist() == p.coeffs.tolist()
    with pytest.raises(ValueError):
        BivariatePoly.from_json({"degree": 1, "coeffs": [[2, 0, 1.0]]})


@given(st.floats(-np.pi, np.pi))
def test_rotation_of_disk_is_disk(alpha):
    assert np.allclose(DISK.rotated(alpha).coeffs, DISK.coeffs, atol=1e-12)


def test_restrict_to_line():
    assert np.allclose(restrict_to_line(TV_SCREEN, 0.0), [1, 0, 0, 0, -1])
    c = np.cos(np.pi / 4) ** 4
    assert np.allclose(restrict_to_line(TV_SCREEN, np.pi / 4), [1, 0, 0, 0, -2 * c])


def test_power_sums_against_roots(rng):
    r = rng.normal(size=5)
    c = np.poly(r)[1:]
    s = power_sums(c, 9)
    assert np.allclose(s, [np.sum(r ** k) for k in range(9)])


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=7))
def test_hermite_matches_exact_sturm(coeffs):
    assume(any(coeffs))
    ok, margin = all_roots_real(np.array(coeffs, dtype=float))
    # the inconclusive band: tiny margins belong to (near-)repeated roots
    if abs(margin) < 1e-7:
        return
    assert ok == all_real_exact(coeffs)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.integers(-5, 5).filter(bool))
def test_products_of_real_linear_factors_pass(roots, lead):
    p = lead * np.polynomial.polynomial.polyfromroots(roots)
    assert all_roots_real(p)[0]


def test_degenerate_inputs():
    assert all_roots_real([5.0]) == (True, 1.0)
    assert all_roots_real([1.0, 2.0]) == (True, 1.0)
    assert all_roots_real([0, 0, 0, 1.0]) == (True, 1.0)
    assert not all_roots_real([1.0, 0, 1.0])[0]


def test_tv_screen_fails_everywhere():
    rep = rz_test(TV_SCREEN, 180)
    assert rep.verdict == "fail" and rep.failure_fraction == 1.0
    assert rep.worst_margin < -0.1
    for phi, root, _ in rep.failures[:10]:
        line = restrict_to_line(TV_SCREEN, phi)
        assert abs(root.imag) > 0.5
        assert abs(np.polynomial.polynomial.polyval(root, line)) < 1e-8
    assert rigid_convexity(TV_SCREEN) == NOT_RIGIDLY_CONVEX


def test_disk_passes():
    rep = rz_test(DISK, 64)
    assert rep.verdict == "pass" and not rep.failures
    assert rigid_convexity(DISK) == RIGIDLY_CONVEX


def test_anchoring():
    with pytest.raises(NotAnchored):
        rz_test(DISK.scaled(-1))
    assert rigid_convexity(DISK.scaled(-1)) == NOT_RIGIDLY_CONVEX
    with pytest.raises(ValueError):
        rz_test(DISK, 4)


def test_inconclusive_band():
    # 1 + 2t + (1 + eps) t^2 has roots with tiny imaginary part
    eps = 1e-12
    q = BivariatePoly.from_terms([(0, 0, 1), (1, 0, 2), (2, 0, 1 + eps), (0, 2, 1 + eps),
                                  (0, 1, 2), (1, 1, 2)])
    rep = rz_test(q, 16)
    assert rigid_convexity(q) in (RIGIDLY_CONVEX, INCONCLUSIVE)
    assert rep.worst_margin > -1e-6


def test_random_matrices_are_rz(rng):
    for d in range(1, 7):
        q = kippenhahn_poly(hermitian_parts(random_matrix(rng, d)))
        assert rz_test(q, 90).worst_margin >= -1e-8
