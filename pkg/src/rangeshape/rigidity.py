"""Bivariate polynomials, the determinant polynomial of a pencil, and RZ tests.

A polynomial ``q`` with ``q(0) > 0`` is real-zero (RZ) when for every
direction ``z`` all roots of ``t -> q(t z)`` are real. The determinant
``det(I - xi H - eta K)`` of a hermitian pencil is always RZ, because its
restriction to a line has roots ``1/lambda`` for the eigenvalues ``lambda``
of ``cos(phi) H + sin(phi) K``.

Real-rootedness is certified with Hermite's criterion: the Hankel matrix of
root power sums ``[s_{i+j}]`` is positive semidefinite iff all roots are real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditionedFit, NotAnchored, ScaleError
from .linalg import HermitianPair, complex_determinant, jacobi_eigh

TOL_PSD = 1e-8
DEGREE_RTOL = 1e-9
FIT_RTOL = 1e-8
# scaled-basis coefficients below this fraction of the largest are fit noise
FIT_NOISE = 1e-11

RIGIDLY_CONVEX = "rigidly_convex"
NOT_RIGIDLY_CONVEX = "not_rigidly_convex"
INCONCLUSIVE = "inconclusive"

SAMPLING_CAVEAT = (
    "RZ property checked on a finite set of directions; sampling cannot certify all directions"
)


@dataclass(frozen=True)
class BivariatePoly:
    """Real polynomial ``sum c[j, k] xi**j eta**k`` with ``j + k <= degree``.

    ``coeffs`` is square, ``(D + 1, D + 1)``; entries with ``j + k > D`` are zero.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        C = np.atleast_2d(np.asarray(self.coeffs, dtype=float))
        n = max(C.shape)
        C = np.pad(C, ((0, n - C.shape[0]), (0, n - C.shape[1])))
        j, k = np.indices(C.shape)
        C = np.where(j + k < n, C, 0.0)
        if not np.all(np.isfinite(C)):
            raise ValueError("polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", C)

    @classmethod
    def from_terms(cls, terms) -> "BivariatePoly":
        terms = [(int(j), int(k), float(c)) for j, k, c in terms]
        if any(j < 0 or k < 0 for j, k, _ in terms):
            raise ValueError("monomial exponents must be non-negative")
        D = max((j + k for j, k, _ in terms), default=0)
        C = np.zeros((D + 1, D + 1))
        for j, k, c in terms:
            C[j, k] += c
        return cls(C)

    @classmethod
    def constant(cls, c: float = 1.0) -> "BivariatePoly":
        return cls(np.array([[c]]))

    @classmethod
    def affine(cls, c0: float, a: float, b: float) -> "BivariatePoly":
        """``c0 + a xi + b eta``."""
        return cls(np.array([[c0, b], [a, 0.0]]))

    @property
    def degree(self) -> int:
        """Largest total degree carrying a coefficient above ``1e-9 * max|c|``."""
        C = self.coeffs
        big = np.abs(C) > DEGREE_RTOL * np.max(np.abs(C))
        if not big.any():
            return 0
        j, k = np.nonzero(big)
        return int(np.max(j + k))

    def trimmed(self) -> "BivariatePoly":
        D = self.degree
        return BivariatePoly(self.coeffs[:D + 1, :D + 1])

    def terms(self) -> list[tuple[int, int, float]]:
        j, k = np.nonzero(self.coeffs)
        return [(int(a), int(b), float(self.coeffs[a, b])) for a, b in zip(j, k)]

    def __call__(self, xi, eta):
        return np.polynomial.polynomial.polyval2d(xi, eta, self.coeffs)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        A, B = self.coeffs, other.coeffs
        out = np.zeros((A.shape[0] + B.shape[0] - 1,) * 2)
        for j, k in zip(*np.nonzero(A)):
            out[j:j + B.shape[0], k:k + B.shape[1]] += A[j, k] * B
        return BivariatePoly(out)

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.pad(self.coeffs, ((0, n - len(self.coeffs)),) * 2)
        b = np.pad(other.coeffs, ((0, n - len(other.coeffs)),) * 2)
        return BivariatePoly(a + b)

    def scaled(self, c: float) -> "BivariatePoly":
        return BivariatePoly(c * self.coeffs)

    def compose_linear(self, M) -> "BivariatePoly":
        """``(xi, eta) -> q(M @ (xi, eta))`` for a 2x2 matrix ``M``."""
        M = np.asarray(M, dtype=float)
        x_new = BivariatePoly.affine(0.0, M[0, 0], M[0, 1])
        y_new = BivariatePoly.affine(0.0, M[1, 0], M[1, 1])
        D = len(self.coeffs) - 1
        xp = [BivariatePoly.constant()]
        yp = [BivariatePoly.constant()]
        for _ in range(D):
            xp.append(xp[-1] * x_new)
            yp.append(yp[-1] * y_new)
        out = BivariatePoly.constant(0.0)
        for j, k, c in self.terms():
            out = out + (xp[j] * yp[k]).scaled(c)
        return out

    def rotated(self, alpha: float) -> "BivariatePoly":
        c, s = math.cos(alpha), math.sin(alpha)
        return self.compose_linear([[c, -s], [s, c]])

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [[j, k, c] for j, k, c in self.terms()]}

    @classmethod
    def from_json(cls, obj: dict) -> "BivariatePoly":
        q = cls.from_terms(obj["coeffs"])
        if "degree" in obj and q.coeffs.any() and q.degree > int(obj["degree"]):
            raise ValueError(f"coefficients exceed declared degree {obj['degree']}")
        return q


def _fit_radii(d: int) -> np.ndarray:
    # a polynomial of degree d can vanish on c concentric circles only if
    # 2c <= d, so at least d//2 + 1 circles are needed for a unique fit
    n_circles = max(3, d // 2 + 1)
    return np.linspace(0.5, 1.5, n_circles)


def kippenhahn_poly(pair: HermitianPair) -> BivariatePoly:
    """Fit ``p(xi, eta) = det(I - xi H - eta K)`` in the monomial basis of degree ``d``.

    The determinant is sampled on concentric circles of radius ``f * rho``,
    ``rho = 1 / (2 max(|H|, |K|))``, where ``p`` is of order one, and the
    coefficients come from a least-squares Vandermonde solve in the scaled
    variables ``xi / rho``, ``eta / rho``.
    """
    if not isinstance(pair, HermitianPair):
        pair = HermitianPair.from_matrix(pair)
    d = pair.d
    rho = 1.0 / (2.0 * pair.scale() + 1e-30)
    radii = _fit_radii(d)
    n_monomials = (d + 1) * (d + 2) // 2
    per_circle = max(2 * d + 2, -(-2 * n_monomials // len(radii)))
    golden = math.pi * (3 - math.sqrt(5))
    u, v = [], []
    for i, r in enumerate(radii):
        phi = 2 * np.pi * np.arange(per_circle) / per_circle + i * golden
        u.append(r * np.cos(phi))
        v.append(r * np.sin(phi))
    u = np.concatenate(u)
    v = np.concatenate(v)

    eye = np.eye(d)
    M = eye - (rho * u)[:, None, None] * pair.H - (rho * v)[:, None, None] * pair.K
    values = complex_determinant(M).real

    exps = [(j, m - j) for m in range(d + 1) for j in range(m, -1, -1)]
    V = np.column_stack([u ** j * v ** k for j, k in exps])
    c_scaled, *_ = np.linalg.lstsq(V, values, rcond=None)
    resid = np.max(np.abs(V @ c_scaled - values)) / np.max(np.abs(values))
    if not resid <= FIT_RTOL:
        raise IllConditionedFit(
            f"determinant fit residual {resid:.2e} exceeds {FIT_RTOL:.0e}; "
            "rescale the matrix or check the dimension bound"
        )
    c_scaled[np.abs(c_scaled) <= FIT_NOISE * np.max(np.abs(c_scaled))] = 0.0
    C = np.zeros((d + 1, d + 1))
    for (j, k), c in zip(exps, c_scaled):
        C[j, k] = c / rho ** (j + k)
    C /= C[0, 0]
    return BivariatePoly(C).trimmed()


def restrict_to_line(q: BivariatePoly, phi: float) -> np.ndarray:
    """Ascending coefficients of ``t -> q(t cos phi, t sin phi)``.

    Trailing coefficients below ``1e-9 * max|a|`` are dropped (roots at infinity).

    >>> restrict_to_line(BivariatePoly.from_terms([(0, 0, 1), (1, 0, -1)]), 0.0)
    array([ 1., -1.])
    """
    C = q.coeffs
    D = len(C) - 1
    c, s = math.cos(phi), math.sin(phi)
    a = np.zeros(D + 1)
    for j in range(D + 1):
        for k in range(D + 1 - j):
            if C[j, k]:
                a[j + k] += C[j, k] * c ** j * s ** k
    return _drop_trailing(a)


def _drop_trailing(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    big = np.abs(a) > DEGREE_RTOL * np.max(np.abs(a), initial=0.0)
    if not big.any():
        return a[:1] * 0.0
    return a[: np.flatnonzero(big)[-1] + 1].copy()


def power_sums(monic_desc: np.ndarray, count: int) -> np.ndarray:
    """Newton's identities: ``s_0 .. s_{count-1}`` of the roots of a monic polynomial.

    ``monic_desc`` holds ``c_1 .. c_n`` of ``t**n + c_1 t**(n-1) + ... + c_n``.
    """
    c = np.asarray(monic_desc, dtype=float)
    n = len(c)
    s = np.zeros(count)
    s[0] = n
    for k in range(1, count):
        acc = k * c[k - 1] if k <= n else 0.0
        for i in range(1, min(k, n + 1)):
            acc += c[i - 1] * s[k - i]
        s[k] = -acc
    return s


def all_roots_real(coeffs, tol_psd: float = TOL_PSD) -> tuple[bool, float]:
    """Hermite test for real-rootedness of ``a_0 + a_1 t + ... + a_n t**n``.

    Returns ``(real_rooted, margin)`` where ``margin`` is the smallest over
    largest eigenvalue of the (diagonally equilibrated) Hankel matrix of
    root power sums. Roots are first rescaled into the unit disk, and the
    diagonal equilibration is a congruence, so the inertia is unchanged.
    """
    a = _drop_trailing(coeffs)
    n = len(a) - 1
    if n <= 1:
        return True, 1.0
    b = a[:-1] / a[-1]  # monic, ascending b_0 .. b_{n-1}
    bound = 2 * max(abs(b[k]) ** (1.0 / (n - k)) for k in range(n))
    if bound == 0.0:
        return True, 1.0  # t**n
    desc = np.array([b[n - i] / bound ** i for i in range(1, n + 1)])
    with np.errstate(over="raise", invalid="raise"):
        try:
            s = power_sums(desc, 2 * n - 1)
        except FloatingPointError:
            s = np.array([np.inf])
    if not np.all(np.isfinite(s)):
        raise ScaleError("power sums overflowed; rescale the variable")
    Hk = s[np.add.outer(np.arange(n), np.arange(n))]
    dg = np.sqrt(np.abs(np.diag(Hk)))
    dg = np.where(dg > 1e-150, dg, 1.0)
    Hk = Hk / np.outer(dg, dg)
    w = jacobi_eigh(Hk)[0]
    margin = float(w[0] / w[-1]) if w[-1] > 0 else -1.0
    return margin >= -tol_psd, margin


@dataclass
class RZReport:
    directions_tested: int
    worst_margin: float
    failures: list = field(default_factory=list)  # (phi, complex root witness, margin)
    verdict: str = "pass"
    phis: np.ndarray = field(default=None, repr=False)
    margins: np.ndarray = field(default=None, repr=False)
    caveats: list = field(default_factory=lambda: [SAMPLING_CAVEAT])

    @property
    def failure_fraction(self) -> float:
        return len(self.failures) / self.directions_tested


def rz_test(q: BivariatePoly, n_directions: int = 180, tol_psd: float = TOL_PSD) -> RZReport:
    """Check real-rootedness of ``q`` along ``n_directions`` lines through 0.

    Directions are equally spaced in ``[0, pi)``; ``z`` and ``-z`` span the
    same line. Each failing direction records a non-real root estimate.
    """
    if n_directions < 8:
        raise ValueError("n_directions must be at least 8")
    q0 = float(q.coeffs[0, 0])
    if not q0 > 0:
        raise NotAnchored(f"q(0, 0) = {q0} must be positive")
    phis = np.pi * np.arange(n_directions) / n_directions
    margins = np.empty(n_directions)
    failures = []
    for i, phi in enumerate(phis):
        a = restrict_to_line(q, phi)
        ok, margin = all_roots_real(a, tol_psd)
        margins[i] = margin
        if not ok:
            roots = np.roots(a[::-1])
            witness = complex(roots[np.argmax(np.abs(roots.imag))])
            failures.append((float(phi), witness, margin))
    return RZReport(
        directions_tested=n_directions,
        worst_margin=float(np.min(margins)),
        failures=failures,
        verdict="pass" if not failures else "fail",
        phis=phis,
        margins=margins,
    )


def classify(q: BivariatePoly, report: RZReport | None, tol_psd: float = TOL_PSD) -> str:
    if report is None:
        return NOT_RIGIDLY_CONVEX
    if report.verdict == "pass":
        return RIGIDLY_CONVEX
    if any(m < -10 * tol_psd for _, _, m in report.failures):
        return NOT_RIGIDLY_CONVEX
    return INCONCLUSIVE


def rigid_convexity(q: BivariatePoly, n_directions: int = 180, tol_psd: float = TOL_PSD) -> str:
    """Three-valued rigid-convexity verdict for the set cut out by ``q`` around 0.

    ``q(0, 0) <= 0`` means 0 is not inside ``{q > 0}``, so ``q`` does not define
    an algebraic interior around the origin: not rigidly convex.
    """
    if not np.any(q.coeffs):
        raise ValueError("q must be nonzero")
    if not q.coeffs[0, 0] > 0:
        return NOT_RIGIDLY_CONVEX
    return classify(q, rz_test(q, n_directions, tol_psd), tol_psd)
