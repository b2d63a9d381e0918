"""Deciding whether a planar convex set is a numerical range, and symmetric realizations.

A set W is the numerical range of a d x d matrix exactly when its polar is
rigidly convex of degree at most d. Given a defining polynomial of the
polar, the decision is an RZ test plus a degree gate. Polygons are decided
after translating an interior point to the origin; their polar is cut out by
a product of affine forms, one per vertex.

Every matrix A also has a complex symmetric B of the same size with
W(B) = W(A). :func:`symmetrize` searches for one numerically over pairs of
real symmetric matrices (H', K'), for which B = H' + iK' is symmetric.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .geometry import ConvexPolygon, hausdorff, unit_directions
from .linalg import HermitianPair, as_complex_matrix, hermitian_parts, jacobi_eigh
from .numrange import center_matrix, degeneracy_report, numerical_range
from .polar import polygon_polar
from .rigidity import (
    INCONCLUSIVE,
    NOT_RIGIDLY_CONVEX,
    TOL_PSD,
    BivariatePoly,
    RZReport,
    classify,
    kippenhahn_poly,
    rz_test,
)

YES, NO = "yes", "no"
DEGREE_EXCEEDS_D = "degree_exceeds_d"
RZ_PASS = "rz_pass"
RZ_INCONCLUSIVE = "rz_inconclusive"

MINIMALITY_CAVEAT = (
    "degree is that of the supplied polynomial; a lower-degree defining "
    "polynomial would lower the bound"
)
NO_WITNESS_CAVEAT = "no realizing matrix is constructed for a general RZ polynomial"


@dataclass
class ShapeVerdict:
    verdict: str
    dimension_bound: int
    reason: str
    degree: int
    witness: Optional[HermitianPair] = None
    caveats: list = field(default_factory=list)
    rz: Optional[RZReport] = None


def decide_polar_poly(q: BivariatePoly, d: int, n_directions: int = 180,
                      tol_psd: float = TOL_PSD) -> ShapeVerdict:
    """Is the set whose polar is cut out by ``q`` a numerical range of a d x d matrix?

    Raises :class:`NotAnchored` when ``q(0, 0) <= 0``.
    """
    if d < 1:
        raise ValueError("dimension bound must be at least 1")
    report = rz_test(q, n_directions, tol_psd)
    rigidity = classify(q, report, tol_psd)
    degree = q.degree
    caveats = list(report.caveats)
    if degree > d:
        caveats.append(MINIMALITY_CAVEAT)

    if rigidity == NOT_RIGIDLY_CONVEX:
        return ShapeVerdict(NO, d, NOT_RIGIDLY_CONVEX, degree, caveats=caveats, rz=report)
    if degree > d:
        return ShapeVerdict(NO, d, DEGREE_EXCEEDS_D, degree, caveats=caveats, rz=report)
    if rigidity == INCONCLUSIVE:
        return ShapeVerdict(INCONCLUSIVE, d, RZ_INCONCLUSIVE, degree, caveats=caveats, rz=report)
    return ShapeVerdict(YES, d, RZ_PASS, degree, caveats=caveats + [NO_WITNESS_CAVEAT], rz=report)


def _diagonal_witness(values, d: int) -> HermitianPair:
    # normal matrix: its numerical range is the convex hull of the diagonal
    vals = list(values) + [values[-1]] * (d - len(values))
    return hermitian_parts(np.diag(np.asarray(vals, dtype=complex)))


def decide_polygon(W: ConvexPolygon, d: int, n_directions: int = 180) -> ShapeVerdict:
    """Decide a convex polygon; vertex count plays the role of the degree.

    Points need d >= 1 and segments d >= 2. For m >= 3 vertices the polygon
    is translated by its centroid, and the polar of the translate is cut out
    by the m affine forms of its edges.
    """
    if d < 1:
        raise ValueError("dimension bound must be at least 1")
    m = len(W)
    z = W.complex_vertices
    if m <= 2:
        note = "degenerate range: " + ("a point" if m == 1 else "a line segment")
        if m > d:
            return ShapeVerdict(NO, d, DEGREE_EXCEEDS_D, m, caveats=[note])
        return ShapeVerdict(YES, d, RZ_PASS, m, witness=_diagonal_witness(z, d), caveats=[note])
    if m > d:
        return ShapeVerdict(NO, d, DEGREE_EXCEEDS_D, m,
                            caveats=[f"polar of a polygon with {m} vertices is cut out by {m} lines"])

    W0 = W.translate(-W.centroid())
    polar = polygon_polar(W0)
    q = BivariatePoly.constant()
    V = polar.vertices
    for v, w in zip(V, np.roll(V, -1, axis=0)):
        # edge line <a, x> = 1 through consecutive polar vertices
        det = v[0] * w[1] - v[1] * w[0]
        a = (w[1] - v[1]) / det
        b = (v[0] - w[0]) / det
        q = q * BivariatePoly.affine(1.0, -a, -b)
    verdict = decide_polar_poly(q, d, n_directions)
    if verdict.verdict == YES:
        verdict.witness = _diagonal_witness(z, d)
        verdict.caveats = [c for c in verdict.caveats if c != NO_WITNESS_CAVEAT]
    return verdict


def decide_matrix(A, d: Optional[int] = None, n_directions: int = 180) -> ShapeVerdict:
    """Run the decision on the determinant polynomial of ``A`` centered at ``tr(A)/d``."""
    M = as_complex_matrix(A)
    d = M.shape[0] if d is None else d
    _, A0 = center_matrix(M)
    verdict = decide_polar_poly(kippenhahn_poly(hermitian_parts(A0)), d, n_directions)
    if verdict.verdict == YES and M.shape[0] <= d:
        verdict.witness = hermitian_parts(M)
        verdict.caveats = [c for c in verdict.caveats if c != NO_WITNESS_CAVEAT]
    return verdict


def roundtrip_check(pair: HermitianPair, q: BivariatePoly) -> float:
    """Largest coefficient deviation between ``det(I - xi H - eta K)`` and ``q``,
    relative to ``max|q|``, after normalizing both constant terms to 1."""
    p = kippenhahn_poly(pair).coeffs
    qc = q.coeffs / q.coeffs[0, 0]
    n = max(len(p), len(qc))
    p = np.pad(p, ((0, n - len(p)),) * 2)
    qc = np.pad(qc, ((0, n - len(qc)),) * 2)
    return float(np.max(np.abs(p - qc)) / np.max(np.abs(qc)))


@dataclass(frozen=True)
class SymmetrizeOptions:
    n_angles: int = 180
    tol: float = 1e-3
    max_restarts: int = 8
    seed: int = 0
    workers: int = 1
    max_evals: int = 40_000
    check_angles: int = 720


@dataclass
class RealizationResult:
    B: np.ndarray
    achieved_distance: float
    restarts_used: int
    converged: bool
    relative_distance: float = 0.0
    evaluations: int = 0


def _is_symmetric(M: np.ndarray) -> bool:
    return bool(np.all(M == M.T))


def _sym_from_vector(x: np.ndarray, d: int):
    iu = np.triu_indices(d)
    m = len(iu[0])
    H = np.zeros((d, d))
    K = np.zeros((d, d))
    H[iu] = x[:m]
    K[iu] = x[m:]
    H = H + np.triu(H, 1).T
    K = K + np.triu(K, 1).T
    return H, K


def _finish(A, B, restarts, evals, opts: SymmetrizeOptions) -> RealizationResult:
    WA = numerical_range(A, opts.check_angles).polygon
    WB = numerical_range(B, opts.check_angles).polygon
    dist = hausdorff(WA, WB)
    diam = WA.diameter()
    rel = dist / diam if diam > 0 else (0.0 if dist == 0 else np.inf)
    converged = dist <= opts.tol * diam if diam > 0 else dist <= 1e-12
    return RealizationResult(B, dist, restarts, bool(converged), rel, evals)


def symmetrize(A, opts: SymmetrizeOptions = SymmetrizeOptions()) -> RealizationResult:
    """Search for a complex symmetric B with W(B) = W(A).

    B = H' + iK' with H', K' real symmetric (d(d+1)/2 free entries each), so
    B is symmetric by construction. After centering at tr(A)/d and scaling
    to unit diameter, Nelder-Mead minimizes the mean squared gap between the
    support functions of W(A) and W(B) on ``n_angles`` directions. Restart 0
    starts from the real parts of A's hermitian parts; later restarts add
    seeded Gaussian perturbations. The first restart (by index) whose
    support gap is below ``tol`` wins; if none does, the best by
    (gap, index). Never raises on non-convergence.
    """
    M = as_complex_matrix(A)
    d = M.shape[0]
    if _is_symmetric(M):
        return _finish(M, M.copy(), 0, 0, opts)
    rep = degeneracy_report(M)
    if rep.degenerate:
        # A = alpha R + beta I is normal; a diagonal matrix of its eigenvalues is symmetric
        lam = np.linalg.eigvalsh(rep.R) if rep.R is not None else np.zeros(d)
        return _finish(M, np.diag(rep.alpha * lam + rep.beta), 0, 0, opts)

    shift, A0 = center_matrix(M)
    thetas, _ = unit_directions(opts.n_angles)
    c, s = np.cos(thetas)[:, None, None], np.sin(thetas)[:, None, None]
    prof = numerical_range(A0, thetas=thetas)
    scale = prof.polygon.diameter()
    target = prof.h / scale
    pair = hermitian_parts(A0 / scale)
    iu = np.triu_indices(d)
    x0 = np.concatenate([pair.H.real[iu], pair.K.real[iu]])
    goal = 0.1 * opts.tol

    def gap(x):
        H, K = _sym_from_vector(x, d)
        return target - jacobi_eigh(c * H + s * K)[0][:, -1]

    def objective(x):
        return float(np.mean(gap(x) ** 2))

    def run(r: int):
        rng = np.random.default_rng([opts.seed, r])
        start = x0 if r == 0 else x0 + rng.normal(scale=0.5, size=x0.shape)

        def stop(intermediate_result):
            if intermediate_result.fun <= goal ** 2 / opts.n_angles:
                raise StopIteration

        res = minimize(objective, start, method="Nelder-Mead", callback=stop,
                       options={"maxfev": opts.max_evals, "xatol": 1e-12,
                                "fatol": 1e-18, "adaptive": True})
        return float(np.max(np.abs(gap(res.x)))), r, res.x, int(res.nfev)

    results = []
    workers = max(1, opts.workers)
    for wave in range(0, opts.max_restarts, workers):
        idx = range(wave, min(wave + workers, opts.max_restarts))
        if workers == 1:
            results += [run(r) for r in idx]
        else:
            with ThreadPoolExecutor(workers) as pool:
                results += list(pool.map(run, idx))
        if any(g <= goal for g, *_ in results):
            break

    good = [res for res in results if res[0] <= goal]
    best = good[0] if good else min(results, key=lambda res: (res[0], res[1]))
    H, K = _sym_from_vector(best[2], d)
    B = scale * (H + 1j * K) + shift * np.eye(d)
    evals = sum(res[3] for res in results)
    return _finish(M, B, best[1] + 1, evals, opts)
