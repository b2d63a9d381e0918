"""Dense complex matrix primitives.

Hermitian eigenproblems are solved through the real symmetric embedding

    M = X + iY  ->  [[X, -Y], [Y, X]]

whose spectrum is that of ``M`` with every multiplicity doubled. The real
problem is diagonalized by cyclic Jacobi rotations in a compiled kernel that
runs a whole batch of matrices (e.g. one per sampled angle) in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numba
import numpy as np
from numba import njit, prange

from .errors import ConvergenceFailure, InvalidMatrix, NotHermitian

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60
HERMITIAN_RTOL = 1e-12

# the TBB layer shipped on some systems is too old and only emits a warning
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


def set_workers(n: int) -> int:
    """Cap the threads used by batched eigensolves (0 = all available)."""
    avail = numba.config.NUMBA_NUM_THREADS
    n = avail if n <= 0 else min(n, avail)
    numba.set_num_threads(n)
    return n


def as_complex_matrix(A) -> np.ndarray:
    """Validate ``A`` as a finite square matrix and return a complex copy."""
    try:
        M = np.array(A, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"cannot interpret input as a complex matrix: {exc}") from None
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise InvalidMatrix(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidMatrix("matrix has non-finite entries")
    return M


@dataclass(frozen=True)
class HermitianPair:
    """Hermitian matrices ``H``, ``K`` with ``A = H + iK``."""

    H: np.ndarray
    K: np.ndarray

    @property
    def d(self) -> int:
        return self.H.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self.H + 1j * self.K

    @classmethod
    def from_matrix(cls, A) -> "HermitianPair":
        return hermitian_parts(A)

    def pencil(self, c, s) -> np.ndarray:
        """Stack of ``c[i] * H + s[i] * K`` for arrays of coefficients."""
        c = np.asarray(c, dtype=float)[..., None, None]
        s = np.asarray(s, dtype=float)[..., None, None]
        return c * self.H + s * self.K

    def scale(self) -> float:
        """Spectral-norm bound ``max(|H|_2, |K|_2)``."""
        return max(_spectral_norm(self.H), _spectral_norm(self.K))


class EigenResult(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def hermitian_parts(A) -> HermitianPair:
    M = as_complex_matrix(A)
    Mh = M.conj().T
    H = (M + Mh) / 2
    K = (M - Mh) / 2j
    return HermitianPair(H, K)


@njit(cache=True)
def _jacobi_inplace(a, v, tol, max_sweeps):
    """Cyclic-by-row Jacobi on one matrix; returns sweeps used or -1."""
    n = a.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j] * a[i, j]
    scale = np.sqrt(scale)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if np.sqrt(off) <= tol * scale:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


@njit(parallel=True, cache=True)
def _jacobi_batch(A, V, status, tol, max_sweeps):
    for b in prange(A.shape[0]):
        status[b] = _jacobi_inplace(A[b], V[b], tol, max_sweeps)


def jacobi_eigh(S, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigen-decompose a real symmetric matrix or a stack of them.

    Cyclic Jacobi rotations, each annihilating one off-diagonal pair, until
    the off-diagonal Frobenius norm is at most ``tol * |S|_F``. Items of a
    stack are independent and run in parallel.

    Returns ascending eigenvalues ``(..., n)`` and eigenvectors as columns
    ``(..., n, n)``.
    """
    S = np.asarray(S, dtype=float)
    shape = S.shape
    n = shape[-1]
    A = S.reshape(-1, n, n)
    A = np.ascontiguousarray((A + A.transpose(0, 2, 1)) / 2)
    V = np.broadcast_to(np.eye(n), A.shape).copy()
    status = np.empty(len(A), dtype=np.int64)
    _jacobi_batch(A, V, status, float(tol), int(max_sweeps))
    if np.any(status < 0):
        raise ConvergenceFailure(
            f"Jacobi did not converge in {max_sweeps} sweeps for {int(np.sum(status < 0))} matrices"
        )
    w = np.diagonal(A, axis1=1, axis2=2)
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    V = np.take_along_axis(V, order[:, None, :], axis=2)
    return w.reshape(shape[:-1]), V.reshape(shape)


def _check_hermitian(M: np.ndarray) -> np.ndarray:
    Mh = np.conj(np.swapaxes(M, -1, -2))
    mag = np.max(np.abs(M), axis=(-1, -2), keepdims=True) if M.size else 0.0
    dev = np.max(np.abs(M - Mh), axis=(-1, -2), keepdims=True) if M.size else 0.0
    if np.any(dev > HERMITIAN_RTOL * mag):
        raise NotHermitian(
            f"matrix is not hermitian (deviation {np.max(dev):.3e} vs scale {np.max(mag):.3e})"
        )
    return (M + Mh) / 2


def _embed(M: np.ndarray) -> np.ndarray:
    X, Y = M.real, M.imag
    top = np.concatenate([X, -Y], axis=-1)
    bottom = np.concatenate([Y, X], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _pair_values(w2: np.ndarray) -> np.ndarray:
    # embedded spectrum comes in adjacent duplicate pairs once sorted
    return (w2[..., 0::2] + w2[..., 1::2]) / 2


def hermitian_eigvals(M) -> np.ndarray:
    """Ascending eigenvalues of a hermitian matrix or a stack of them."""
    M = _check_hermitian(np.asarray(M, dtype=complex))
    if np.all(M.imag == 0):
        return jacobi_eigh(M.real)[0]
    w2, _ = jacobi_eigh(_embed(M))
    return _pair_values(w2)


def hermitian_top(M):
    """Largest eigenvalue and a unit eigenvector for a stack of hermitian matrices.

    When the top eigenvalue is multiple the returned vector is some unit
    vector of that eigenspace.
    """
    M = _check_hermitian(np.asarray(M, dtype=complex))
    d = M.shape[-1]
    if np.all(M.imag == 0):
        w, V = jacobi_eigh(M.real)
        return w[..., -1], V[..., :, -1].astype(complex)
    w2, V2 = jacobi_eigh(_embed(M))
    top = (w2[..., -1] + w2[..., -2]) / 2
    u = V2[..., :, -1]
    v = u[..., :d] + 1j * u[..., d:]
    v = v / np.linalg.norm(v, axis=-1, keepdims=True)
    return top, v


def hermitian_eigen(M) -> EigenResult:
    """Full eigen-decomposition of a single hermitian matrix."""
    M = _check_hermitian(as_complex_matrix(M))
    d = M.shape[0]
    if np.all(M.imag == 0):
        w, V = jacobi_eigh(M.real)
        return EigenResult(w, V.astype(complex))
    w2, V2 = jacobi_eigh(_embed(M))
    values = _pair_values(w2)
    cand = V2[:d, :] + 1j * V2[d:, :]
    scale = 1.0 + np.max(np.abs(values), initial=0.0)
    vectors = np.zeros((d, d), dtype=complex)

    # each cluster of equal eigenvalues owns 2k real vectors spanning a
    # k-dimensional complex eigenspace; pivoted Gram-Schmidt picks k of them
    start = 0
    while start < d:
        stop = start + 1
        while stop < d and values[stop] - values[stop - 1] <= 1e-9 * scale:
            stop += 1
        pool = [cand[:, j].copy() for j in range(2 * start, 2 * stop)]
        for col in range(start, stop):
            norms = [np.linalg.norm(x) for x in pool]
            best = int(np.argmax(norms))
            v = pool.pop(best) / norms[best]
            vectors[:, col] = v
            pool = [x - v * np.vdot(v, x) for x in pool]
        start = stop
    return EigenResult(values, vectors)


def _spectral_norm(M: np.ndarray) -> float:
    if not np.any(M):
        return 0.0
    w = hermitian_eigvals(M)
    return float(np.max(np.abs(w)))


def complex_determinant(M):
    """Determinant by LU with partial pivoting; accepts a stack ``(..., d, d)``."""
    M = np.asarray(M, dtype=complex)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise InvalidMatrix(f"expected square matrices, got shape {M.shape}")
    batch = M.shape[:-2]
    d = M.shape[-1]
    A = M.reshape(-1, d, d).copy()
    det = np.ones(A.shape[0], dtype=complex)
    rows = np.arange(A.shape[0])
    for k in range(d):
        piv = k + np.argmax(np.abs(A[:, k:, k]), axis=1)
        swap = piv != k
        if swap.any():
            pk = A[rows, k, :].copy()
            A[rows, k, :] = A[rows, piv, :]
            A[rows, piv, :] = pk
            det = np.where(swap, -det, det)
        pivot = A[:, k, k]
        det = det * pivot
        safe = np.where(pivot == 0, 1.0, pivot)
        factors = A[:, k + 1:, k] / safe[:, None]
        A[:, k + 1:, k:] -= factors[:, :, None] * A[:, None, k, k:]
    return det.reshape(batch) if batch else det[0]
