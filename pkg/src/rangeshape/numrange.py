"""Numerical ranges as sampled support functions and inscribed polygons."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .geometry import ConvexPolygon, unit_directions
from .linalg import (
    HermitianPair,
    as_complex_matrix,
    hermitian_eigen,
    hermitian_parts,
    hermitian_top,
    jacobi_eigh,
)

DEFAULT_ANGLES = 720
DEGENERACY_RTOL = 1e-10


def _pair(A) -> HermitianPair:
    return A if isinstance(A, HermitianPair) else hermitian_parts(A)


def _check_angles(thetas) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=float).ravel()
    if len(thetas) < 3 or np.any(np.diff(thetas) <= 0) or thetas[0] < 0 or thetas[-1] >= 2 * np.pi:
        raise ValueError("angles must be at least 3, strictly increasing, in [0, 2*pi)")
    return thetas


def support_points(pair: HermitianPair, thetas):
    """Support values and attaining boundary points for an array of angles.

    ``h[i]`` is the top eigenvalue of ``cos(t) H + sin(t) K`` and the point is
    ``(<Hv, v>, <Kv, v>)`` for a top eigenvector ``v``.
    """
    thetas = np.asarray(thetas, dtype=float)
    h, v = hermitian_top(pair.pencil(np.cos(thetas), np.sin(thetas)))
    x = np.einsum("...i,ij,...j->...", v.conj(), pair.H, v).real
    y = np.einsum("...i,ij,...j->...", v.conj(), pair.K, v).real
    return h, np.stack([x, y], axis=-1)


def support_point(pair: HermitianPair, theta: float) -> tuple[float, np.ndarray]:
    h, p = support_points(pair, np.array([theta]))
    return float(h[0]), p[0]


@dataclass(frozen=True)
class SupportProfile:
    """Support function of W(A) sampled at increasing angles in [0, 2*pi)."""

    thetas: np.ndarray
    h: np.ndarray
    points: np.ndarray
    matrix_dim: int

    @cached_property
    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon.from_points(self.points)

    def __len__(self) -> int:
        return len(self.thetas)


def numerical_range(A, n_angles: int = DEFAULT_ANGLES, thetas=None) -> SupportProfile:
    """Sample the boundary of the numerical range of ``A`` at ``n_angles`` directions.

    ``thetas`` overrides the equally spaced grid (strictly increasing, in
    ``[0, 2*pi)``), e.g. with the output of :func:`rangeshape.polar.refine_angles`.

    >>> prof = numerical_range([[0, 1], [0, 0]], n_angles=8)
    >>> bool(np.allclose(prof.h, 0.5))
    True
    """
    pair = _pair(A)
    if thetas is None:
        if n_angles < 3:
            raise ValueError("n_angles must be at least 3")
        thetas, _ = unit_directions(n_angles)
    else:
        thetas = _check_angles(thetas)
    h, pts = support_points(pair, thetas)
    return SupportProfile(thetas, h, pts, pair.d)


def center_matrix(A) -> tuple[complex, np.ndarray]:
    """Shift ``A`` by ``tr(A)/d`` so that 0 lies in W(A0) (interior unless degenerate)."""
    M = as_complex_matrix(A)
    lam = complex(np.trace(M) / M.shape[0])
    return lam, M - lam * np.eye(M.shape[0])


def origin_margin(A, n_angles: int = DEFAULT_ANGLES) -> float:
    """Minimum sampled support value; positive certifies 0 in the interior of W(A)."""
    return float(np.min(numerical_range(A, n_angles).h))


@dataclass(frozen=True)
class DegeneracyReport:
    """Whether W(A) has empty interior, i.e. ``A = alpha R + beta I``.

    In the degenerate case ``R`` is hermitian with unit Frobenius norm and
    ``alpha`` is chosen with ``-pi/2 < arg(alpha) <= pi/2``; a scalar matrix
    gets ``alpha = 0`` and ``R = 0``.
    """

    degenerate: bool
    alpha: complex
    beta: complex
    segment_endpoints: Optional[np.ndarray]
    R: Optional[np.ndarray] = None
    gram_min_eig: float = 0.0
    residual: float = 0.0


def degeneracy_report(A) -> DegeneracyReport:
    M = as_complex_matrix(A)
    d = M.shape[0]
    pair = hermitian_parts(M)
    beta = complex(np.trace(M) / d)
    eye = np.eye(d)
    # span{I, H, K} = span{I, H0, K0} with H0, K0 trace-free, so the Gram
    # matrix of {I, H, K} is congruent to diag(d, G) with G the 2x2 Gram of H0, K0
    H0 = pair.H - np.trace(pair.H).real / d * eye
    K0 = pair.K - np.trace(pair.K).real / d * eye
    G = np.array([
        [np.vdot(H0, H0).real, np.vdot(H0, K0).real],
        [np.vdot(K0, H0).real, np.vdot(K0, K0).real],
    ])
    w, U = jacobi_eigh(G)
    trace = float(np.trace(G))
    if w[0] > DEGENERACY_RTOL * trace:
        return DegeneracyReport(False, 0j, beta, None, gram_min_eig=float(w[0]))

    if trace == 0.0:
        alpha = 0j
        R = np.zeros((d, d), dtype=complex)
    else:
        a, b = U[:, 1]
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        R0 = a * H0 + b * K0
        norm = np.linalg.norm(R0)
        R = R0 / norm
        alpha = complex(a, b) * norm
    residual = float(np.linalg.norm(M - alpha * R - beta * eye))
    lam = hermitian_eigen(R).values
    ends = np.array([alpha * lam[0] + beta, alpha * lam[-1] + beta])
    endpoints = np.column_stack([ends.real, ends.imag])
    return DegeneracyReport(True, alpha, beta, endpoints, R=R,
                            gram_min_eig=float(w[0]), residual=residual)
