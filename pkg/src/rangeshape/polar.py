"""Polar sets: polygon duality and the LMI description of W(A)_*.

The polar of a planar set S is ``{x : <x, y> <= 1 for all y in S}``. For a
numerical range the polar is the spectrahedron ``{(xi, eta) : I - xi H - eta K >= 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import UnboundedPolar
from .geometry import ConvexPolygon, hausdorff, unit_directions
from .linalg import HermitianPair, hermitian_eigvals
from .numrange import DEFAULT_ANGLES, _check_angles, _pair, support_points

MEMBERSHIP_TOL = 1e-10
RECESSION_CUTOFF = 1e-12
INTERIOR_RTOL = 1e-12

__all__ = [
    "PolarBoundary",
    "double_polar",
    "hausdorff",
    "lmi_membership",
    "lmi_polar_boundary",
    "polygon_polar",
    "refine_angles",
]


def polygon_polar(P: ConvexPolygon) -> ConvexPolygon:
    """Polar of a convex polygon containing 0 in its interior.

    Vertex ``v`` of P gives the half-plane ``<v, x> <= 1``; the edge through
    ``v_i, v_{i+1}`` gives the polar vertex ``w`` solving ``<v_i, w> = <v_{i+1}, w> = 1``.
    """
    scale = max(P.diameter(), float(np.max(np.abs(P.vertices))))
    if len(P) < 3 or P.interior_margin() <= INTERIOR_RTOL * scale:
        raise UnboundedPolar("0 is not an interior point; the polar is unbounded",
                             constraints=P.vertices.copy())
    V = P.vertices
    W = np.roll(V, -1, axis=0)
    det = V[:, 0] * W[:, 1] - V[:, 1] * W[:, 0]
    x = (W[:, 1] - V[:, 1]) / det
    y = (V[:, 0] - W[:, 0]) / det
    return ConvexPolygon.from_points(np.column_stack([x, y]))


def double_polar(P: ConvexPolygon) -> ConvexPolygon:
    return polygon_polar(polygon_polar(P))


def lmi_membership(pair: HermitianPair, z) -> tuple[bool, float]:
    """Is ``z = (xi, eta)`` in the polar of W(H + iK)?  Margin is ``lambda_min(I - xi H - eta K)``."""
    xi, eta = (z.real, z.imag) if np.iscomplexobj(z) else z
    M = np.eye(pair.d) - xi * pair.H - eta * pair.K
    margin = float(hermitian_eigvals(M)[0])
    return margin >= -MEMBERSHIP_TOL, margin


@dataclass(frozen=True)
class PolarBoundary:
    """Radial samples of the polar boundary; ``radius`` is ``inf`` along recession directions."""

    phis: np.ndarray
    radius: np.ndarray
    lam_max: np.ndarray

    @property
    def finite(self) -> np.ndarray:
        return np.isfinite(self.radius)

    @property
    def bounded(self) -> bool:
        return bool(np.all(self.finite))

    @property
    def points(self) -> np.ndarray:
        """Boundary points, NaN rows where the radius is infinite."""
        r = np.where(self.finite, self.radius, np.nan)
        return np.column_stack([r * np.cos(self.phis), r * np.sin(self.phis)])

    @cached_property
    def polygon(self) -> Optional[ConvexPolygon]:
        if not self.bounded:
            return None
        return ConvexPolygon.from_points(self.points)


def lmi_polar_boundary(A, n_angles: int = DEFAULT_ANGLES, phis=None) -> PolarBoundary:
    """Ray-shoot the spectrahedron ``I - xi H - eta K >= 0`` from the origin.

    Along direction ``phi`` the boundary sits at ``1 / lambda_max(cos phi H + sin phi K)``.
    ``phis`` overrides the equally spaced grid.
    """
    pair = _pair(A)
    if phis is None:
        if n_angles < 3:
            raise ValueError("n_angles must be at least 3")
        phis, _ = unit_directions(n_angles)
    else:
        phis = _check_angles(phis)
    lam = hermitian_eigvals(pair.pencil(np.cos(phis), np.sin(phis)))[..., -1]
    with np.errstate(divide="ignore"):
        radius = np.where(lam > RECESSION_CUTOFF, 1 / np.where(lam > 0, lam, 1.0), np.inf)
    return PolarBoundary(phis, radius, lam)


def _segment_distance(P, A, B) -> np.ndarray:
    AB = B - A
    L2 = np.einsum("ij,ij->i", AB, AB)
    t = np.einsum("ij,ij->i", P - A, AB) / np.where(L2 > 0, L2, 1.0)
    t = np.clip(np.where(L2 > 0, t, 0.0), 0.0, 1.0)
    D = P - A - t[:, None] * AB
    return np.hypot(D[:, 0], D[:, 1])


def _interval_gaps(thetas, h, pts):
    """Tangent-chord gaps of each angular interval, on W(A) and on its polar.

    Interval k runs from sample k to k + 1 (cyclically). On W(A) the two
    support lines meet at a corner whose distance to the chord bounds the
    local error of the inscribed polygon. On the polar the same samples give
    boundary points ``u/h`` with tangent lines ``<p, w> = 1``; the analogous
    corner/chord distance bounds the error there. Polar gaps are ``nan`` if
    0 is not interior to W(A).
    """
    nxt = np.roll(np.arange(len(thetas)), -1)
    U = np.column_stack([np.cos(thetas), np.sin(thetas)])
    dth = np.sin(np.roll(thetas, -1) - thetas)
    dth[-1] = np.sin(thetas[0] + 2 * np.pi - thetas[-1])
    with np.errstate(divide="ignore", invalid="ignore"):
        cx = (h * U[nxt, 1] - h[nxt] * U[:, 1]) / dth
        cy = (U[:, 0] * h[nxt] - U[nxt, 0] * h) / dth
    corner = np.column_stack([cx, cy])
    gap_w = _segment_distance(corner, pts, pts[nxt])
    gap_w = np.where(np.isfinite(gap_w), gap_w, np.inf)

    if np.min(h) <= 0:
        return gap_w, np.full_like(gap_w, np.nan)
    Z = U / h[:, None]
    p, q = pts, pts[nxt]
    det = p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0]
    same = np.hypot(*(p - q).T) <= 1e-14 * np.max(np.hypot(*pts.T))
    with np.errstate(divide="ignore", invalid="ignore"):
        wx = (q[:, 1] - p[:, 1]) / det
        wy = (p[:, 0] - q[:, 0]) / det
    gap_p = _segment_distance(np.column_stack([wx, wy]), Z, Z[nxt])
    gap_p = np.where(same, 0.0, np.where(np.isfinite(gap_p), gap_p, np.inf))
    return gap_w, gap_p


def refine_angles(A, n_angles: int = DEFAULT_ANGLES, rtol: float = 1e-5,
                  max_angles: int = 200_000) -> np.ndarray:
    """Angle grid adapted to the shape of W(A) and of its polar.

    Starts from ``n_angles`` equally spaced angles and bisects every interval
    whose tangent-chord gap exceeds ``rtol`` times the diameter, on W(A) and
    (when 0 is interior to W(A)) on the polar. Equal spacing badly
    undersamples thin ranges whose polars have needle-like tips; feeding the
    result to :func:`numerical_range` and :func:`lmi_polar_boundary` bounds
    the Hausdorff error of both polygons by about ``rtol`` times their
    diameters.
    """
    pair = _pair(A)
    thetas, _ = unit_directions(n_angles)
    h, pts = support_points(pair, thetas)
    while len(thetas) < max_angles:
        gap_w, gap_p = _interval_gaps(thetas, h, pts)
        diam_w = ConvexPolygon.from_points(pts).diameter()
        bad = gap_w > rtol * diam_w
        if not np.all(np.isnan(gap_p)):
            Z = np.column_stack([np.cos(thetas), np.sin(thetas)]) / h[:, None]
            bad |= gap_p > rtol * ConvexPolygon.from_points(Z).diameter()
        if not bad.any():
            break
        idx = np.flatnonzero(bad)
        ends = np.append(thetas[1:], thetas[0] + 2 * np.pi)
        mids = np.mod((thetas[idx] + ends[idx]) / 2, 2 * np.pi)
        h_new, p_new = support_points(pair, mids)
        thetas = np.concatenate([thetas, mids])
        order = np.argsort(thetas)
        thetas = thetas[order]
        h = np.concatenate([h, h_new])[order]
        pts = np.concatenate([pts, p_new])[order]
    return thetas
