"""Convex polygons in the plane and support-function utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HAUSDORFF_DIRECTIONS = 1440


def unit_directions(n: int, offset: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """``n`` equally spaced angles in ``[0, 2*pi)`` and their unit vectors."""
    thetas = offset + 2 * np.pi * np.arange(n) / n
    return thetas, np.column_stack([np.cos(thetas), np.sin(thetas)])


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ConvexPolygon:
    """Vertices of a convex polygon in counterclockwise order, shape (m, 2).

    One vertex is a point, two vertices a segment.
    """

    vertices: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        if len(V) == 0:
            raise ValueError("polygon needs at least one vertex")
        if not np.all(np.isfinite(V)):
            raise ValueError("polygon vertices must be finite")
        object.__setattr__(self, "vertices", V)

    @classmethod
    def from_points(cls, points, rtol: float = 1e-12) -> "ConvexPolygon":
        """Convex hull (Andrew's monotone chain) of a point cloud.

        Points closer than ``rtol * scale`` are merged and vertices whose
        turn is within ``rtol * scale**2`` of straight are dropped.
        """
        P = np.asarray(points, dtype=float).reshape(-1, 2)
        if len(P) == 0:
            raise ValueError("no points")
        scale = float(np.max(np.ptp(P, axis=0)))
        if scale == 0.0:
            return cls(P[:1].copy())
        eps = rtol * scale
        P = P[np.lexsort((P[:, 1], P[:, 0]))].tolist()
        keep = [P[0]]
        for p in P[1:]:
            if math.hypot(p[0] - keep[-1][0], p[1] - keep[-1][1]) > eps:
                keep.append(p)
        if len(keep) <= 2:
            return cls(np.array(keep))
        turn = eps * scale

        def chain(points):
            out = []
            for p in points:
                while len(out) >= 2 and _cross(out[-2], out[-1], p) <= turn:
                    out.pop()
                out.append(p)
            return out

        lower = chain(keep)
        upper = chain(keep[::-1])
        hull = lower[:-1] + upper[:-1]
        # merge near-coincident endpoints of the two chains
        out = [hull[0]]
        for p in hull[1:]:
            if math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) > eps:
                out.append(p)
        if len(out) > 1 and math.hypot(out[-1][0] - out[0][0], out[-1][1] - out[0][1]) <= eps:
            out.pop()
        return cls(np.array(out))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def complex_vertices(self) -> np.ndarray:
        return self.vertices[:, 0] + 1j * self.vertices[:, 1]

    def support(self, thetas) -> np.ndarray:
        thetas = np.asarray(thetas, dtype=float)
        U = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1)
        return np.max(U @ self.vertices.T, axis=-1)

    def diameter(self) -> float:
        """Largest vertex distance, by rotating calipers over antipodal pairs."""
        V = self.vertices
        m = len(V)
        if m == 1:
            return 0.0
        if m == 2:
            return float(np.hypot(*(V[1] - V[0])))
        V = V.tolist()
        best = 0.0
        j = 1
        for i in range(m):
            a, b = V[i], V[(i + 1) % m]
            while abs(_cross(a, b, V[(j + 1) % m])) > abs(_cross(a, b, V[j])):
                j = (j + 1) % m
            c = V[j]
            best = max(best, math.hypot(c[0] - a[0], c[1] - a[1]),
                       math.hypot(c[0] - b[0], c[1] - b[1]))
        return best

    def area(self) -> float:
        if len(self) < 3:
            return 0.0
        x, y = self.vertices.T
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def centroid(self) -> np.ndarray:
        """Area centroid; vertex mean for points and segments."""
        if len(self) < 3:
            return self.vertices.mean(axis=0)
        x, y = self.vertices.T
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        w = x * yn - xn * y
        a = w.sum() / 2
        return np.array([np.sum((x + xn) * w), np.sum((y + yn) * w)]) / (6 * a)

    def translate(self, shift) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + np.asarray(shift, dtype=float))

    def edge_offsets(self) -> np.ndarray:
        """Signed distance from the origin to each edge line (positive = origin inside).

        Edge ``i`` joins vertex ``i`` to vertex ``i + 1``.
        """
        V = self.vertices
        W = np.roll(V, -1, axis=0)
        E = W - V
        length = np.hypot(E[:, 0], E[:, 1])
        return (V[:, 0] * W[:, 1] - V[:, 1] * W[:, 0]) / np.where(length > 0, length, 1)

    def interior_margin(self) -> float:
        """Distance from 0 to the boundary, negative when 0 is not interior."""
        if len(self) < 3:
            return -float(self._distance_small(np.zeros((1, 2)))[0])
        return float(np.min(self.edge_offsets()))

    def _distance_small(self, P: np.ndarray) -> np.ndarray:
        a = self.vertices[0]
        if len(self) == 1:
            return np.hypot(*(P - a).T)
        ab = self.vertices[1] - a
        t = np.clip((P - a) @ ab / (ab @ ab), 0.0, 1.0)
        return np.hypot(*(P - a - t[:, None] * ab).T)

    def contains(self, points, atol: float = 0.0) -> np.ndarray:
        """Membership test for points, with the polygon inflated by ``atol``."""
        P = np.atleast_2d(np.asarray(points, dtype=float))
        if len(self) < 3:
            return self._distance_small(P) <= atol
        V = self.vertices
        W = np.roll(V, -1, axis=0)
        E = W - V
        length = np.hypot(E[:, 0], E[:, 1])
        cross = (E[None, :, 0] * (P[:, None, 1] - V[None, :, 1])
                 - E[None, :, 1] * (P[:, None, 0] - V[None, :, 0]))
        return np.all(cross / length >= -atol, axis=1)


def hausdorff(P: ConvexPolygon, Q: ConvexPolygon, n_directions: int = HAUSDORFF_DIRECTIONS) -> float:
    """Hausdorff distance of two convex bodies as the sup-gap of their support functions."""
    thetas, _ = unit_directions(n_directions)
    return float(np.max(np.abs(P.support(thetas) - Q.support(thetas))))
