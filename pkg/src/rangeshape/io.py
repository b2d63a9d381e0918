"""File formats: matrices, polygons and polynomials as JSON; CSV point clouds; static SVG figures.

All writers are deterministic. Floats are written with 17 significant digits
and keys are emitted in insertion order, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidMatrix
from .geometry import ConvexPolygon
from .rigidity import BivariatePoly


class FormatError(ValueError):
    """Input file is missing, unreadable or does not match the expected schema."""


def _load(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: top-level JSON value must be an object")
    return obj


def matrix_from_json(obj: dict) -> np.ndarray:
    """``{"d": n, "entries": [[[re, im], ...], ...]}``, row-major."""
    try:
        d = int(obj["d"])
        entries = np.asarray(obj["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"matrix JSON needs 'd' and numeric 'entries': {exc}") from exc
    if entries.shape != (d, d, 2):
        raise FormatError(f"entries must have shape ({d}, {d}, 2), got {entries.shape}")
    if not np.all(np.isfinite(entries)):
        raise FormatError("matrix entries must be finite")
    return entries[..., 0] + 1j * entries[..., 1]


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"d": int(M.shape[0]),
            "entries": [[[z.real, z.imag] for z in row] for row in M.tolist()]}


def polygon_from_json(obj: dict) -> ConvexPolygon:
    try:
        pts = np.asarray(obj["vertices"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"polygon JSON needs numeric 'vertices': {exc}") from exc
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) == 0:
        raise FormatError("vertices must be a non-empty list of [x, y] pairs")
    try:
        return ConvexPolygon.from_points(pts)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def polygon_to_json(P: ConvexPolygon) -> dict:
    return {"vertices": P.vertices.tolist()}


def poly_from_json(obj: dict) -> BivariatePoly:
    try:
        return BivariatePoly.from_json(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"polynomial JSON needs 'coeffs': [[j, k, c], ...]: {exc}") from exc


def read_matrix(path) -> np.ndarray:
    return matrix_from_json(_load(path))


def read_polygon(path) -> ConvexPolygon:
    return polygon_from_json(_load(path))


def read_poly(path) -> BivariatePoly:
    return poly_from_json(_load(path))


def _plain(obj):
    """Convert numpy scalars/arrays and complex numbers to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = "%.17g" % x
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text with 17-digit floats; non-finite floats become strings."""

    def enc(v, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f"{pad}{json.dumps(k)}: {enc(x, level + 1)}" for k, x in v.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(v, list):
            if not v:
                return "[]"
            if all(not isinstance(x, (dict, list)) for x in v):
                return "[" + ", ".join(enc(x, level) for x in v) + "]"
            return "[\n" + ",\n".join(pad + enc(x, level + 1) for x in v) + "\n" + end + "]"
        if isinstance(v, bool) or v is None:
            return json.dumps(v)
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            return _fmt_float(v)
        return json.dumps(v, ensure_ascii=False)

    return enc(_plain(obj), 0) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt_float(float(x)).strip('"') if isinstance(x, (float, np.floating)) else x
                    for x in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    Path(path).write_text(csv_text(header, rows), encoding="utf-8")


def svg_figure(boundary: Optional[np.ndarray] = None, polar: Optional[np.ndarray] = None,
               markers: Optional[np.ndarray] = None, size: int = 480, title: str = "") -> str:
    """Closed polylines for the range (blue) and polar (red) plus eigenvalue dots, one viewport."""
    layers = [np.asarray(a, dtype=float).reshape(-1, 2) for a in (boundary, polar, markers)
              if a is not None and len(a)]
    finite = [a[np.all(np.isfinite(a), axis=1)] for a in layers]
    pts = np.concatenate(finite) if finite else np.zeros((1, 2))
    if len(pts) == 0:
        pts = np.zeros((1, 2))
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(np.max(hi - lo), 1e-12))
    margin = 0.08 * span
    lo, span = lo - margin, span + 2 * margin
    scale = size / span

    def xy(p):
        return f"{(p[0] - lo[0]) * scale:.3f},{(lo[1] + span - p[1]) * scale:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    if 0 <= -lo[0] <= span and 0 <= -lo[1] <= span:
        o = xy((0.0, 0.0)).split(",")
        out.append(f'<line x1="0" y1="{o[1]}" x2="{size}" y2="{o[1]}" stroke="#ccc"/>')
        out.append(f'<line x1="{o[0]}" y1="0" x2="{o[0]}" y2="{size}" stroke="#ccc"/>')
    for arr, color, name in ((boundary, "#1f4e9e", "range"), (polar, "#b22222", "polar")):
        if arr is None or not len(arr):
            continue
        arr = np.asarray(arr, dtype=float)
        arr = arr[np.all(np.isfinite(arr), axis=1)]
        if len(arr):
            path = " ".join(xy(p) for p in arr)
            out.append(f'<polygon class="{name}" points="{path}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5"/>')
    if markers is not None:
        for p in np.asarray(markers, dtype=float).reshape(-1, 2):
            cx, cy = xy(p).split(",")
            out.append(f'<circle class="eigenvalue" cx="{cx}" cy="{cy}" r="3" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, **kwargs) -> None:
    Path(path).write_text(svg_figure(**kwargs), encoding="utf-8")


__all__ = [
    "FormatError", "InvalidMatrix", "csv_text", "dumps", "matrix_from_json", "matrix_to_json",
    "poly_from_json", "polygon_from_json", "polygon_to_json", "read_matrix", "read_poly",
    "read_polygon", "svg_figure", "write_csv", "write_json", "write_svg",
]
