"""``rangeshape`` command line.

Exit codes: 0 on success (including "no"/"fail" verdicts, which live in the
JSON body), 2 on invalid input, 3 on numerical failure or a symmetric
realization search that did not converge.
"""

from __future__ import annotations

import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

import click
import numpy as np

from . import __version__
from .decision import SymmetrizeOptions, decide_matrix, decide_polar_poly, decide_polygon, symmetrize
from .errors import (
    ConvergenceFailure,
    IllConditionedFit,
    InvalidMatrix,
    NotAnchored,
    NotHermitian,
    ScaleError,
    UnboundedPolar,
)
from .geometry import ConvexPolygon
from .io import FormatError, dumps, matrix_to_json, read_matrix, read_poly, read_polygon, write_csv, write_svg
from .linalg import hermitian_parts, set_workers
from .numrange import center_matrix, degeneracy_report, numerical_range
from .polar import lmi_polar_boundary, polygon_polar
from .rigidity import kippenhahn_poly, rz_test

EXIT_INPUT = 2
EXIT_NUMERIC = 3

_INPUT_ERRORS = (FormatError, InvalidMatrix, NotHermitian, NotAnchored, UnboundedPolar, ValueError)
_NUMERIC_ERRORS = (ConvergenceFailure, IllConditionedFit, ScaleError, FloatingPointError)


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    poly_path: Optional[str] = None
    polygon_path: Optional[str] = None
    dim: Optional[int] = None
    angles: int = 720
    directions: int = 180
    tol: float = 1e-3
    seed: int = 0
    restarts: int = 8
    center: bool = False
    threads: int = 0
    json_out: Optional[str] = None
    csv_out: Optional[str] = None
    svg_out: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.angles < 3:
            raise ValueError("--angles must be at least 3")
        if self.directions < 8:
            raise ValueError("--directions must be at least 8")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")


class Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _threads_from_env() -> int:
    raw = os.environ.get("RANGESHAPE_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise Failure(EXIT_INPUT, f"RANGESHAPE_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise Failure(EXIT_INPUT, "RANGESHAPE_THREADS must be >= 0")
    return n


def _emit(cfg: RunConfig, body: dict) -> None:
    cfg_dict = asdict(cfg)
    cfg_dict.pop("extra")
    report = {"command": cfg.command, "version": __version__, "config": cfg_dict, **body}
    text = dumps(report)
    if cfg.json_out:
        with open(cfg.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _eig_points(M) -> np.ndarray:
    ev = np.linalg.eigvals(M)
    return np.column_stack([ev.real, ev.imag])


def _run(cfg: RunConfig) -> int:
    set_workers(cfg.threads)
    body = _COMMANDS[cfg.command](cfg)
    _emit(cfg, body)
    return cfg.extra.get("exit", 0)


def _cmd_range(cfg: RunConfig) -> dict:
    A = read_matrix(cfg.input_path)
    prof = numerical_range(A, cfg.angles)
    poly = prof.polygon
    deg = degeneracy_report(A)
    if cfg.csv_out:
        write_csv(cfg.csv_out, ["theta", "h", "x", "y"],
                  zip(prof.thetas, prof.h, prof.points[:, 0], prof.points[:, 1]))
    if cfg.svg_out:
        write_svg(cfg.svg_out, boundary=prof.points, markers=_eig_points(A), title="numerical range")
    body = {
        "d": int(A.shape[0]),
        "n_points": len(prof),
        "support": {"min": float(prof.h.min()), "max": float(prof.h.max())},
        "diameter": poly.diameter(),
        "area": poly.area(),
        "degenerate": deg.degenerate,
    }
    if deg.degenerate:
        body["segment_endpoints"] = deg.segment_endpoints
    return body


def _cmd_polar(cfg: RunConfig) -> dict:
    if bool(cfg.input_path) == bool(cfg.polygon_path):
        raise ValueError("polar needs exactly one of --input, --polygon")
    if cfg.polygon_path:
        P = read_polygon(cfg.polygon_path)
        if cfg.center:
            P = P.translate(-P.centroid())
        Q = polygon_polar(P)
        if cfg.csv_out:
            write_csv(cfg.csv_out, ["x", "y"], Q.vertices.tolist())
        if cfg.svg_out:
            write_svg(cfg.svg_out, boundary=P.vertices, polar=Q.vertices, title="polar polygon")
        return {"source": "polygon", "bounded": True, "polar_vertices": Q.vertices}
    A = read_matrix(cfg.input_path)
    shift = 0j
    if cfg.center:
        shift, A = center_matrix(A)
    pb = lmi_polar_boundary(A, cfg.angles)
    pts = pb.points
    if cfg.csv_out:
        radius = ["inf" if not np.isfinite(r) else float(r) for r in pb.radius]
        write_csv(cfg.csv_out, ["theta", "h", "x", "y", "radius"],
                  zip(pb.phis, pb.lam_max, pts[:, 0], pts[:, 1], radius))
    if cfg.svg_out:
        write_svg(cfg.svg_out, boundary=numerical_range(A, cfg.angles).points,
                  polar=pts, markers=_eig_points(A), title="polar of the numerical range")
    body = {"source": "matrix", "shift": shift, "bounded": pb.bounded,
            "n_points": len(pb.phis), "n_unbounded_directions": int(np.sum(~pb.finite))}
    if pb.bounded:
        body["radius"] = {"min": float(pb.radius.min()), "max": float(pb.radius.max())}
        body["diameter"] = pb.polygon.diameter()
    return body


def _cmd_kippenhahn(cfg: RunConfig) -> dict:
    A = read_matrix(cfg.input_path)
    shift = 0j
    if cfg.center:
        shift, A = center_matrix(A)
    q = kippenhahn_poly(hermitian_parts(A))
    return {"shift": shift, "poly": q.to_json()}


def _rz_body(report) -> dict:
    return {
        "verdict": report.verdict,
        "directions_tested": report.directions_tested,
        "worst_margin": report.worst_margin,
        "failure_fraction": report.failure_fraction,
        "witnesses": [{"phi": phi, "root": root, "margin": m} for phi, root, m in report.failures],
        "caveats": report.caveats,
    }


def _cmd_rz_check(cfg: RunConfig) -> dict:
    q = read_poly(cfg.poly_path)
    return {"degree": q.degree, **_rz_body(rz_test(q, cfg.directions))}


def _verdict_body(v) -> dict:
    body = {"verdict": v.verdict, "reason": v.reason, "dimension_bound": v.dimension_bound,
            "degree": v.degree, "caveats": v.caveats}
    if v.witness is not None:
        body["witness"] = matrix_to_json(v.witness.matrix)
    if v.rz is not None:
        body["rz"] = _rz_body(v.rz)
    return body


def _cmd_decide(cfg: RunConfig) -> dict:
    sources = [p for p in (cfg.input_path, cfg.poly_path, cfg.polygon_path) if p]
    if len(sources) != 1:
        raise ValueError("decide needs exactly one of --input, --poly, --polygon")
    if cfg.dim is None and not cfg.input_path:
        raise ValueError("--dim is required for --poly and --polygon")
    if cfg.poly_path:
        return _verdict_body(decide_polar_poly(read_poly(cfg.poly_path), cfg.dim, cfg.directions))
    if cfg.polygon_path:
        return _verdict_body(decide_polygon(read_polygon(cfg.polygon_path), cfg.dim, cfg.directions))
    return _verdict_body(decide_matrix(read_matrix(cfg.input_path), cfg.dim, cfg.directions))


def _cmd_symmetrize(cfg: RunConfig) -> dict:
    A = read_matrix(cfg.input_path)
    opts = SymmetrizeOptions(tol=cfg.tol, max_restarts=cfg.restarts, seed=cfg.seed,
                             workers=max(1, cfg.threads), check_angles=cfg.angles)
    res = symmetrize(A, opts)
    if cfg.svg_out:
        write_svg(cfg.svg_out, boundary=numerical_range(A, cfg.angles).points,
                  polar=numerical_range(res.B, cfg.angles).points, markers=_eig_points(res.B),
                  title="W(A) and W(B)")
    if not res.converged:
        cfg.extra["exit"] = EXIT_NUMERIC
    return {
        "converged": res.converged,
        "achieved_distance": res.achieved_distance,
        "relative_distance": res.relative_distance,
        "restarts_used": res.restarts_used,
        "evaluations": res.evaluations,
        "symmetry_defect": float(np.max(np.abs(res.B - res.B.T))),
        "B": matrix_to_json(res.B),
    }


_COMMANDS = {
    "range": _cmd_range,
    "polar": _cmd_polar,
    "kippenhahn": _cmd_kippenhahn,
    "rz-check": _cmd_rz_check,
    "decide": _cmd_decide,
    "symmetrize": _cmd_symmetrize,
}


def execute(cfg_kwargs: dict) -> int:
    """Build a RunConfig, run it, and map failures to exit codes."""
    try:
        cfg_kwargs.setdefault("threads", _threads_from_env())
        cfg = RunConfig(**cfg_kwargs)
        return _run(cfg)
    except Failure as exc:
        click.echo(f"rangeshape: {exc}", err=True)
        return exc.code
    except _NUMERIC_ERRORS as exc:
        click.echo(f"rangeshape: numerical failure: {exc}", err=True)
        return EXIT_NUMERIC
    except _INPUT_ERRORS as exc:
        click.echo(f"rangeshape: invalid input: {exc}", err=True)
        return EXIT_INPUT
    except OSError as exc:
        click.echo(f"rangeshape: {exc}", err=True)
        return EXIT_INPUT


def _opts(*names):
    table = {
        "input": click.option("--input", "-i", "input_path", type=str, help="matrix JSON"),
        "poly": click.option("--poly", "poly_path", type=str, help="polynomial JSON"),
        "polygon": click.option("--polygon", "polygon_path", type=str, help="polygon JSON"),
        "dim": click.option("--dim", type=click.IntRange(min=1), default=None, help="dimension bound d"),
        "angles": click.option("--angles", type=int, default=720, show_default=True),
        "directions": click.option("--directions", type=int, default=180, show_default=True),
        "tol": click.option("--tol", type=float, default=1e-3, show_default=True),
        "seed": click.option("--seed", type=int, default=0, show_default=True),
        "restarts": click.option("--restarts", type=click.IntRange(min=1), default=8, show_default=True),
        "center": click.option("--center/--no-center", default=False,
                               help="shift the input so its centroid (or tr/d) sits at 0"),
        "json_out": click.option("--json-out", type=str, default=None),
        "csv_out": click.option("--csv-out", type=str, default=None),
        "svg_out": click.option("--svg-out", type=str, default=None),
    }

    def deco(f):
        for n in reversed(names + ("json_out",)):
            f = table[n](f)
        return f

    return deco


def _command(name, *opts, required=()):
    def register(_f):
        @main.command(name)
        @_opts(*opts)
        def cmd(**kwargs):
            for r in required:
                if not kwargs.get(r):
                    raise click.UsageError(f"missing --{r.replace('_path', '').replace('_', '-')}")
            sys.exit(execute({"command": name, **kwargs}))

        cmd.__doc__ = _f.__doc__
        return cmd

    return register


@click.group()
@click.version_option(__version__)
def main():
    """Numerical ranges, their polars, and LMI shape decisions."""


@_command("range", "input", "angles", "csv_out", "svg_out", required=("input_path",))
def _range():
    """Sample the boundary of W(A)."""


@_command("polar", "input", "polygon", "angles", "center", "csv_out", "svg_out")
def _polar():
    """Polar of W(A) via the LMI, or of a polygon."""


@_command("kippenhahn", "input", "center", required=("input_path",))
def _kippenhahn():
    """Coefficients of det(I - xi H - eta K)."""


@_command("rz-check", "poly", "directions", required=("poly_path",))
def _rz_check():
    """Real-zero test of a bivariate polynomial along lines through 0."""


@_command("decide", "input", "poly", "polygon", "dim", "directions")
def _decide():
    """Is the set a numerical range of a d x d matrix?"""


@_command("symmetrize", "input", "angles", "tol", "seed", "restarts", "svg_out",
          required=("input_path",))
def _symmetrize():
    """Search for a complex symmetric B with W(B) = W(A)."""


if __name__ == "__main__":
    main()
