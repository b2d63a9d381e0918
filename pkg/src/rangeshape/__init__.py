"""Numerical ranges, polar spectrahedra, and the rigid-convexity decision for matrix shapes."""

__version__ = "0.1.0"

from .decision import (
    RealizationResult,
    ShapeVerdict,
    SymmetrizeOptions,
    decide_matrix,
    decide_polar_poly,
    decide_polygon,
    roundtrip_check,
    symmetrize,
)
from .geometry import ConvexPolygon, hausdorff
from .linalg import HermitianPair, hermitian_eigvals, hermitian_parts, jacobi_eigh
from .numrange import center_matrix, degeneracy_report, numerical_range
from .polar import double_polar, lmi_membership, lmi_polar_boundary, polygon_polar, refine_angles
from .rigidity import BivariatePoly, all_roots_real, kippenhahn_poly, rigid_convexity, rz_test

__all__ = [
    "BivariatePoly", "ConvexPolygon", "HermitianPair", "RealizationResult", "ShapeVerdict",
    "SymmetrizeOptions", "all_roots_real", "center_matrix", "decide_matrix", "decide_polar_poly",
    "decide_polygon", "degeneracy_report", "double_polar", "hausdorff", "hermitian_eigvals",
    "hermitian_parts", "jacobi_eigh", "kippenhahn_poly", "lmi_membership", "lmi_polar_boundary",
    "numerical_range", "polygon_polar", "refine_angles", "rigid_convexity", "roundtrip_check",
    "rz_test", "symmetrize",
]
