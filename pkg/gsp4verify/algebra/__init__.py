"""
Exact algebra shared by every module: Scalars over Q(a, b, c)(sqrt p),
truncated series, geometric sums and small Scalar matrices.
"""

from .linear import (
    ScalarMatrix,
    ScalarVector,
    charpoly,
    polynomial_from_roots,
    smat_add,
    smat_diagonal,
    smat_identity,
    smat_mul,
    smat_scale,
    smat_sub,
    smat_transpose,
    smat_vec,
)
from .scalar import (
    Scalar,
    ScalarField,
    scalar_field,
    scalar_specialize,
    scalar_valuation,
    valuation,
)
from .series import GeometricSpec, TruncatedSeries, geometric_sum, series_shift_divide

__all__ = [
    "Scalar",
    "ScalarField",
    "scalar_field",
    "scalar_specialize",
    "scalar_valuation",
    "valuation",
    "GeometricSpec",
    "TruncatedSeries",
    "geometric_sum",
    "series_shift_divide",
    "ScalarMatrix",
    "ScalarVector",
    "charpoly",
    "polynomial_from_roots",
    "smat_add",
    "smat_diagonal",
    "smat_identity",
    "smat_mul",
    "smat_scale",
    "smat_sub",
    "smat_transpose",
    "smat_vec",
]
