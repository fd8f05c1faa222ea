"""
Parahoric subgroups of GSp4(Z_p), their double cosets, and Hecke operators
on parahoric invariants of the unramified principal series.
"""

from .lattice import MatrixModPk, ParahoricTag, hnf
from .cosets import (
    OPERATORS,
    HeckeOperator,
    OperatorRegistry,
    degree,
    enumerate_cosets,
    export_cosets,
    gl2_cosets,
    quotient_representatives,
)
from .induced import InducedModel, InducedVector
from .trace import (
    DiscriminatorReport,
    FrobeniusMatrixReport,
    Phi1Report,
    degree_table,
    frobenius_matrix_report,
    genestier_tilouine_discriminator,
    iwahori_joint_eigen_check,
    klingen_eigenvector,
    klingen_trace,
    phi1_trace_check,
    serre_transpose_check,
    trace_to_spherical,
)


def hecke_matrix(tag: ParahoricTag, name: str, params, normalization: str = "unitary"):
    """Matrix of the named operator on K-invariants of Ind(Lambda)."""
    return InducedModel(params, tag, normalization).operator_matrix(name)


__all__ = [
    "MatrixModPk",
    "ParahoricTag",
    "hnf",
    "OPERATORS",
    "HeckeOperator",
    "OperatorRegistry",
    "degree",
    "enumerate_cosets",
    "export_cosets",
    "gl2_cosets",
    "quotient_representatives",
    "InducedModel",
    "InducedVector",
    "hecke_matrix",
    "DiscriminatorReport",
    "FrobeniusMatrixReport",
    "Phi1Report",
    "degree_table",
    "frobenius_matrix_report",
    "genestier_tilouine_discriminator",
    "iwahori_joint_eigen_check",
    "klingen_eigenvector",
    "klingen_trace",
    "phi1_trace_check",
    "serre_transpose_check",
    "trace_to_spherical",
]
