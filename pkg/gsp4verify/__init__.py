"""
gsp4verify - exact verification of the local computations behind GSp4 Euler systems

Hecke parameters and Euler factors, spherical Whittaker values, parahoric
Hecke operators, local zeta integrals, Eisenstein q-expansions, branching
coefficients and the ordinary-locus correspondence identity, all in exact
arithmetic and all checked against independent computations.
"""

__version__ = "0.1.0"

# Exact algebra
from .algebra import Scalar, ScalarField, TruncatedSeries, scalar_field

# Hecke data
from .hecke_data import (
    HeckeParams,
    TwistData,
    constants_report,
    euler_factor_E,
    klingen_testdata_value,
    theorem_A_constant,
)

# Errors
from .errors import Gsp4VerifyError

# Local computations
from .parahoric import InducedModel, ParahoricTag, hecke_matrix
from .whittaker import cs_value_gsp4, cs_recursion_oracle, evaluate_hecke_translate
from .zeta import ZetaRequest, klingen_zeta, siegel_zeta
from .eisenstein import EisensteinDatum, QExpansion, eisenstein_E_padic, eisenstein_F
from .branching import projection_coefficient, branching_table
from .moduli import ModuliPointH, ModuliPointG, Cycle, verify_correspondence_identity

# Verification and reporting
from .verify import CHECKS, Check, CheckRegistry, check, run_checks
from .components import CheckTracker, ReportExporter

__all__ = [
    # Exact algebra
    "Scalar",
    "ScalarField",
    "TruncatedSeries",
    "scalar_field",

    # Hecke data
    "HeckeParams",
    "TwistData",
    "constants_report",
    "euler_factor_E",
    "klingen_testdata_value",
    "theorem_A_constant",

    # Errors
    "Gsp4VerifyError",

    # Local computations
    "InducedModel",
    "ParahoricTag",
    "hecke_matrix",
    "cs_value_gsp4",
    "cs_recursion_oracle",
    "evaluate_hecke_translate",
    "ZetaRequest",
    "klingen_zeta",
    "siegel_zeta",
    "EisensteinDatum",
    "QExpansion",
    "eisenstein_E_padic",
    "eisenstein_F",
    "projection_coefficient",
    "branching_table",
    "ModuliPointH",
    "ModuliPointG",
    "Cycle",
    "verify_correspondence_identity",

    # Verification and reporting
    "CHECKS",
    "Check",
    "CheckRegistry",
    "check",
    "run_checks",
    "CheckTracker",
    "ReportExporter",
]
