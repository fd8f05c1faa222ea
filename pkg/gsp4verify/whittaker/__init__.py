"""
Spherical Whittaker functions for GL2 and GSp4 over Q_p.

Two independent paths to the torus values (Casselman-Shalika closed form and
the Hecke recursion), the Iwasawa decomposition that connects cosets to torus
values, and Hecke translates of w_sph.
"""

from .casselman_shalika import (
    casselman_shalika_constant,
    cs_value_gl2,
    cs_value_gsp4,
    siegel_levi_value,
    weight_multiplicities,
)
from .iwasawa import IwasawaResult, iwasawa_decompose, iwasawa_decompose_gl2, psi_average
from .recursion import (
    RecursionOracle,
    coset_terms,
    cross_path_table,
    cs_recursion_oracle,
    eigenvalue_readback,
)
from .translate import (
    EIGENVECTOR_COMBOS,
    HeckeCombination,
    eigenvector_normalisations,
    evaluate_hecke_translate,
    iwahori_from_klingen,
    iwahori_from_siegel,
    klingen_eigenvector_combo,
    siegel_eigenvector_combo,
)

__all__ = [
    # Closed form
    "casselman_shalika_constant",
    "cs_value_gl2",
    "cs_value_gsp4",
    "siegel_levi_value",
    "weight_multiplicities",

    # Iwasawa
    "IwasawaResult",
    "iwasawa_decompose",
    "iwasawa_decompose_gl2",
    "psi_average",

    # Recursion
    "RecursionOracle",
    "coset_terms",
    "cross_path_table",
    "cs_recursion_oracle",
    "eigenvalue_readback",

    # Translates
    "EIGENVECTOR_COMBOS",
    "HeckeCombination",
    "eigenvector_normalisations",
    "evaluate_hecke_translate",
    "iwahori_from_klingen",
    "iwahori_from_siegel",
    "klingen_eigenvector_combo",
    "siegel_eigenvector_combo",
]
