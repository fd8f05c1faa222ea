"""
The unramified principal series Ind_B^G(Lambda) restricted to K-invariants.

A K-invariant vector is determined by its values at the cell representatives
w_C of B(Z_p) \\ G(Z_p) / K, so it is stored as one Scalar per cell. Hecke
operators become |cells| x |cells| Scalar matrices:

    T[C][D] = sum over x_i in KtK/K with w_C x_i in B w_D K of Lambda delta^(1/2)(b),

where w_C x_i = b w_D k.
"""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ..algebra import (
    Scalar,
    ScalarMatrix,
    charpoly,
    polynomial_from_roots,
    smat_scale,
    smat_vec,
)
from ..errors import InvariantViolation, UnknownOperator
from ..groups import TorusExponent, WeylElement, mat_mul, weyl_group
from ..hecke_data import HeckeParams
from ..log import get_logger
from .cosets import OPERATORS, HeckeOperator, enumerate_cosets
from .lattice import CellKey, ParahoricTag, cell_and_torus, cell_key

log = get_logger("parahoric")

NORMALIZATIONS = ("unitary", "cohomological")


@lru_cache(maxsize=None)
def cell_representatives(tag: ParahoricTag, p: int) -> Tuple[Tuple[CellKey, WeylElement], ...]:
    """One Weyl element per cell, shortest first; the identity comes first."""
    cells: Dict[CellKey, WeylElement] = {}
    for element in weyl_group():
        key = cell_key(element.matrix, tag, p)
        cells.setdefault(key, element)
    if len(cells) != tag.cell_count:
        raise InvariantViolation(
            f"{tag.name} has {len(cells)} cells at p={p}, expected {tag.cell_count}"
        )
    return tuple(cells.items())


@dataclass(frozen=True)
class InducedVector:
    """Values of a K-invariant vector at the cell representatives."""
    tag: ParahoricTag
    coeffs: Tuple[Scalar, ...]

    def __add__(self, other: "InducedVector") -> "InducedVector":
        return InducedVector(self.tag, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "InducedVector") -> "InducedVector":
        return InducedVector(self.tag, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def scale(self, s) -> "InducedVector":
        return InducedVector(self.tag, tuple(x * s for x in self.coeffs))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coeffs)

    def to_list(self) -> List[str]:
        return [str(x) for x in self.coeffs]


class InducedModel:
    """
    K-invariants of Ind(Lambda) for one parameter set and one parahoric level.

    Lambda(t) = chi1^e1 chi2^e2 rho^e0 with chi1 = gamma/alpha,
    chi2 = beta/alpha and rho = alpha p^(-w/2). With dual=True the model is
    Ind(Lambda^-1), the other side of the duality pairing. The cohomological
    normalisation twists Lambda by |nu|^-(r1+r2) and compensates in every
    operator, so both normalisations give the same matrices.
    """

    def __init__(self, params: HeckeParams, tag: ParahoricTag,
                 normalization: str = "unitary", dual: bool = False):
        if normalization not in NORMALIZATIONS:
            raise InvariantViolation(f"normalization must be one of {NORMALIZATIONS}")
        self.params = params
        self.tag = tag
        self.normalization = normalization
        self.dual = dual
        self.p = params.p
        self.field = params.field
        self.cells = cell_representatives(tag, self.p)
        self._index = {key: i for i, (key, _) in enumerate(self.cells)}
        self._raw: Dict[TorusExponent, ScalarMatrix] = {}

        F = self.field
        alpha, beta, gamma, _ = params.parameters()
        self._chi1 = gamma / alpha
        self._chi2 = beta / alpha
        self._rho = alpha * F.sqrt_p_power(-params.weight)
        if dual:
            self._chi1, self._chi2, self._rho = (
                self._chi1.inverse(), self._chi2.inverse(), self._rho.inverse()
            )

    @property
    def size(self) -> int:
        return len(self.cells)

    def character(self, t: TorusExponent) -> Scalar:
        """Lambda delta_B^(1/2) at the torus element t."""
        F = self.field
        value = (self._chi1 ** t.e1) * (self._chi2 ** t.e2) * (self._rho ** t.e0)
        value = value * F.sqrt_p_power(-t.modulus_exponent())
        if self.normalization == "cohomological":
            value = value * F.sqrt_p_power(t.e0 * (self.params.r1 + self.params.r2))
        return value

    def cell_index(self, x) -> int:
        return self._index[cell_key(x, self.tag, self.p)]

    def raw_matrix(self, t: TorusExponent) -> ScalarMatrix:
        """Matrix of the unnormalised [K t K]."""
        if t not in self._raw:
            reps = enumerate_cosets(self.tag, t, self.p)
            n = self.size
            counts: Counter = Counter()
            for c, (_, element) in enumerate(self.cells):
                for x in reps:
                    key, torus = cell_and_torus(mat_mul(element.matrix, x), self.tag, self.p)
                    counts[(c, self._index[key], torus)] += 1
            F = self.field
            rows = [[F.zero] * n for _ in range(n)]
            for (c, d, torus), count in sorted(counts.items()):
                rows[c][d] = rows[c][d] + self.character(torus) * count
            self._raw[t] = tuple(tuple(row) for row in rows)
            log.debug("Built Hecke matrix", parahoric=self.tag.value, torus=str(t), p=self.p)
        return self._raw[t]

    def operator(self, name: str) -> HeckeOperator:
        op = OPERATORS.get(name)
        if not op.defined_at(self.tag):
            raise UnknownOperator(f"{name} is not defined at level {self.tag.name}")
        return op

    def normalizing_factor(self, op: HeckeOperator) -> Scalar:
        r1, r2 = self.params.r1, self.params.r2
        if self.normalization == "cohomological":
            return self.field.sqrt_p_power(op.cohomological_power(r1, r2))
        return self.field.sqrt_p_power(op.unitary_power(r1, r2))

    def operator_matrix(self, name: str) -> ScalarMatrix:
        """Matrix of the named, minimally normalised operator."""
        op = self.operator(name)
        return smat_scale(self.raw_matrix(op.torus), self.normalizing_factor(op))

    def spherical_vector(self) -> InducedVector:
        """Value 1 on every cell."""
        return InducedVector(self.tag, tuple(self.field.one for _ in self.cells))

    def identity_cell_vector(self, value=1) -> InducedVector:
        """Supported on B K, with the given value at the identity."""
        F = self.field
        coeffs = [F.zero] * self.size
        coeffs[0] = F(value)
        return InducedVector(self.tag, tuple(coeffs))

    def apply(self, name: str, v: InducedVector) -> InducedVector:
        return InducedVector(self.tag, smat_vec(self.operator_matrix(name), v.coeffs))

    def apply_factors(self, name: str, roots: Sequence[Scalar], v: InducedVector) -> InducedVector:
        """prod (U - root) v for the named U."""
        for root in roots:
            v = self.apply(name, v) - v.scale(root)
        return v

    def charpoly(self, name: str) -> List[Scalar]:
        return charpoly(self.operator_matrix(name))

    def has_eigenvalues(self, name: str, expected: Sequence[Scalar]) -> bool:
        """Characteristic polynomial equals prod (X - expected_i)."""
        return self.charpoly(name) == polynomial_from_roots(list(expected))

    def is_eigenvector(self, name: str, v: InducedVector, eigenvalue: Scalar) -> bool:
        return (self.apply(name, v) - v.scale(eigenvalue)).is_zero()
