"""
Operator registry and left-coset enumeration for parahoric double cosets.

Single responsibility: turn K t K into an explicit list of representatives
x_i with K t K = disjoint union of x_i K, by orbit enumeration under the
generators of K.
"""

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

from ..errors import InvariantViolation, PrecisionExceeded, UnknownOperator
from ..groups import (
    POSITIVE_ROOTS,
    Mat,
    TorusExponent,
    gl2,
    identity,
    mat_mul,
    mat_prod,
    unipotent,
)
from ..log import get_logger
from .lattice import MatrixModPk, ParahoricTag, chain_label, generators, hnf, unit_generators

log = get_logger("parahoric")


@dataclass(frozen=True)
class HeckeOperator:
    """
    A double-coset operator u^power [K t K].

    The unitary normalisation multiplies by u^(c1*r1 + c2*r2) where
    (c1, c2) = weight_coefficients.
    """
    name: str
    torus: TorusExponent
    weight_coefficients: Tuple[int, int]
    levels: Tuple[ParahoricTag, ...]
    description: str = ""

    def unitary_power(self, r1: int, r2: int) -> int:
        c1, c2 = self.weight_coefficients
        return c1 * r1 + c2 * r2

    def cohomological_power(self, r1: int, r2: int) -> int:
        """Power of u once Lambda is twisted by |.|^-(r1+r2)."""
        return self.unitary_power(r1, r2) - self.torus.e0 * (r1 + r2)

    @property
    def is_upper(self) -> bool:
        """Representatives can be chosen as n t with n in N(Z_p)."""
        return all(self.torus.root_value(root) >= 0 for root in POSITIVE_ROOTS)

    def defined_at(self, tag: ParahoricTag) -> bool:
        return tag in self.levels


class OperatorRegistry:
    """
    Registry of the named Hecke operators.

    Mirrors a plugin registry: operators are registered by name and looked up
    by the induced model, the Whittaker translates and the CLI.
    """

    def __init__(self):
        """Initialize empty registry."""
        self._operators: Dict[str, HeckeOperator] = {}

    def register(self, operator: HeckeOperator):
        """
        Register an operator.

        Args:
            operator: HeckeOperator instance to register
        """
        self._operators[operator.name] = operator

    def get(self, name: str) -> HeckeOperator:
        """
        Get operator by name.

        Raises:
            UnknownOperator: nothing registered under that name
        """
        try:
            return self._operators[name]
        except KeyError:
            raise UnknownOperator(
                f"Unknown operator {name!r}; known: {self.list_names()}"
            ) from None

    def list_all(self) -> List[HeckeOperator]:
        return list(self._operators.values())

    def list_names(self) -> List[str]:
        return list(self._operators.keys())

    def at_level(self, tag: ParahoricTag) -> List[HeckeOperator]:
        return [op for op in self._operators.values() if op.defined_at(tag)]

    def __len__(self) -> int:
        """Return number of registered operators."""
        return len(self._operators)

    def __contains__(self, name: str) -> bool:
        """Check if operator is registered."""
        return name in self._operators

    def __repr__(self) -> str:
        """String representation."""
        return f"OperatorRegistry({len(self._operators)} operators: {self.list_names()})"


_ALL = tuple(ParahoricTag)
_PARAHORIC = (ParahoricTag.KLINGEN, ParahoricTag.SIEGEL, ParahoricTag.IWAHORI)


def create_default_registry() -> OperatorRegistry:
    """
    Create registry with the standard operators.

    Returns:
        OperatorRegistry with diamond, T1, T2, U1, U2, U1_prime, U2_prime,
        Z_prime and Phi
    """
    registry = OperatorRegistry()
    for operator in (
        HeckeOperator("diamond", TorusExponent(1, 1, 2), (0, 0), _ALL, "<p> = [K pI K]"),
        HeckeOperator("T1", TorusExponent(1, 1, 1), (1, 1), (ParahoricTag.HYPERSPECIAL,),
                      "[K diag(p,p,1,1) K]"),
        HeckeOperator("T2", TorusExponent(2, 1, 2), (2, 0), (ParahoricTag.HYPERSPECIAL,),
                      "[K diag(p^2,p,p,1) K]"),
        HeckeOperator("U1", TorusExponent(1, 1, 1), (1, 1), _PARAHORIC, "[K diag(p,p,1,1) K]"),
        HeckeOperator("U2", TorusExponent(2, 1, 2), (2, 0), _PARAHORIC, "[K diag(p^2,p,p,1) K]"),
        HeckeOperator("U1_prime", TorusExponent(0, 0, 1), (1, 1), _PARAHORIC,
                      "[K diag(1,1,p,p) K]"),
        HeckeOperator("U2_prime", TorusExponent(0, 1, 2), (2, 0), _PARAHORIC,
                      "[K diag(1,p,p,p^2) K]"),
        HeckeOperator("Z_prime", TorusExponent(0, 1, 1), (1, 1), (ParahoricTag.IWAHORI,),
                      "[Iw diag(1,p,1,p) Iw]"),
        HeckeOperator("Phi", TorusExponent(0, 0, 1), (1, 1), (ParahoricTag.IWAHORI,),
                      "[Iw diag(1,1,p,p) Iw]"),
    ):
        registry.register(operator)
    return registry


OPERATORS = create_default_registry()


# ============================================================================
# Orbit enumeration
# ============================================================================

def orbit(start: Mat, moves: Iterable[Mat],
          label: Callable[[Mat], Hashable]) -> Dict[Hashable, Mat]:
    """
    Breadth-first closure of {start} under left multiplication by moves.

    Returns the first representative found for every label. The orbit is
    finite, so closure under the generators is closure under the group.
    """
    moves = tuple(moves)
    found = {label(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in moves:
                y = mat_mul(g, x)
                key = label(y)
                if key not in found:
                    found[key] = y
                    nxt.append(y)
        frontier = nxt
    return found


def required_precision(t: TorusExponent) -> int:
    """k = 1 + the largest |exponent| on the diagonal of t."""
    return 1 + max(abs(e) for e in t.diagonal())


@lru_cache(maxsize=None)
def _cosets(tag: ParahoricTag, t: TorusExponent, p: int) -> Tuple[Mat, ...]:
    started = time.perf_counter()
    found = orbit(t.matrix(p), generators(tag, p), lambda x: chain_label(x, tag, p))
    reps = tuple(found[key] for key in sorted(found))
    log.debug(
        "Enumerated double coset",
        parahoric=tag.value,
        torus=str(t),
        p=p,
        cosets=len(reps),
        duration_ms=(time.perf_counter() - started) * 1000,
    )
    return reps


def enumerate_cosets(tag: ParahoricTag, t: TorusExponent, p: int,
                     precision: Optional[int] = None) -> List[Mat]:
    """
    Left-coset representatives of K t K, sorted by canonical label.

    Raises:
        PrecisionExceeded: precision is below 1 + the largest exponent of t
    """
    if precision is not None and precision < required_precision(t):
        raise PrecisionExceeded(
            f"Precision {precision} cannot resolve {t}; need {required_precision(t)}"
        )
    return list(_cosets(tag, t, p))


def export_cosets(tag: ParahoricTag, t: TorusExponent, p: int,
                  precision: Optional[int] = None) -> List[MatrixModPk]:
    """Representatives reduced mod p^k; negative exponents are first cleared by the centre."""
    k = precision or required_precision(t)
    shift = max(0, -min(t.diagonal()))
    scale = TorusExponent(shift, shift, 2 * shift)
    return [
        MatrixModPk.reduce(mat_mul(scale.matrix(p), x), p, k)
        for x in enumerate_cosets(tag, t, p, k)
    ]


def degree(tag: ParahoricTag, t: TorusExponent, p: int) -> int:
    """Number of left cosets in K t K."""
    return len(_cosets(tag, t, p))


def unipotent_coset_representatives(t: TorusExponent, p: int) -> List[Mat]:
    """
    n t for n = prod x_beta(c_beta), c_beta in [0, p^beta(t)), over the positive
    roots; valid for every parahoric containing the upper Borel over Z_p.
    """
    if not all(t.root_value(root) >= 0 for root in POSITIVE_ROOTS):
        raise InvariantViolation(f"{t} is not dominant for the upper Borel")
    ranges = [range(p ** t.root_value(root)) for root in POSITIVE_ROOTS]
    tm = t.matrix(p)
    reps = []
    for values in itertools.product(*ranges):
        n = identity(4)
        for root, c in zip(POSITIVE_ROOTS, values):
            if c:
                n = mat_mul(n, unipotent(root, c))
        reps.append(mat_prod(n, tm))
    return reps


@lru_cache(maxsize=None)
def quotient_representatives(tag: ParahoricTag, p: int) -> Tuple[Mat, ...]:
    """Representatives of G(Z_p)/K, found as the G(Z_p)-orbit of the coset K."""
    found = orbit(
        identity(4),
        generators(ParahoricTag.HYPERSPECIAL, p),
        lambda x: chain_label(x, tag, p),
    )
    log.debug("Enumerated G(Z_p)/K", parahoric=tag.value, p=p, cosets=len(found))
    return tuple(found[key] for key in sorted(found))


@lru_cache(maxsize=None)
def gl2_cosets(n: int, p: int) -> Tuple[Mat, ...]:
    """Left-coset representatives of GL2(Z_p) diag(p^n, 1) GL2(Z_p)."""
    moves = [gl2(1, 1, 0, 1), gl2(1, 0, 1, 1)]
    for a in unit_generators(p):
        moves += [gl2(a, 0, 0, 1), gl2(1, 0, 0, a)]
    found = orbit(gl2(Fraction(p) ** n, 0, 0, 1), moves, lambda x: hnf(x, p))
    return tuple(found[key] for key in sorted(found))
