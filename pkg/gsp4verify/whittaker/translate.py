"""
Hecke translates of the spherical Whittaker function on the torus.

A HeckeCombination is a Scalar-weighted sum of operator words. A word
(A, B, ...) means A applied after B; the last name acts first.

Upper operators (torus part dominant) have left cosets n t with n in N(Z_p),
so on a right K'-invariant Whittaker function

    (U w)(t0) = #cosets * w(t0 + t)

whenever t0 is dominant, psi being trivial on t0 N(Z_p) t0^-1; off the
dominant cone every K'-invariant vector vanishes. Other operators are
evaluated coset by coset through the Iwasawa decomposition and are only
allowed to act first, directly on w_sph.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Optional, Tuple

from ..algebra import Scalar
from ..errors import UnknownOperator
from ..groups import TorusExponent
from ..hecke_data import HeckeParams, klingen_roots
from ..log import get_logger
from ..parahoric.cosets import OPERATORS, HeckeOperator
from ..parahoric.lattice import ParahoricTag
from .casselman_shalika import cs_value_gsp4
from .recursion import coset_terms

log = get_logger("whittaker")

Word = Tuple[str, ...]


@dataclass(frozen=True)
class HeckeCombination:
    """sum of coefficient * word, applied to w_sph."""
    params: HeckeParams
    terms: Dict[Word, Scalar] = dataclass_field(default_factory=dict)

    @classmethod
    def identity(cls, params: HeckeParams) -> "HeckeCombination":
        return cls(params, {(): params.field.one})

    @classmethod
    def operator(cls, params: HeckeParams, name: str) -> "HeckeCombination":
        OPERATORS.get(name)
        return cls(params, {(name,): params.field.one})

    @classmethod
    def factor(cls, params: HeckeParams, name: str, root: Scalar) -> "HeckeCombination":
        """U - root."""
        return cls.operator(params, name) - cls.identity(params).scale(root)

    def __add__(self, other: "HeckeCombination") -> "HeckeCombination":
        terms = dict(self.terms)
        for word, c in other.terms.items():
            terms[word] = terms.get(word, self.params.field.zero) + c
        return HeckeCombination(self.params, {w: c for w, c in terms.items() if not c.is_zero()})

    def __sub__(self, other: "HeckeCombination") -> "HeckeCombination":
        return self + other.scale(-1)

    def __mul__(self, other: "HeckeCombination") -> "HeckeCombination":
        """Composition: self after other."""
        terms: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                terms[word] = terms.get(word, self.params.field.zero) + c1 * c2
        return HeckeCombination(self.params, {w: c for w, c in terms.items() if not c.is_zero()})

    def scale(self, s) -> "HeckeCombination":
        return HeckeCombination(self.params, {w: c * s for w, c in self.terms.items()})

    def operators(self):
        return sorted({name for word in self.terms for name in word})

    def __str__(self):
        parts = [f"({c})*{'*'.join(w) or '1'}" for w, c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


class TranslateEvaluator:
    """Evaluates words on w_sph at one parahoric level, memoising (word, t)."""

    def __init__(self, params: HeckeParams, level: ParahoricTag):
        self.params = params
        self.level = level
        self.p = params.p
        self._cache: Dict[Tuple[Word, TorusExponent], Scalar] = {}

    def _operator(self, name: str) -> HeckeOperator:
        op = OPERATORS.get(name)
        if not op.defined_at(self.level):
            raise UnknownOperator(f"{name} is not defined at level {self.level.name}")
        return op

    def _normalization(self, op: HeckeOperator) -> Scalar:
        return self.params.field.sqrt_p_power(op.unitary_power(self.params.r1, self.params.r2))

    def _upper_count(self, op: HeckeOperator) -> int:
        count = 1
        for root in ("a1", "a2", "a1+a2", "2a1+a2"):
            count *= self.p ** op.torus.root_value(root)
        return count

    def word(self, word: Word, t: TorusExponent) -> Scalar:
        key = (word, t)
        if key in self._cache:
            return self._cache[key]
        F = self.params.field
        if not word:
            value = cs_value_gsp4(self.params, t)
        elif not t.is_dominant():
            value = F.zero
        else:
            op = self._operator(word[0])
            if op.is_upper:
                value = self.word(word[1:], t + op.torus) * self._upper_count(op)
            elif len(word) > 1:
                raise UnknownOperator(
                    f"{op.name} has no upper coset representatives and must act first"
                )
            else:
                value = F.zero
                for term, count in coset_terms(op.name, self.p, self.level):
                    weight = term.weight(t, self.p) * count
                    if weight:
                        value = value + cs_value_gsp4(self.params, t + term.torus) * weight
            value = value * self._normalization(op)
        self._cache[key] = value
        return value


def evaluate_hecke_translate(params: HeckeParams, combo: HeckeCombination,
                             t: Optional[TorusExponent] = None,
                             level: ParahoricTag = ParahoricTag.IWAHORI) -> Scalar:
    """
    (combo . w_sph)(t), the identity by default.

    Raises:
        UnknownOperator: an operator is missing at the level, or a non-upper
            operator is not the first to act
    """
    t = t or TorusExponent(0, 0, 0)
    evaluator = TranslateEvaluator(params, level)
    total = params.field.zero
    for word, coefficient in combo.terms.items():
        total = total + coefficient * evaluator.word(word, t)
    return total


# ============================================================================
# Eigenvector combinations
# ============================================================================

def siegel_eigenvector_combo(params: HeckeParams) -> HeckeCombination:
    """alpha^-3 (U1 - beta)(U1 - gamma)(U1 - delta)."""
    alpha, beta, gamma, delta = params.parameters()
    combo = HeckeCombination.identity(params)
    for root in (beta, gamma, delta):
        combo = HeckeCombination.factor(params, "U1", root) * combo
    return combo.scale(alpha ** -3)


def klingen_eigenvector_combo(params: HeckeParams, prime: bool = False) -> HeckeCombination:
    """(1 + gamma/alpha)^-1 (P/(alpha beta))^3 prod (U2 - x) over the Klingen roots."""
    alpha, beta, gamma, _ = params.parameters()
    P = params.field.p_power(params.r2 + 1)
    name = "U2_prime" if prime else "U2"
    combo = HeckeCombination.identity(params)
    for root in klingen_roots(params):
        combo = HeckeCombination.factor(params, name, root) * combo
    return combo.scale((1 + gamma / alpha).inverse() * (P / (alpha * beta)) ** 3)


def iwahori_from_siegel(params: HeckeParams) -> HeckeCombination:
    """((P U2 - alpha gamma)/(alpha beta)) w^Sieg, the U2 = alpha beta/P part of w^Sieg."""
    alpha, beta, gamma, _ = params.parameters()
    P = params.field.p_power(params.r2 + 1)
    projector = (
        HeckeCombination.operator(params, "U2").scale(P)
        - HeckeCombination.identity(params).scale(alpha * gamma)
    ).scale((alpha * beta).inverse())
    return projector * siegel_eigenvector_combo(params)


def iwahori_from_klingen(params: HeckeParams) -> HeckeCombination:
    """((U1 - beta)/alpha) w^Kl, the U1 = alpha part of w^Kl."""
    alpha, beta, _, _ = params.parameters()
    projector = HeckeCombination.factor(params, "U1", beta).scale(alpha.inverse())
    return projector * klingen_eigenvector_combo(params)


EIGENVECTOR_COMBOS = {
    "siegel": (siegel_eigenvector_combo, ParahoricTag.SIEGEL),
    "klingen": (klingen_eigenvector_combo, ParahoricTag.KLINGEN),
    "iwahori_from_siegel": (iwahori_from_siegel, ParahoricTag.IWAHORI),
    "iwahori_from_klingen": (iwahori_from_klingen, ParahoricTag.IWAHORI),
}


def eigenvector_normalisations(params: HeckeParams,
                               t: Optional[TorusExponent] = None) -> Dict[str, Scalar]:
    """Value of each eigenvector combination at t (the identity by default)."""
    return {
        name: evaluate_hecke_translate(params, build(params), t, level)
        for name, (build, level) in EIGENVECTOR_COMBOS.items()
    }
