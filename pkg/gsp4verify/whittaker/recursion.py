"""
Spherical Whittaker values from the Hecke eigen-equations alone.

An independent path to w_sph on the torus: the only inputs are w_sph(1) = 1,
vanishing off the dominant cone, the central character and the eigen-equations

    sum_i w(t0 x_i) = lambda_T w(t0)

for T1 = [K diag(p,p,1,1) K] and T2 = [K diag(p^2,p,p,1) K], with the left
cosets x_i from the parahoric enumeration and lambda_T read from the
spherical line of the induced model. Each x_i is Iwasawa-decomposed once;
averaging over the torus units that permute the cosets turns psi into
rational weights.
"""

import time
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..algebra import Scalar, valuation
from ..errors import UnderdeterminedSystem
from ..groups import CENTRE, TorusExponent
from ..hecke_data import HeckeParams
from ..log import get_logger
from ..parahoric.cosets import OPERATORS, enumerate_cosets
from ..parahoric.induced import InducedModel
from ..parahoric.lattice import ParahoricTag
from .casselman_shalika import cs_value_gsp4
from .iwasawa import iwasawa_decompose, psi_average

log = get_logger("whittaker")

EIGEN_OPERATORS = ("T1", "T2")


@dataclass(frozen=True)
class CosetTerm:
    """Iwasawa data of one class of left cosets: valuations of n12, n23 and the torus part."""
    v12: Optional[int]
    v23: Optional[int]
    torus: TorusExponent

    def weight(self, t0: TorusExponent, p: int) -> Fraction:
        """Unit-averaged psi(t0 n t0^-1)."""
        return (_average(self.v12, t0.root_value("a1"), p)
                * _average(self.v23, t0.root_value("a2"), p))


def _average(v: Optional[int], shift: int, p: int) -> Fraction:
    if v is None:
        return Fraction(1)
    return psi_average(Fraction(p) ** (v + shift), p)


def _valuation_or_none(x: Fraction, p: int) -> Optional[int]:
    if x == 0:
        return None
    return valuation(x, p)


@lru_cache(maxsize=None)
def coset_terms(name: str, p: int,
                tag: ParahoricTag = ParahoricTag.HYPERSPECIAL) -> Tuple[Tuple[CosetTerm, int], ...]:
    """The left cosets of the named operator at one level, grouped by Iwasawa data."""
    started = time.perf_counter()
    counts: Counter = Counter()
    for x in enumerate_cosets(tag, OPERATORS.get(name).torus, p):
        result = iwasawa_decompose(x, p)
        term = CosetTerm(
            _valuation_or_none(result.n[0][1], p),
            _valuation_or_none(result.n[1][2], p),
            result.torus,
        )
        counts[term] += 1
    log.debug("Decomposed cosets", operator=name, parahoric=tag.value, p=p, classes=len(counts),
              duration_ms=(time.perf_counter() - started) * 1000)
    return tuple(sorted(counts.items(), key=lambda item: (item[0].torus, str(item[0]))))


def normal_form(t: TorusExponent) -> Tuple[TorusExponent, int]:
    """(t - k*CENTRE, k) with the similitude exponent reduced to 0 or 1."""
    k = t.e0 // 2
    return t - CENTRE.scaled(k), k


def height(t: TorusExponent) -> int:
    """2 e1 - e0, invariant under the centre."""
    return 2 * t.e1 - t.e0


class RecursionOracle:
    """
    Solves the eigen-equations for w_sph on dominant torus points up to a height bound.

    Values are stored on normal forms; w(t + k*CENTRE) = chi_Pi(p)^k w(t).
    """

    def __init__(self, params: HeckeParams, bound: int = 3):
        self.params = params
        self.bound = bound
        self.p = params.p
        F = params.field
        self._chi = params.chi_pi
        self._values: Dict[TorusExponent, Scalar] = {TorusExponent(0, 0, 0): F.one}
        self._terms = {name: coset_terms(name, self.p) for name in EIGEN_OPERATORS}
        model = InducedModel(params, ParahoricTag.HYPERSPECIAL)
        self.eigenvalues = {
            name: model.raw_matrix(OPERATORS.get(name).torus)[0][0] for name in EIGEN_OPERATORS
        }

    def _known(self, t: TorusExponent) -> Optional[Scalar]:
        if not t.is_dominant():
            return self.params.field.zero
        base, k = normal_form(t)
        value = self._values.get(base)
        if value is None:
            return None
        return value * self._chi ** k

    def _equation_points(self, max_height: int) -> List[TorusExponent]:
        points = []
        for e0 in (0, 1):
            for e1 in range(0, max_height + 2):
                for e2 in range(0, e1 + 1):
                    t = TorusExponent(e1, e2, e0)
                    if t.is_dominant() and height(t) <= max_height:
                        points.append(t)
        return sorted(points, key=lambda t: (height(t), t))

    def solve(self, max_height: int):
        """Propagate until every dominant normal form of height <= max_height is known."""
        started = time.perf_counter()
        targets = [t for t in self._equation_points(max_height) if t not in self._values]
        rounds = 0
        while targets:
            rounds += 1
            progress = False
            for t0 in self._equation_points(max_height - 1):
                for name in EIGEN_OPERATORS:
                    progress |= self._use_equation(name, t0)
            targets = [t for t in targets if t not in self._values]
            if targets and not progress:
                raise UnderdeterminedSystem(
                    f"Eigen-equations leave {len(targets)} torus values undetermined, "
                    f"first {targets[0]}"
                )
        log.debug("Recursion solved", p=self.p, height=max_height, rounds=rounds,
                  values=len(self._values), duration_ms=(time.perf_counter() - started) * 1000)

    def _use_equation(self, name: str, t0: TorusExponent) -> bool:
        """Solve one eigen-equation at t0 if it has exactly one unknown; True on progress."""
        w0 = self._known(t0)
        if w0 is None:
            return False
        rhs = self.eigenvalues[name] * w0
        # unknown normal form -> its coefficient, central character included
        unknown: Dict[TorusExponent, Scalar] = {}
        for term, count in self._terms[name]:
            weight = term.weight(t0, self.p) * count
            if weight == 0:
                continue
            t = t0 + term.torus
            value = self._known(t)
            if value is None:
                base, k = normal_form(t)
                unknown[base] = unknown.get(base, self.params.field.zero) + self._chi ** k * weight
            else:
                rhs = rhs - value * weight
        unknown = {base: c for base, c in unknown.items() if not c.is_zero()}
        if len(unknown) != 1:
            return False
        (base, coefficient), = unknown.items()
        self._values[base] = rhs / coefficient
        return True

    def value(self, t: TorusExponent) -> Scalar:
        if not t.is_dominant():
            return self.params.field.zero
        base, k = normal_form(t)
        if base not in self._values:
            self.solve(height(base))
        return self._values[base] * self._chi ** k


def cs_recursion_oracle(params: HeckeParams, t: TorusExponent, bound: int = 3) -> Scalar:
    """w_sph(t) from the Hecke recursion; raises UnderdeterminedSystem when it cannot close."""
    if max(abs(t.e1), abs(t.e2), abs(t.e0)) > bound:
        raise UnderdeterminedSystem(f"{t} exceeds the configured bound {bound}")
    return RecursionOracle(params, bound).value(t)


def cross_path_table(params: HeckeParams,
                     bound: int = 3) -> List[Tuple[TorusExponent, Scalar, Scalar]]:
    """(t, closed form, recursion) for every t in the box |e_i| <= bound."""
    oracle = RecursionOracle(params, bound)
    rows = []
    for e1 in range(-bound, bound + 1):
        for e2 in range(-bound, bound + 1):
            for e0 in range(-bound, bound + 1):
                t = TorusExponent(e1, e2, e0)
                rows.append((t, cs_value_gsp4(params, t), oracle.value(t)))
    return rows


def eigenvalue_readback(params: HeckeParams) -> Dict[str, Scalar]:
    """
    Apply the T1 and T2 coset sums to the closed-form values at the identity.

    The results are the normalised eigenvalues; T1 gives alpha+beta+gamma+delta.
    """
    F = params.field
    out = {}
    for name in EIGEN_OPERATORS:
        op = OPERATORS.get(name)
        total = F.zero
        origin = TorusExponent(0, 0, 0)
        for term, count in coset_terms(name, params.p):
            weight = term.weight(origin, params.p) * count
            if weight:
                total = total + cs_value_gsp4(params, term.torus) * weight
        out[name] = total * F.sqrt_p_power(op.unitary_power(params.r1, params.r2))
    return out
