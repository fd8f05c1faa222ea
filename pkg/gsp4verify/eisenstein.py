"""
q-expansions of Eisenstein series attached to Schwartz data, the GL2
operators acting on them, and the p-adic families they sit in.

Schwartz data are factorizable: a Phi' table at p (a SchwartzFunction),
finitely many tame tables at primes l != p, and ch(Z_l x Z_l) everywhere
else. Coefficients are divisor sums over pairs (u, v) of rationals with
uv = n.

Usage:
    from gsp4verify.eisenstein import EisensteinDatum, eisenstein_F

    datum = EisensteinDatum.spherical(5)
    eisenstein_F(2, datum, 10).coefficient(6)   # 504
"""

from dataclasses import dataclass, field as dataclass_field, replace
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import factorint, multiplicity

from .algebra import Scalar, scalar_field
from .errors import (
    CharacterConductorMismatch,
    InvariantViolation,
    TruncationTooShort,
    UnknownOperator,
    UnsupportedLocalDatum,
    WeightZeroSupport,
)
from .log import get_logger
from .schwartz import SchwartzFunction, UnitCharacter, named_schwartz

log = get_logger("eisenstein")


# ============================================================================
# Schwartz data
# ============================================================================

@dataclass(frozen=True)
class TameDatum:
    """Local Phi'_l tables at finitely many l != p; spherical elsewhere."""
    tables: Tuple[Tuple[int, SchwartzFunction], ...] = ()

    @classmethod
    def spherical(cls) -> "TameDatum":
        return cls(())

    @classmethod
    def from_tables(cls, tables: Dict[int, SchwartzFunction]) -> "TameDatum":
        for ell, table in tables.items():
            if table.p != ell:
                raise InvariantViolation(f"Table stored at l={ell} lives at p={table.p}")
            for _, coeff in table.cells:
                if not coeff.is_rational():
                    raise UnsupportedLocalDatum(f"Tame table at l={ell} must be Q-valued")
        return cls(tuple(sorted(tables.items(), key=lambda item: item[0])))

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(ell for ell, _ in self.tables)

    def local(self, ell: int) -> Optional[SchwartzFunction]:
        return dict(self.tables).get(ell)

    def value(self, u: Fraction, v: Fraction) -> Fraction:
        """prod over stored l of Phi'_l(u, v); integrality elsewhere is enforced by enumeration."""
        total = Fraction(1)
        for _, table in self.tables:
            total *= table.evaluate(u, v).to_fraction()
            if total == 0:
                break
        return total

    def diamond_value(self, p: int) -> Fraction:
        """
        The scalar by which <p> acts: Phi'_l(u/p, pv) = c_l Phi'_l(u, v) at every l.

        Raises:
            UnsupportedLocalDatum: the cells of a table carry different characters
        """
        total = Fraction(1)
        for ell, table in self.tables:
            pairs = {(cell.mu, cell.nu) for cell, _ in table.cells}
            if len(pairs) > 1:
                raise UnsupportedLocalDatum(f"Tame table at l={ell} is not a <p>-eigenvector")
            for mu, nu in pairs:
                total *= Fraction(mu.value(Fraction(1, p)) * nu.value(p))
        return total

    def is_spherical_at(self, ell: int) -> bool:
        return self.local(ell) is None


@dataclass(frozen=True)
class EisensteinDatum:
    """Phi' = Phi'_p x tame part."""
    at_p: SchwartzFunction
    tame: TameDatum = dataclass_field(default_factory=TameDatum.spherical)

    @classmethod
    def spherical(cls, p: int) -> "EisensteinDatum":
        return cls(named_schwartz("sph", p))

    @classmethod
    def named(cls, tag: str, p: int, tame: Optional[TameDatum] = None,
              mu: Optional[UnitCharacter] = None,
              nu: Optional[UnitCharacter] = None) -> "EisensteinDatum":
        return cls(named_schwartz(tag, p, mu, nu), tame or TameDatum.spherical())

    @property
    def p(self) -> int:
        return self.at_p.p

    def phi_at_origin(self) -> Scalar:
        """Phi(0, 0), the product of the local inverse transforms at the origin."""
        value = self.at_p.fourier_value_at_origin()
        for _, table in self.tame.tables:
            value = value * table.fourier_value_at_origin().to_fraction()
        return value

    def value(self, u: Fraction, v: Fraction) -> Scalar:
        tame = self.tame.value(u, v)
        if tame == 0:
            return self.at_p.field.zero
        return self.at_p.evaluate(u, v) * tame


def factor_pairs(n: int, datum: EisensteinDatum) -> Iterator[Tuple[Fraction, Fraction]]:
    """
    All (u, v) in Q^2 with uv = n whose valuations the local tables allow.

    Both signs are produced: (u, v) and (-u, -v).
    """
    primes = set(factorint(n)) | set(datum.tame.primes) | {datum.p}
    ranges: List[List[Tuple[int, int]]] = []
    for ell in sorted(primes):
        table = datum.at_p if ell == datum.p else datum.tame.local(ell)
        if table is not None and not table.cells:
            return
        low_x, low_y = table.min_depths() if table is not None else (0, 0)
        top = multiplicity(ell, n) - low_y
        ranges.append([(ell, a) for a in range(low_x, top + 1)])
    for choice in product(*ranges):
        u = Fraction(1)
        for ell, a in choice:
            u *= Fraction(ell) ** a
        v = Fraction(n) / u
        yield u, v
        yield -u, -v


# ============================================================================
# q-expansions
# ============================================================================

@dataclass(frozen=True)
class QExpansion:
    """
    a_0 + sum_{1 <= n <= N} a_n q^n.

    constant is None when the constant term is left unspecified; it then
    prints as the opaque symbol a0.
    """
    p: int
    weight: int
    coefficients: Tuple[Scalar, ...]
    constant: Optional[Scalar] = None
    label: str = ""

    @property
    def truncation(self) -> int:
        return len(self.coefficients)

    @property
    def field(self):
        return scalar_field(self.p)

    def coefficient(self, n: int) -> Scalar:
        if n < 1 or n > self.truncation:
            raise TruncationTooShort(f"Coefficient {n} outside 1..{self.truncation}")
        return self.coefficients[n - 1]

    def truncate(self, N: int) -> "QExpansion":
        if N > self.truncation:
            raise TruncationTooShort(f"Cannot extend truncation {self.truncation} to {N}")
        return replace(self, coefficients=self.coefficients[:N])

    def scale(self, factor) -> "QExpansion":
        factor = self.field(factor)
        constant = None if self.constant is None else self.constant * factor
        return replace(self, coefficients=tuple(c * factor for c in self.coefficients),
                       constant=constant)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if other.p != self.p or other.weight != self.weight:
            raise InvariantViolation("q-expansions of different weights or primes")
        N = min(self.truncation, other.truncation)
        constant = None
        if self.constant is not None and other.constant is not None:
            constant = self.constant + other.constant
        return replace(
            self,
            coefficients=tuple(self.coefficient(n) + other.coefficient(n) for n in range(1, N + 1)),
            constant=constant,
        )

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + other.scale(-1)

    def agrees_with(self, other: "QExpansion", N: Optional[int] = None) -> bool:
        """Coefficientwise equality on 1..N (default: the common truncation)."""
        N = min(self.truncation, other.truncation) if N is None else N
        return all(self.coefficient(n) == other.coefficient(n) for n in range(1, N + 1))

    def rows(self) -> List[Tuple[int, str]]:
        constant = "a0" if self.constant is None else str(self.constant)
        return [(0, constant)] + [(n, str(c)) for n, c in enumerate(self.coefficients, 1)]


def eisenstein_F(k: int, datum: EisensteinDatum, N: int) -> QExpansion:
    """
    F^{k+2}_Phi with a_n = sum_{uv=n} u^(k+1) sgn(u) Phi'(u, v).

    Raises:
        WeightZeroSupport: k = 0 while Phi(0, 0) != 0
    """
    if k < 0:
        raise InvariantViolation(f"Weight parameter k must be >= 0, got {k}")
    if k == 0 and not datum.phi_at_origin().is_zero():
        raise WeightZeroSupport("k = 0 needs Phi(0, 0) = 0")
    F = datum.at_p.field
    coefficients = []
    for n in range(1, N + 1):
        total = F.zero
        for u, v in factor_pairs(n, datum):
            value = datum.value(u, v)
            if not value.is_zero():
                sign = 1 if u > 0 else -1
                total = total + value * (u ** (k + 1) * sign)
        coefficients.append(total)
    log.debug("Built F", k=k, N=N, p=datum.p)
    return QExpansion(datum.p, k + 2, tuple(coefficients), None, f"F^{k + 2}")


def _local_type(at_p: SchwartzFunction) -> Tuple[str, UnitCharacter, UnitCharacter]:
    """Recognise Phi'_p as dep(mu, nu) or crit(nu)."""
    if len(at_p.cells) != 1:
        raise UnsupportedLocalDatum("E^-k is constructed for Phi_dep and Phi_crit only")
    cell, coeff = at_p.cells[0]
    if coeff != 1:
        raise UnsupportedLocalDatum("E^-k is constructed for Phi_dep and Phi_crit only")
    candidates = [("dep", named_schwartz("dep", at_p.p, cell.mu, cell.nu))]
    if cell.mu.is_trivial():
        candidates.append(("crit", named_schwartz("crit", at_p.p, None, cell.nu)))
    for tag, table in candidates:
        if table == at_p:
            return tag, cell.mu, cell.nu
    raise UnsupportedLocalDatum("E^-k is constructed for Phi_dep and Phi_crit only")


def eisenstein_E_padic(k: int, datum: EisensteinDatum, N: int) -> QExpansion:
    """
    E^-k_Phi with a_n = sum_{uv=n} v^(-1-k) sgn(u) Phi'(u, v).

    The constant term is 0 for Phi_dep (the series is p-adically cuspidal)
    and unspecified for Phi_crit.

    Raises:
        UnsupportedLocalDatum: Phi_p is neither dep nor crit
    """
    if k < 0:
        raise InvariantViolation(f"Weight parameter k must be >= 0, got {k}")
    tag, _, _ = _local_type(datum.at_p)
    F = datum.at_p.field
    coefficients = []
    for n in range(1, N + 1):
        total = F.zero
        for u, v in factor_pairs(n, datum):
            value = datum.value(u, v)
            if not value.is_zero():
                sign = 1 if u > 0 else -1
                total = total + value * (v ** (-1 - k) * sign)
        coefficients.append(total)
    constant = F.zero if tag == "dep" else None
    return QExpansion(datum.p, -k, tuple(coefficients), constant, f"E^-{k}_{tag}")


# ============================================================================
# Operators on q-expansions
# ============================================================================

def U_p(f: QExpansion) -> QExpansion:
    """a_n -> a_(np); the truncation shrinks to N // p."""
    N = f.truncation // f.p
    if N < 1:
        raise TruncationTooShort(f"U_p needs at least {f.p} coefficients")
    return replace(f, coefficients=tuple(f.coefficient(n * f.p) for n in range(1, N + 1)))


def V_p(f: QExpansion) -> QExpansion:
    """a_n -> a_(n/p), zero when p does not divide n."""
    zero = f.field.zero
    coefficients = tuple(
        f.coefficient(n // f.p) if n % f.p == 0 else zero
        for n in range(1, f.truncation + 1)
    )
    return replace(f, coefficients=coefficients)


def theta(f: QExpansion) -> QExpansion:
    """a_n -> n a_n; weight goes up by 2 and the constant term dies."""
    coefficients = tuple(c * n for n, c in enumerate(f.coefficients, 1))
    return replace(f, weight=f.weight + 2, coefficients=coefficients, constant=f.field.zero)


def diamond(f: QExpansion, datum: EisensteinDatum, inverse: bool = False) -> QExpansion:
    """<p> acts on the series of datum by the tame character values at p."""
    value = datum.tame.diamond_value(f.p)
    return f.scale(1 / value if inverse else value)


def T_ell(f: QExpansion, ell: int, nebentypus=1) -> QExpansion:
    """
    a_n -> a_(n l) + eps(l) l^(weight-1) a_(n/l) for a prime l != p.

    Raises:
        UnsupportedLocalDatum: l = p
        TruncationTooShort: fewer than l coefficients
    """
    if ell == f.p:
        raise UnsupportedLocalDatum("T_l is for primes away from p; use U_p at p")
    N = f.truncation // ell
    if N < 1:
        raise TruncationTooShort(f"T_{ell} needs at least {ell} coefficients")
    F = f.field
    twist = F(nebentypus) * F(Fraction(ell) ** (f.weight - 1))
    coefficients = []
    for n in range(1, N + 1):
        value = f.coefficient(n * ell)
        if n % ell == 0:
            value = value + twist * f.coefficient(n // ell)
        coefficients.append(value)
    return replace(f, coefficients=tuple(coefficients))


QEXP_OPERATORS = ("U_p", "V_p", "diamond", "theta")


def qexp_operator(op: str, f: QExpansion, datum: Optional[EisensteinDatum] = None) -> QExpansion:
    """
    Apply a named operator; diamond needs the Schwartz datum the series came from.

    Raises:
        UnknownOperator: op not in QEXP_OPERATORS
    """
    if op == "U_p":
        return U_p(f)
    if op == "V_p":
        return V_p(f)
    if op == "theta":
        return theta(f)
    if op == "diamond":
        return diamond(f, datum or EisensteinDatum.spherical(f.p))
    raise UnknownOperator(f"Unknown q-expansion operator {op!r}; expected one of {QEXP_OPERATORS}")


def depletion(f: QExpansion, datum: EisensteinDatum, k: int) -> QExpansion:
    """(1 - p^(k+1) <p>^-1 V_p) f."""
    shifted = diamond(V_p(f), datum, inverse=True).scale(f.field.p_power(k + 1))
    return f - shifted


# ============================================================================
# Families
# ============================================================================

TWO_PARAM = "two_param"
ONE_PARAM_CRITICAL = "one_param_critical"


@dataclass(frozen=True)
class WeightCharacter:
    """x -> x^integer * chi(x) on p-adic units, chi of finite order."""
    integer: int
    character: Optional[UnitCharacter] = None

    def evaluate(self, x: Fraction, p: int) -> Fraction:
        if self.character is not None and self.character.p != p:
            raise CharacterConductorMismatch(
                f"Character at p={self.character.p} used in a family at p={p}"
            )
        value = Fraction(x) ** self.integer
        if self.character is not None:
            value *= self.character.value(x)
        return value


@dataclass(frozen=True)
class FamilySpec:
    """
    two_param: sum sgn(u) u^k1 v^k2 Phi'(p)(u, v) q^uv over p-units u, v.
    one_param_critical: sum sgn(u) u^ell v^k Phi'(p)(u, v) q^uv, u p-integral, v a p-unit.
    """
    p: int
    kind: str
    tame: TameDatum = dataclass_field(default_factory=TameDatum.spherical)
    ell: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (TWO_PARAM, ONE_PARAM_CRITICAL):
            raise InvariantViolation(f"Unknown family kind {self.kind!r}")
        if self.kind == ONE_PARAM_CRITICAL and (self.ell is None or self.ell < 0):
            raise InvariantViolation("The critical family needs a fixed ell >= 0")

    def datum(self) -> EisensteinDatum:
        tag = "dep" if self.kind == TWO_PARAM else "crit"
        return EisensteinDatum.named(tag, self.p, self.tame)


@dataclass(frozen=True)
class FamilyTerm:
    """weight * u^k1 * v^k2 with the sign and tame value folded into weight."""
    u: Fraction
    v: Fraction
    weight: Fraction


@dataclass(frozen=True)
class FamilyQExpansion:
    spec: FamilySpec
    terms: Tuple[Tuple[FamilyTerm, ...], ...]

    @property
    def truncation(self) -> int:
        return len(self.terms)

    def coefficient_terms(self, n: int) -> Tuple[FamilyTerm, ...]:
        if n < 1 or n > self.truncation:
            raise TruncationTooShort(f"Coefficient {n} outside 1..{self.truncation}")
        return self.terms[n - 1]

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.spec.p,
            "kind": self.spec.kind,
            "ell": self.spec.ell,
            "coefficients": {
                str(n): [[str(t.u), str(t.v), str(t.weight)] for t in terms]
                for n, terms in enumerate(self.terms, 1)
            },
        }


def family_qexp(spec: FamilySpec, N: int) -> FamilyQExpansion:
    """Symbolic coefficients: the (u, v) pairs and their weights, unevaluated."""
    datum = spec.datum()
    table: List[Tuple[FamilyTerm, ...]] = []
    for n in range(1, N + 1):
        terms = []
        for u, v in factor_pairs(n, datum):
            value = datum.value(u, v)
            if value.is_zero():
                continue
            sign = 1 if u > 0 else -1
            terms.append(FamilyTerm(u, v, value.to_fraction() * sign))
        table.append(tuple(terms))
    log.debug("Built family", kind=spec.kind, N=N, p=spec.p)
    return FamilyQExpansion(spec, tuple(table))


def specialize_family(family: FamilyQExpansion, first: WeightCharacter,
                      second: Optional[WeightCharacter] = None) -> QExpansion:
    """
    Evaluate the coefficient symbols at a weight.

    two_param takes (kappa1, kappa2) = (first, second); one_param_critical
    takes kappa = first and uses the fixed ell for u.

    Raises:
        CharacterConductorMismatch: a character at another prime
        UnsupportedLocalDatum: a character with non-rational values
    """
    spec = family.spec
    F = scalar_field(spec.p)
    if spec.kind == TWO_PARAM:
        if second is None:
            raise InvariantViolation("The two-parameter family needs two weights")
        kappa_u, kappa_v = first, second
        weight = first.integer + second.integer + 1
    else:
        kappa_u, kappa_v = WeightCharacter(spec.ell), first
        weight = spec.ell + first.integer + 1
    coefficients = []
    for terms in family.terms:
        total = Fraction(0)
        for term in terms:
            total += (term.weight * kappa_u.evaluate(term.u, spec.p)
                      * kappa_v.evaluate(term.v, spec.p))
        coefficients.append(F(total))
    return QExpansion(spec.p, weight, tuple(coefficients), None, f"{spec.kind}@{weight}")
