"""
Hecke parameters at p and the scalar constants built from them.

Single responsibility: the quadruple (alpha, beta, gamma, delta) with its
weights, the ordinarity predicates, Euler factors, and the closed-form
constants that the interpolation and test-data formulas are made of.
"""

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import Scalar, ScalarField, scalar_field, scalar_valuation
from .errors import (
    InvariantViolation,
    ParityViolation,
    SymbolicMode,
    VanishingDenominator,
    VanishingEulerFactor,
)
from .log import get_logger

log = get_logger("hecke")

PARAMETER_NAMES = ("alpha", "beta", "gamma", "delta")


@dataclass(frozen=True)
class HeckeParams:
    """
    Hecke parameters of an unramified representation at p.

    delta is never stored: it is beta*gamma/alpha, so alpha*delta = beta*gamma
    holds by construction. The similitude value chi_Pi(p) is likewise derived.
    """
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    r1: int
    r2: int

    def __post_init__(self):
        if not (self.r1 >= self.r2 >= 0):
            raise InvariantViolation(f"Weights need r1 >= r2 >= 0, got ({self.r1}, {self.r2})")
        fields = {x.p for x in (self.alpha, self.beta, self.gamma)}
        if len(fields) != 1:
            raise InvariantViolation(f"Parameters live over different primes {sorted(fields)}")
        for name in ("alpha", "beta", "gamma"):
            if getattr(self, name).is_zero():
                raise InvariantViolation(f"{name} must be nonzero")

    @classmethod
    def symbolic(cls, p: int, r1: int, r2: int) -> "HeckeParams":
        """alpha, beta, gamma as the indeterminates a, b, c."""
        F = scalar_field(p)
        return cls(F.a, F.b, F.c, r1, r2)

    @classmethod
    def rational(cls, p: int, r1: int, r2: int, alpha, beta, gamma,
                 delta=None) -> "HeckeParams":
        """
        Concrete parameters; a supplied delta is checked against beta*gamma/alpha.

        Raises:
            InvariantViolation: alpha*delta != beta*gamma
        """
        F = scalar_field(p)
        params = cls(F(_number(alpha)), F(_number(beta)), F(_number(gamma)), r1, r2)
        if delta is not None and params.delta != F(_number(delta)):
            raise InvariantViolation(
                f"alpha*delta = {params.alpha * F(_number(delta))} differs from "
                f"beta*gamma = {params.beta * params.gamma}"
            )
        return params

    @property
    def field(self) -> ScalarField:
        return self.alpha.field

    @property
    def p(self) -> int:
        return self.alpha.p

    @property
    def delta(self) -> Scalar:
        return self.beta * self.gamma / self.alpha

    @property
    def weight(self) -> int:
        """Motivic weight w = r1 + r2 + 3."""
        return self.r1 + self.r2 + 3

    @property
    def chi_pi(self) -> Scalar:
        """chi_Pi(p) = alpha*delta / p^w."""
        return self.alpha * self.delta / self.field.p_power(self.weight)

    @property
    def mode(self) -> str:
        return "rational" if self.is_rational() else "symbolic"

    def is_rational(self) -> bool:
        return all(x.is_constant() for x in (self.alpha, self.beta, self.gamma))

    def parameters(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return self.alpha, self.beta, self.gamma, self.delta

    def valuations(self) -> Dict[str, Fraction]:
        """p-adic valuations of the four parameters (half-integers allowed)."""
        if not self.is_rational():
            raise SymbolicMode("Valuations need rational parameters")
        return {name: scalar_valuation(x) for name, x in zip(PARAMETER_NAMES, self.parameters())}

    def specialize(self, assignment: Mapping[str, object]) -> "HeckeParams":
        """Substitute rationals for a, b, c."""
        return HeckeParams(
            self.alpha.substitute(assignment),
            self.beta.substitute(assignment),
            self.gamma.substitute(assignment),
            self.r1,
            self.r2,
        )

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            name: str(x) for name, x in zip(PARAMETER_NAMES, self.parameters())
        }
        out.update({"p": self.p, "r1": self.r1, "r2": self.r2, "mode": self.mode})
        return out


@dataclass(frozen=True)
class TwistData:
    """Values at p of unramified characters with chi1 * chi2 = chi_Pi."""
    chi1: Scalar
    chi2: Scalar

    @classmethod
    def from_chi2(cls, params: HeckeParams, chi2=1) -> "TwistData":
        """chi1 is forced by the central character relation."""
        chi2 = params.field(chi2)
        return cls(params.chi_pi / chi2, chi2)

    @classmethod
    def trivial(cls, params: HeckeParams) -> "TwistData":
        return cls.from_chi2(params, 1)

    def check(self, params: HeckeParams) -> "TwistData":
        if self.chi1 * self.chi2 != params.chi_pi:
            raise InvariantViolation("chi1(p) * chi2(p) must equal alpha*delta/p^w")
        return self


@dataclass(frozen=True)
class Ordinarity:
    siegel: bool
    klingen: bool

    @property
    def borel(self) -> bool:
        return self.siegel and self.klingen

    def to_dict(self) -> Dict[str, bool]:
        return {"siegel": self.siegel, "klingen": self.klingen, "borel": self.borel}


@dataclass(frozen=True)
class TrivialZeroReport:
    """Outcome of the +-p^n exclusion; truthy when no parameter is of that form."""
    passed: bool
    offending: Tuple[str, ...]
    valuations: Dict[str, Fraction] = dataclass_field(default_factory=dict)
    bounds: Dict[str, bool] = dataclass_field(default_factory=dict)
    attested: bool = True

    def __bool__(self):
        return self.passed

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "offending": list(self.offending),
            "valuations": {k: str(v) for k, v in self.valuations.items()},
            "bounds": dict(self.bounds),
            "attested": self.attested,
        }


@dataclass(frozen=True)
class SiegelConstants:
    E_sieg: Scalar
    C: Scalar


def _number(value):
    if isinstance(value, (int, Fraction, Scalar)):
        return value
    return Fraction(value)


# ============================================================================
# Ranges
# ============================================================================

def admissible(params: HeckeParams, q: int, r: int) -> bool:
    """0 <= q <= r2, 0 <= r <= r1 - r2 and q + r = r2 mod 2."""
    return (
        0 <= q <= params.r2
        and 0 <= r <= params.r1 - params.r2
        and (q + r - params.r2) % 2 == 0
    )


def require_admissible(params: HeckeParams, q: int, r: int):
    if not admissible(params, q, r):
        raise ParityViolation(
            f"(q, r) = ({q}, {r}) not admissible for (r1, r2) = ({params.r1}, {params.r2})"
        )


def admissible_pairs(params: HeckeParams) -> List[Tuple[int, int]]:
    return [
        (q, r)
        for q in range(params.r2 + 1)
        for r in range(params.r1 - params.r2 + 1)
        if admissible(params, q, r)
    ]


# ============================================================================
# Ordinarity and the trivial-zero check
# ============================================================================

def ordinarity(params: HeckeParams) -> Ordinarity:
    """
    Siegel ordinary: v(alpha) = 0. Klingen ordinary: v(alpha*beta) = r2 + 1.

    Raises:
        SymbolicMode: the parameters are indeterminates
    """
    v = params.valuations()
    return Ordinarity(
        siegel=v["alpha"] == 0,
        klingen=v["alpha"] + v["beta"] == params.r2 + 1,
    )


def klingen_u2_eigenvalues(params: HeckeParams) -> List[Scalar]:
    """U2 on Klingen invariants: alpha*beta, alpha*gamma, beta*delta, gamma*delta over p^(r2+1)."""
    alpha, beta, gamma, delta = params.parameters()
    P = params.field.p_power(params.r2 + 1)
    return [alpha * beta / P, alpha * gamma / P, beta * delta / P, gamma * delta / P]


def klingen_roots(params: HeckeParams) -> List[Scalar]:
    """
    The three U2 eigenvalues removed to isolate alpha*beta/P.

    beta*gamma = alpha*delta is the zero weight of the five-dimensional
    representation and never an eigenvalue on Klingen invariants, so the
    fourth eigenvalue gamma*delta is removed in its place.
    """
    return klingen_u2_eigenvalues(params)[1:]


def _is_signed_p_power(x: Scalar) -> bool:
    if not x.is_rational():
        return False
    value = x.to_fraction()
    n = scalar_valuation(x)
    if n.denominator != 1:
        return False
    return abs(value) == Fraction(x.p) ** int(n)


def trivial_zero_check(params: HeckeParams, attested: bool = True) -> TrivialZeroReport:
    """
    True iff no parameter equals +-p^n.

    The only roots of unity in Q are +-1, so that is the whole test in rational
    mode. The report also carries v(alpha), v(beta) <= r2 + 1 and
    v(gamma), v(delta) >= r1 + 2.
    """
    if not params.is_rational():
        raise SymbolicMode("trivial_zero_check needs rational parameters")
    offending = tuple(
        name for name, x in zip(PARAMETER_NAMES, params.parameters()) if _is_signed_p_power(x)
    )
    v = params.valuations()
    bounds = {
        "alpha": v["alpha"] <= params.r2 + 1,
        "beta": v["beta"] <= params.r2 + 1,
        "gamma": v["gamma"] >= params.r1 + 2,
        "delta": v["delta"] >= params.r1 + 2,
    }
    if offending:
        log.debug("Trivial-zero exclusion fails", offending=offending, p=params.p)
    return TrivialZeroReport(not offending, offending, v, bounds, attested)


# ============================================================================
# Euler factors
# ============================================================================

def _four_factor(F: ScalarField, alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar,
                 n: int) -> Scalar:
    pn = F.p_power(n)
    pn1 = F.p_power(n + 1)
    return (1 - pn / alpha) * (1 - pn / beta) * (1 - gamma / pn1) * (1 - delta / pn1)


def euler_factor_E(params: HeckeParams, n: int) -> Scalar:
    """(1 - p^n/alpha)(1 - p^n/beta)(1 - gamma/p^(n+1))(1 - delta/p^(n+1))."""
    return _four_factor(params.field, *params.parameters(), n)


def euler_factor_E_twisted(params: HeckeParams, twist: TwistData, m: int) -> Scalar:
    """The same product for the parameters of pi x chi2^-1, i.e. divided by chi2(p)."""
    scale = twist.chi2.inverse()
    twisted = [x * scale for x in params.parameters()]
    return _four_factor(params.field, *twisted, m)


# ============================================================================
# Assembled constants
# ============================================================================

def _signed_factorial_prefactor(params: HeckeParams, q: int) -> int:
    """(-2)^q (-1)^(r2-q+1) (r2-q)!."""
    return (-2) ** q * (-1) ** (params.r2 - q + 1) * factorial(params.r2 - q)


def theorem_A_constant(params: HeckeParams, q: int, r: int) -> Scalar:
    """
    (-2)^q (-1)^(r2-q+1) (r2-q)! / (E(q) E(r2+1+r)).

    Raises:
        ParityViolation: (q, r) not admissible
        VanishingEulerFactor: one of the two Euler factors is zero
    """
    require_admissible(params, q, r)
    euler_q = euler_factor_E(params, q)
    euler_r = euler_factor_E(params, params.r2 + 1 + r)
    for label, value in (("E(q)", euler_q), ("E(r2+1+r)", euler_r)):
        if value.is_zero():
            raise VanishingEulerFactor(f"{label} vanishes for (q, r) = ({q}, {r})")
    return params.field(_signed_factorial_prefactor(params, q)) / (euler_q * euler_r)


def klingen_denominator(params: HeckeParams, q: int) -> Scalar:
    pq1 = params.field.p_power(1 + q)
    return (1 - params.gamma / pq1) * (1 - params.delta / pq1)


def klingen_testdata_value(params: HeckeParams, q: int, r: int) -> Scalar:
    """
    E(q) E(r2+1+r) / ((1 - gamma/p^(1+q))(1 - delta/p^(1+q))).

    Raises:
        ParityViolation: (q, r) not admissible
        VanishingDenominator: the denominator is zero
    """
    require_admissible(params, q, r)
    den = klingen_denominator(params, q)
    if den.is_zero():
        raise VanishingDenominator(f"(1 - gamma/p^(1+q))(1 - delta/p^(1+q)) = 0 at q={q}")
    return euler_factor_E(params, q) * euler_factor_E(params, params.r2 + 1 + r) / den


def siegel_euler_factor(params: HeckeParams, q: int, r: int, n: int = 0) -> Scalar:
    """Six-factor E_Sieg(Pi(n), q, r); n shifts r2 in the last two factors."""
    F = params.field
    alpha, beta, gamma, delta = params.parameters()
    pq1 = F.p_power(1 + q)
    shift = params.r2 + n + r
    return (
        (1 - F.p_power(q) / alpha)
        * (1 - beta / pq1)
        * (1 - gamma / pq1)
        * (1 - delta / pq1)
        * (1 - F.p_power(shift + 1) / alpha)
        * (1 - delta / F.p_power(shift + 2))
    )


def siegel_euler_and_Cnq(params: HeckeParams, q: int, r: int, n: int, c1: int,
                         c2: int) -> SiegelConstants:
    """
    E_Sieg(Pi(n), q, r) and
    C = (c1^2 - c1^-(t1+n)) (c2^2 - c2^-(t2+n)) E_Sieg / (-2)^q,
    with t1 = r1 - q - r and t2 = r2 - q + r.
    """
    if c1 <= 1 or c2 <= 1:
        raise InvariantViolation(f"c1, c2 must exceed 1, got ({c1}, {c2})")
    if n < 0:
        raise InvariantViolation(f"Shift n must be non-negative, got {n}")
    F = params.field
    t1 = params.r1 - q - r
    t2 = params.r2 - q + r
    e_sieg = siegel_euler_factor(params, q, r, n)
    c_factor = (Fraction(c1) ** 2 - Fraction(c1) ** -(t1 + n)) * (
        Fraction(c2) ** 2 - Fraction(c2) ** -(t2 + n)
    )
    C = F(c_factor) * e_sieg / F(Fraction(-2) ** q)
    return SiegelConstants(e_sieg, C)


def constants_report(params: HeckeParams, q: int, r: int, c1: int = 7, c2: int = 7,
                     shifts: Optional[int] = None) -> Dict[str, object]:
    """Everything the constants subcommand prints, as canonical strings."""
    siegel = siegel_euler_and_Cnq(params, q, r, 0, c1, c2)
    report: Dict[str, object] = {
        "params": params.to_dict(),
        "q": q,
        "r": r,
        "euler_q": str(euler_factor_E(params, q)),
        "euler_r": str(euler_factor_E(params, params.r2 + 1 + r)),
        "star": str(theorem_A_constant(params, q, r)),
        "klingen_zeta": str(klingen_testdata_value(params, q, r)),
        "E_sieg": str(siegel.E_sieg),
        "C_nq": str(siegel.C),
    }
    if shifts:
        report["E_sieg_shifted"] = {
            str(n): str(siegel_euler_factor(params, q, r, n)) for n in range(shifts + 1)
        }
    return report
