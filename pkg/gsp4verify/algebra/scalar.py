"""
Scalar - exact elements of Q(a, b, c)(u) with u^2 = p

Single responsibility: canonical arithmetic on the coefficient field shared by
every computation in the package.

a, b, c stand for the Hecke parameters alpha, beta, gamma; delta is always the
expression b*c/a, so the relation alpha*delta = beta*gamma holds identically.
An element is stored as a pair (x0, x1) meaning x0 + x1*u with x0, x1 in the
sympy fraction field Q(a, b, c) under graded-lex order.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Tuple, Union

from sympy import isprime, multiplicity, sympify
from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.orderings import grlex

from ..errors import DivisionByZero, FieldMismatch, InvariantViolation, IrrationalResidue

# Q(a, b, c): the home of both components
BASE, _A, _B, _C = field("a,b,c", QQ, grlex)

# Q(a, b, c, u) without the relation; only used for the string form
WIDE, _WA, _WB, _WC, _WU = field("a,b,c,u", QQ, grlex)

INDETERMINATES = ("a", "b", "c")

Number = Union[int, Fraction]


def _to_qq(value: Number):
    """Convert an int or Fraction to a QQ domain element."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _poly_value(poly, values: Tuple[Fraction, ...]) -> Fraction:
    """Evaluate a polynomial of BASE.ring at rational values of (a, b, c)."""
    total = Fraction(0)
    for monom, coeff in poly.terms():
        term = Fraction(int(coeff.numerator), int(coeff.denominator))
        for value, exponent in zip(values, monom):
            if exponent:
                term *= value ** exponent
        total += term
    return total


def _frac_value(x, values: Tuple[Fraction, ...]) -> Fraction:
    den = _poly_value(x.denom, values)
    if den == 0:
        raise DivisionByZero(f"Denominator {x.denom} vanishes at {values}")
    return _poly_value(x.numer, values) / den


class Scalar:
    """
    An element x0 + x1*u of Q(a, b, c)(sqrt p).

    Instances are immutable. Equality is canonical: sympy keeps both
    components as reduced fractions, and u never appears past degree 1.
    """

    __slots__ = ("_field", "_x0", "_x1")

    def __init__(self, scalar_field: "ScalarField", x0, x1=None):
        self._field = scalar_field
        self._x0 = x0
        self._x1 = BASE.zero if x1 is None else x1

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def field(self) -> "ScalarField":
        return self._field

    @property
    def p(self) -> int:
        return self._field.p

    @property
    def components(self):
        """The pair (x0, x1) of sympy FracElements."""
        return self._x0, self._x1

    def is_zero(self) -> bool:
        return not self._x0 and not self._x1

    def is_constant(self) -> bool:
        """True when no indeterminate a, b, c occurs (u may occur)."""
        return all(
            part.numer.is_ground and part.denom.is_ground for part in (self._x0, self._x1)
        )

    def is_rational(self) -> bool:
        """True for elements of Q."""
        return self.is_constant() and not self._x1

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other._field.p != self._field.p:
                raise FieldMismatch(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return self._field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self._field, self._x0 + other._x0, self._x1 + other._x1)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self._field, -self._x0, -self._x1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self._field, self._x0 - other._x0, self._x1 - other._x1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._field.p
        x0, x1 = self._x0, self._x1
        y0, y1 = other._x0, other._x1
        return Scalar(self._field, x0 * y0 + p * x1 * y1, x0 * y1 + x1 * y0)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """The Galois conjugate u -> -u."""
        return Scalar(self._field, self._x0, -self._x1)

    def norm(self):
        """x0^2 - p x1^2, an element of Q(a, b, c)."""
        return self._x0 ** 2 - self._field.p * self._x1 ** 2

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("Inverse of the zero Scalar")
        n = self.norm()
        return Scalar(self._field, self._x0 / n, -self._x1 / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self._field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._field(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self._field.p == other._field.p
            and self._x0 == other._x0
            and self._x1 == other._x1
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self._field.p, self._x0, self._x1))

    def __bool__(self):
        return not self.is_zero()

    # ------------------------------------------------------------------
    # Specialization
    # ------------------------------------------------------------------

    def _values(self, assignment: Mapping[str, Number]) -> Tuple[Fraction, ...]:
        if "u" in assignment:
            raise InvariantViolation(f"u^2 = {self.p} has no rational solution; do not assign u")
        missing = [name for name in INDETERMINATES if name not in assignment]
        if missing and not self.is_constant():
            raise InvariantViolation(f"Assignment misses indeterminates {missing}")
        return tuple(Fraction(assignment.get(name, 0)) for name in INDETERMINATES)

    def substitute(self, assignment: Mapping[str, Number]) -> "Scalar":
        """Substitute rationals for a, b, c; the u-part survives."""
        values = self._values(assignment)
        return self._field(_frac_value(self._x0, values)) + self._field(
            _frac_value(self._x1, values)
        ) * self._field.u

    def specialize(self, assignment: Mapping[str, Number]) -> Fraction:
        """
        Exact rational value under a -> .., b -> .., c -> ...

        Raises:
            DivisionByZero: a denominator vanishes
            IrrationalResidue: an odd power of u survives
        """
        values = self._values(assignment)
        x1 = _frac_value(self._x1, values)
        if x1 != 0:
            raise IrrationalResidue(f"u-coefficient {x1} survives specialization")
        return _frac_value(self._x0, values)

    def to_fraction(self) -> Fraction:
        """Value of a rational constant."""
        if not self.is_rational():
            raise IrrationalResidue(f"{self} is not a rational number")
        return self.specialize({})

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_string(self) -> str:
        """Canonical 'num/den' form over Z[a, b, c, u]."""
        ring = WIDE.ring
        u = ring.gens[3]

        def lift(poly):
            return ring.from_dict({monom + (0,): coeff for monom, coeff in poly.terms()})

        n0, d0 = lift(self._x0.numer), lift(self._x0.denom)
        n1, d1 = lift(self._x1.numer), lift(self._x1.denom)
        combined = WIDE.new(n0 * d1 + n1 * d0 * u, d0 * d1)
        return str(combined)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Scalar({self.to_string()}, p={self.p})"


class ScalarField:
    """
    The field Q(a, b, c)(u), u^2 = p, for one concrete prime p.

    Use scalar_field(p) to get the shared instance.
    """

    def __init__(self, p: int):
        if not isprime(p):
            raise InvariantViolation(f"p={p} is not prime")
        self.p = p
        self.zero = Scalar(self, BASE.zero)
        self.one = Scalar(self, BASE.one)
        self.a = Scalar(self, _A)
        self.b = Scalar(self, _B)
        self.c = Scalar(self, _C)
        self.u = Scalar(self, BASE.zero, BASE.one)

    @property
    def delta(self) -> Scalar:
        """The derived fourth parameter b*c/a."""
        return self.b * self.c / self.a

    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.p != self.p:
                raise FieldMismatch(f"p={value.p} vs p={self.p}")
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(self, BASE(_to_qq(value)))
        raise TypeError(f"Cannot build a Scalar from {type(value).__name__}")

    def p_power(self, k: int) -> Scalar:
        """p^k for any integer k."""
        return self(Fraction(self.p) ** k)

    def sqrt_p_power(self, m: int) -> Scalar:
        """p^(m/2) = u^m for any integer m."""
        k, odd = divmod(m, 2)
        value = self.p_power(k)
        return value * self.u if odd else value

    def parse(self, text: str) -> Scalar:
        """Inverse of Scalar.to_string()."""
        try:
            expr = sympify(text)
            frac = WIDE.from_expr(expr)
        except Exception as e:
            raise InvariantViolation(f"Cannot parse Scalar from {text!r}: {e}") from e

        def split(poly) -> Scalar:
            parts: Dict[int, Dict[tuple, object]] = {0: {}, 1: {}}
            for (i, j, k, l), coeff in poly.terms():
                bucket = parts[l % 2]
                key = (i, j, k)
                bucket[key] = bucket.get(key, QQ.zero) + coeff * QQ(self.p ** (l // 2))
            x0 = BASE.new(BASE.ring.from_dict(parts[0]))
            x1 = BASE.new(BASE.ring.from_dict(parts[1]))
            return Scalar(self, x0, x1)

        return split(frac.numer) / split(frac.denom)

    def __eq__(self, other):
        return isinstance(other, ScalarField) and other.p == self.p

    def __hash__(self):
        return hash(("ScalarField", self.p))

    def __repr__(self):
        return f"ScalarField(p={self.p})"


@lru_cache(maxsize=None)
def scalar_field(p: int) -> ScalarField:
    """Shared ScalarField for the prime p."""
    return ScalarField(p)


def scalar_specialize(x: Scalar, assignment: Mapping[str, Number]) -> Fraction:
    """Module-level form of Scalar.specialize."""
    return x.specialize(assignment)


def valuation(value: Number, p: int) -> int:
    """p-adic valuation of a nonzero rational number."""
    value = Fraction(value)
    if value == 0:
        raise ValueError("The valuation of 0 is infinite")
    return multiplicity(p, value.numerator) - multiplicity(p, value.denominator)


def scalar_valuation(x: Scalar) -> Fraction:
    """
    Valuation of a constant Scalar x0 + x1*u, in (1/2)Z.

    The two parts have valuations in different cosets of Z, so the minimum is
    attained by exactly one of them.
    """
    if not x.is_constant():
        raise InvariantViolation(f"{x} is symbolic; valuations need rational values")
    if x.is_zero():
        raise ValueError("The valuation of 0 is infinite")
    origin = (Fraction(0),) * 3
    x0 = _frac_value(x.components[0], origin)
    x1 = _frac_value(x.components[1], origin)
    candidates = []
    if x0:
        candidates.append(Fraction(valuation(x0, x.p)))
    if x1:
        candidates.append(valuation(x1, x.p) + Fraction(1, 2))
    return min(candidates)
