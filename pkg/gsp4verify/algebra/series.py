"""
Truncated power series and closed-form geometric sums over Scalars.

Single responsibility: the generating-function plumbing behind the zeta
integrals (torus sums and the shift relation F_{Uw}(X) = (F_w(X) - F_w(0))/X).
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Sequence, Tuple

from ..errors import InvariantViolation, PoleAtOne, TruncationTooShort
from ..log import get_logger
from .scalar import Scalar, ScalarField

log = get_logger("algebra")


@dataclass(frozen=True)
class TruncatedSeries:
    """
    A power series sum_{n <= order} coeffs[n] X^n.

    Absent degrees are zero; degrees above the truncation order are never
    stored.
    """
    scalar_field: ScalarField
    order: int
    coeffs: Dict[int, Scalar] = dataclass_field(default_factory=dict)
    variable: str = "X"

    def __post_init__(self):
        for degree in self.coeffs:
            if degree < 0 or degree > self.order:
                raise InvariantViolation(f"Degree {degree} outside 0..{self.order}")

    @classmethod
    def from_list(cls, scalar_field: ScalarField, values: Sequence, order: int = None,
                  variable: str = "X") -> "TruncatedSeries":
        """Build from a dense list c_0, c_1, ...; trailing entries past order are dropped."""
        order = len(values) - 1 if order is None else order
        coeffs = {}
        for n, value in enumerate(values[: order + 1]):
            value = scalar_field(value)
            if not value.is_zero():
                coeffs[n] = value
        return cls(scalar_field, order, coeffs, variable)

    @classmethod
    def from_rational(cls, numerator: Sequence, denominator: Sequence, order: int,
                      scalar_field: ScalarField, variable: str = "X") -> "TruncatedSeries":
        """
        Expand P(X)/Q(X) to the given order.

        Args:
            numerator: coefficients of P, constant term first
            denominator: coefficients of Q; Q(0) must be invertible
        """
        num = [scalar_field(x) for x in numerator]
        den = [scalar_field(x) for x in denominator]
        lead_inverse = den[0].inverse()
        out: List[Scalar] = []
        for n in range(order + 1):
            acc = num[n] if n < len(num) else scalar_field.zero
            for k in range(1, min(n, len(den) - 1) + 1):
                acc = acc - den[k] * out[n - k]
            out.append(acc * lead_inverse)
        return cls.from_list(scalar_field, out, order, variable)

    def coefficient(self, n: int) -> Scalar:
        if n > self.order:
            raise TruncationTooShort(f"Degree {n} beyond truncation {self.order}")
        return self.coeffs.get(n, self.scalar_field.zero)

    def dense(self) -> List[Scalar]:
        return [self.coefficient(n) for n in range(self.order + 1)]

    def truncate(self, order: int) -> "TruncatedSeries":
        order = min(order, self.order)
        return TruncatedSeries(
            self.scalar_field, order,
            {n: c for n, c in self.coeffs.items() if n <= order}, self.variable,
        )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        values = [self.coefficient(n) + other.coefficient(n) for n in range(order + 1)]
        return TruncatedSeries.from_list(self.scalar_field, values, order, self.variable)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def scale(self, factor) -> "TruncatedSeries":
        factor = self.scalar_field(factor)
        return TruncatedSeries.from_list(
            self.scalar_field, [c * factor for c in self.dense()], self.order, self.variable
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        zero = self.scalar_field.zero
        values = [zero] * (order + 1)
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                if i + j <= order:
                    values[i + j] = values[i + j] + x * y
        return TruncatedSeries.from_list(self.scalar_field, values, order, self.variable)

    def evaluate_partial(self, x) -> Scalar:
        """Value of the stored polynomial part at X = x."""
        x = self.scalar_field(x)
        total = self.scalar_field.zero
        for n, c in self.coeffs.items():
            total = total + c * x ** n
        return total

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.dense() == other.dense()

    def __repr__(self):
        shown = ", ".join(f"{n}: {c}" for n, c in sorted(self.coeffs.items())[:4])
        return f"TruncatedSeries(order={self.order}, {{{shown}}})"


@dataclass(frozen=True)
class GeometricSpec:
    """c_n = sum_j A_j * lambda_j^n, stored as (amplitude, ratio) pairs."""
    terms: Tuple[Tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        for _, ratio in self.terms:
            if ratio.is_zero():
                raise InvariantViolation("Geometric ratios must be nonzero")

    def coefficient(self, n: int) -> Scalar:
        scalar_field = self.terms[0][0].field
        total = scalar_field.zero
        for amplitude, ratio in self.terms:
            total = total + amplitude * ratio ** n
        return total

    def expand(self, order: int, variable: str = "X") -> TruncatedSeries:
        """The series sum_n c_n X^n truncated at order."""
        scalar_field = self.terms[0][0].field
        return TruncatedSeries.from_list(
            scalar_field, [self.coefficient(n) for n in range(order + 1)], order, variable
        )


def geometric_sum(spec: GeometricSpec) -> Scalar:
    """
    Closed form of sum_{n >= 0} sum_j A_j lambda_j^n, i.e. sum_j A_j / (1 - lambda_j).

    Raises:
        PoleAtOne: some lambda_j equals 1
    """
    if not spec.terms:
        raise InvariantViolation("Empty geometric specification")
    total = spec.terms[0][0].field.zero
    for amplitude, ratio in spec.terms:
        gap = 1 - ratio
        if gap.is_zero():
            raise PoleAtOne(f"Ratio {ratio} equals 1")
        total = total + amplitude / gap
    return total


def series_shift_divide(series: TruncatedSeries) -> TruncatedSeries:
    """(F - F(0)) / X, truncated one degree lower."""
    if series.order < 1:
        raise TruncationTooShort("Shift-divide needs a series truncated at order >= 1")
    coeffs = {n - 1: c for n, c in series.coeffs.items() if n >= 1}
    return TruncatedSeries(series.scalar_field, series.order - 1, coeffs, series.variable)
