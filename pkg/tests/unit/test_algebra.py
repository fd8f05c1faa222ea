#!/usr/bin/env python3
"""
Tests for the exact algebra layer: Scalars, series and small matrices.
"""

from fractions import Fraction

import pytest

from gsp4verify.algebra import (
    GeometricSpec,
    TruncatedSeries,
    charpoly,
    geometric_sum,
    polynomial_from_roots,
    scalar_field,
    scalar_valuation,
    series_shift_divide,
    smat_diagonal,
    valuation,
)
from gsp4verify.algebra.scalar import ScalarField
from gsp4verify.errors import (
    DivisionByZero,
    FieldMismatch,
    InvariantViolation,
    IrrationalResidue,
    PoleAtOne,
    TruncationTooShort,
)


@pytest.fixture
def F():
    """The coefficient field at p = 3."""
    return scalar_field(3)


def test_u_squares_to_p(F):
    """u*u is the integer p."""
    assert F.u * F.u == 3
    assert F.sqrt_p_power(3) == 3 * F.u
    assert F.sqrt_p_power(-2) == Fraction(1, 3)


def test_delta_relation_is_identity(F):
    """a * delta equals b * c without any simplification by hand."""
    assert F.a * F.delta == F.b * F.c


def test_inverse_in_quadratic_extension(F):
    """Inverses go through the norm x0^2 - p x1^2."""
    x = 1 + F.u
    assert x * x.inverse() == 1
    assert (F.a + F.u) / (F.a + F.u) == F.one


def test_zero_has_no_inverse(F):
    with pytest.raises(DivisionByZero):
        F.zero.inverse()


def test_mixed_primes_rejected(F):
    """Scalars over different primes never combine."""
    with pytest.raises(FieldMismatch):
        F.one + scalar_field(5).one


def test_non_prime_field_rejected():
    with pytest.raises(InvariantViolation):
        ScalarField(4)


def test_specialize_rational(F):
    """Substituting a, b, c gives the exact rational value."""
    x = (F.a + F.b) / F.c
    assert x.specialize({"a": 1, "b": 2, "c": 4}) == Fraction(3, 4)


def test_specialize_leaves_u_residue(F):
    """An odd power of u cannot specialize to a rational."""
    with pytest.raises(IrrationalResidue):
        (F.a * F.u).specialize({"a": 1, "b": 1, "c": 1})


def test_specialize_vanishing_denominator(F):
    with pytest.raises(DivisionByZero):
        (F.one / F.a).specialize({"a": 0, "b": 1, "c": 1})


def test_specialize_refuses_u_assignment(F):
    with pytest.raises(InvariantViolation):
        F.a.specialize({"a": 1, "b": 1, "c": 1, "u": 2})


def test_substitute_keeps_u(F):
    """substitute only touches a, b, c."""
    x = (F.a + F.u).substitute({"a": 2, "b": 0, "c": 0})
    assert x == 2 + F.u


def test_parse_inverts_to_string(F):
    """Canonical strings parse back to the same element."""
    x = (F.a * F.u + F.b ** 2) / (F.c - 2)
    assert F.parse(x.to_string()) == x


def test_parse_rejects_garbage(F):
    with pytest.raises(InvariantViolation):
        F.parse("a +* b")


def test_valuations(F):
    """Rational valuations and half-integral ones on u."""
    assert valuation(12, 2) == 2
    assert valuation(Fraction(1, 9), 3) == -2
    assert scalar_valuation(3 * F.u) == Fraction(3, 2)
    assert scalar_valuation(F(18)) == 2


def test_valuation_of_symbolic_rejected(F):
    with pytest.raises(InvariantViolation):
        scalar_valuation(F.a)


def test_geometric_series_expansion(F):
    """1/(1 - X) has all coefficients 1."""
    series = TruncatedSeries.from_rational([1], [1, -1], 4, F)
    assert series.dense() == [F.one] * 5


def test_series_truncation_guard(F):
    series = TruncatedSeries.from_list(F, [1, 2, 3])
    with pytest.raises(TruncationTooShort):
        series.coefficient(3)


def test_shift_divide(F):
    """(F - F(0))/X drops the constant term and one degree."""
    series = TruncatedSeries.from_list(F, [1, 2, 3])
    shifted = series_shift_divide(series)
    assert shifted.order == 1
    assert shifted.dense() == [F(2), F(3)]


def test_series_product(F):
    """(1 + X)^2 = 1 + 2X + X^2."""
    one_plus_x = TruncatedSeries.from_list(F, [1, 1, 0])
    assert (one_plus_x * one_plus_x).dense() == [F(1), F(2), F(1)]


def test_geometric_sum_closed_form(F):
    """sum (1/2)^n = 2 and the pole at ratio 1 is refused."""
    half = GeometricSpec(((F.one, F(Fraction(1, 2))),))
    assert geometric_sum(half) == 2
    assert half.expand(2).dense() == [F(1), F(Fraction(1, 2)), F(Fraction(1, 4))]
    with pytest.raises(PoleAtOne):
        geometric_sum(GeometricSpec(((F.one, F.one),)))


def test_charpoly_matches_roots(F):
    """Faddeev-LeVerrier agrees with the product over the eigenvalues."""
    roots = [F(1), F(2), F.a]
    assert charpoly(smat_diagonal(roots)) == polynomial_from_roots(roots)
    assert polynomial_from_roots([F(1), F(2)]) == [F(2), F(-3), F(1)]
