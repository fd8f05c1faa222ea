#!/usr/bin/env python3
"""
Tests for unit characters, Schwartz tables, their operators and Whittaker values.
"""

from fractions import Fraction

import pytest

from gsp4verify.algebra import scalar_field
from gsp4verify.errors import (
    CharacterConductorMismatch,
    UnknownOperator,
    UnsupportedLocalDatum,
    UnsupportedTag,
)
from gsp4verify.schwartz import (
    U_p,
    UnitCharacter,
    crit_depletion,
    diamond_p,
    diamond_p_inverse,
    named_schwartz,
    one_minus_phi,
    partial_fourier,
    phi,
    schwartz_operator,
    section_whittaker_value,
    unit_average,
    unit_group_order,
    unit_residues,
)


P = 3


@pytest.fixture
def quadratic():
    return UnitCharacter.quadratic(P)


def test_unit_group():
    assert unit_group_order(2) == 2
    assert unit_group_order(3) == 6
    assert unit_residues(3) == [1, 2, 4, 5, 7, 8]


def test_quadratic_character(quadratic):
    """The Legendre symbol mod 3, seen on (Z/9)^x."""
    assert quadratic.order == 2
    assert quadratic.conductor == 1
    assert quadratic.sign() == -1
    assert quadratic.value(2) == -1
    assert quadratic.value(4) == 1
    assert quadratic.value(Fraction(1, 2)) == -1


def test_character_group_law(quadratic):
    assert (quadratic * quadratic).is_trivial()
    assert quadratic.inverse() == quadratic
    assert UnitCharacter.trivial(P).conductor == 0


def test_non_rational_values_refused():
    with pytest.raises(UnsupportedLocalDatum):
        UnitCharacter(P, 1).value(2)


def test_from_table():
    trivial = {x: 0 for x in unit_residues(P)}
    assert UnitCharacter.from_table(P, trivial).is_trivial()
    with pytest.raises(CharacterConductorMismatch):
        UnitCharacter.from_table(P, {2: 1, 4: 0})


def test_orthogonality(quadratic):
    """The mean of a character over Z_p^x is 1 or 0."""
    assert unit_average([]) == 1
    assert unit_average([quadratic, quadratic]) == 1
    assert unit_average([quadratic]) == 0
    assert unit_average([UnitCharacter(P, 1)]) == 0


def test_named_tags():
    with pytest.raises(UnsupportedTag):
        named_schwartz("paramodular", P)
    with pytest.raises(UnsupportedTag):
        named_schwartz("sph", P, nu=UnitCharacter.quadratic(P))


def test_pointwise_values():
    crit = named_schwartz("crit", P)
    assert crit.evaluate(3, 1) == 1
    assert crit.evaluate(1, 3) == 0
    assert named_schwartz("dep", P).evaluate(0, 1) == 0


def test_value_at_origin_of_fourier_side():
    """Phi(0, 0) is the integral of Phi'(0, v)."""
    F = scalar_field(P)
    assert named_schwartz("sph", P).fourier_value_at_origin() == 1
    assert named_schwartz("crit", P).fourier_value_at_origin() == 1 - F(Fraction(1, P))
    assert named_schwartz("dep", P).fourier_value_at_origin() == 0


def test_one_minus_phi_of_spherical():
    """(1 - phi) Phi_sph = Phi_crit."""
    assert one_minus_phi(named_schwartz("sph", P)) == named_schwartz("crit", P)


@pytest.mark.parametrize("k", [0, 1, 4])
def test_critical_depletion(k):
    """(1 - p^(k+1) <p>^-1 phi) Phi_crit = Phi_dep."""
    assert crit_depletion(named_schwartz("crit", P), k) == named_schwartz("dep", P)


@pytest.mark.parametrize("k", [0, 2])
def test_up_eigenvalues(k):
    """U_p fixes the critical line with p^(k+1) and kills the depleted one."""
    F = scalar_field(P)
    crit = named_schwartz("crit", P)
    assert U_p(crit, k) == crit.scale(F.p_power(k + 1))
    assert U_p(named_schwartz("dep", P), k).is_zero()


def test_up_after_phi_is_diamond():
    sph = named_schwartz("sph", P)
    assert U_p(phi(sph), 3) == diamond_p(sph, 3)
    assert diamond_p_inverse(diamond_p(sph, 3), 3) == sph


def test_operator_dispatch():
    sph = named_schwartz("sph", P)
    assert schwartz_operator("one_minus_phi", sph) == named_schwartz("crit", P)
    with pytest.raises(UnknownOperator):
        schwartz_operator("V_p", sph)


def test_fourier_is_an_involution():
    sph = named_schwartz("sph", P)
    transformed = partial_fourier(sph)
    assert not transformed.prime_coordinates
    assert partial_fourier(transformed) == sph
    with pytest.raises(UnsupportedLocalDatum):
        phi(transformed)


def test_fourier_of_ramified_second_coordinate():
    with pytest.raises(UnsupportedLocalDatum):
        partial_fourier(named_schwartz("crit", P, nu=UnitCharacter.quadratic(P)))


def test_depleted_whittaker_values():
    """W^{Phi_dep}(diag(p^n, 1)) is 1 at n = 0 and 0 elsewhere."""
    chi_p = scalar_field(P)(2)
    assert section_whittaker_value("dep", chi_p, 1, 0) == 1
    assert section_whittaker_value("dep", chi_p, 1, 1) == 0
    assert section_whittaker_value("dep", chi_p, 1, -1) == 0


def test_critical_whittaker_values():
    """W^{Phi_crit}(diag(p^n, 1)) = p^(-ns)."""
    F = scalar_field(P)
    chi_p = F(2)
    assert section_whittaker_value("crit", chi_p, 1, 2) == Fraction(1, 9)
    assert section_whittaker_value("crit", chi_p, Fraction(1, 2), 1) == F.u.inverse()


def test_twisted_critical_whittaker_value(quadratic):
    """A unit argument picks up nu(-1)."""
    chi_p = scalar_field(P)(2)
    assert section_whittaker_value("crit", chi_p, 1, 0, nu=quadratic) == -1
