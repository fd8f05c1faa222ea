#!/usr/bin/env python3
"""
Tests for Eisenstein q-expansions, the operators on them and the p-adic families.
"""

import pytest

from gsp4verify.eisenstein import (
    ONE_PARAM_CRITICAL,
    TWO_PARAM,
    EisensteinDatum,
    FamilySpec,
    TameDatum,
    T_ell,
    U_p,
    V_p,
    WeightCharacter,
    depletion,
    eisenstein_E_padic,
    eisenstein_F,
    family_qexp,
    qexp_operator,
    specialize_family,
    theta,
)
from gsp4verify.errors import (
    CharacterConductorMismatch,
    InvariantViolation,
    TruncationTooShort,
    UnknownOperator,
    UnsupportedLocalDatum,
    WeightZeroSupport,
)
from gsp4verify.schwartz import UnitCharacter, named_schwartz

P = 3
N = 30


@pytest.fixture
def crit():
    return EisensteinDatum.named("crit", P)


@pytest.fixture
def dep():
    return EisensteinDatum.named("dep", P)


def lift(f, k):
    for _ in range(k + 1):
        f = theta(f)
    return f


def test_spherical_coefficients():
    """With spherical data a_n = 2 sigma_3(n) for F^4."""
    f = eisenstein_F(2, EisensteinDatum.spherical(5), 10)
    assert f.coefficient(1) == 2
    assert f.coefficient(6) == 504
    assert f.rows()[0] == (0, "a0")


def test_weight_zero_needs_vanishing_origin(crit, dep):
    """Phi_crit(0, 0) = 1 - 1/p, Phi_dep(0, 0) = 0."""
    with pytest.raises(WeightZeroSupport):
        eisenstein_F(0, crit, N)
    assert eisenstein_F(0, dep, N).weight == 2
    with pytest.raises(InvariantViolation):
        eisenstein_F(-1, dep, N)


def test_depleted_support(dep):
    """Only p-units u, v contribute, so a_n vanishes for p | n."""
    f = eisenstein_F(2, dep, N)
    for n in range(P, N + 1, P):
        assert f.coefficient(n) == 0
    assert f.coefficient(1) == 2


def test_odd_weight_cancels(dep):
    """(u, v) and (-u, -v) cancel when k + 1 is even."""
    assert all(c.is_zero() for c in eisenstein_F(1, dep, N).coefficients)


def test_padic_constant_terms(crit, dep):
    assert eisenstein_E_padic(1, dep, N).constant.is_zero()
    assert eisenstein_E_padic(1, crit, N).constant is None


def test_padic_series_needs_dep_or_crit():
    with pytest.raises(UnsupportedLocalDatum):
        eisenstein_E_padic(1, EisensteinDatum.spherical(P), N)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_theta_lift_depleted(dep, k):
    """theta^(k+1) E^-k = F^(k+2) for Phi_dep."""
    assert lift(eisenstein_E_padic(k, dep, N), k).agrees_with(eisenstein_F(k, dep, N))


@pytest.mark.parametrize("k", [2, 4])
def test_theta_lift_critical(crit, k):
    assert lift(eisenstein_E_padic(k, crit, N), k).agrees_with(eisenstein_F(k, crit, N))


@pytest.mark.parametrize("k", [2, 4])
def test_up_eigenvalues(crit, dep, k):
    """U_p = p^(k+1) on the critical series and 0 on the depleted one."""
    F_crit = eisenstein_F(k, crit, N)
    assert U_p(F_crit).agrees_with(F_crit.scale(F_crit.field.p_power(k + 1)))
    assert all(c.is_zero() for c in U_p(eisenstein_F(k, dep, N)).coefficients)


@pytest.mark.parametrize("k", [2, 4])
def test_depletion(crit, dep, k):
    """(1 - p^(k+1) <p>^-1 V_p) F_crit = F_dep."""
    assert depletion(eisenstein_F(k, crit, N), crit, k).agrees_with(eisenstein_F(k, dep, N))


@pytest.mark.parametrize("k", [0, 2])
def test_two_parameter_family(dep, k):
    """The two-parameter family at (0, -1-k) is E^-k_dep."""
    family = family_qexp(FamilySpec(P, TWO_PARAM), N)
    value = specialize_family(family, WeightCharacter(0), WeightCharacter(-1 - k))
    assert value.weight == -k
    assert value.agrees_with(eisenstein_E_padic(k, dep, N))


def test_critical_family(crit):
    """The one-parameter family with ell = k + 1 at kappa = 0 is F^(k+2)_crit."""
    k = 2
    family = family_qexp(FamilySpec(P, ONE_PARAM_CRITICAL, ell=k + 1), N)
    value = specialize_family(family, WeightCharacter(0))
    assert value.agrees_with(eisenstein_F(k, crit, N))
    assert family.to_dict()["kind"] == ONE_PARAM_CRITICAL


def test_family_validation():
    with pytest.raises(InvariantViolation):
        FamilySpec(P, ONE_PARAM_CRITICAL)
    with pytest.raises(InvariantViolation):
        FamilySpec(P, "three_param")
    family = family_qexp(FamilySpec(P, TWO_PARAM), 5)
    with pytest.raises(InvariantViolation):
        specialize_family(family, WeightCharacter(0))
    with pytest.raises(CharacterConductorMismatch):
        specialize_family(family, WeightCharacter(0, UnitCharacter.quadratic(5)),
                          WeightCharacter(0))


def test_hecke_operator_away_from_p():
    """Spherical F^4 is a T_2 eigenform with eigenvalue 1 + 2^3."""
    f = eisenstein_F(2, EisensteinDatum.spherical(5), 20)
    assert T_ell(f, 2).agrees_with(f.scale(9))
    with pytest.raises(UnsupportedLocalDatum):
        T_ell(f, 5)


def test_operator_dispatch(dep):
    f = eisenstein_F(2, dep, N)
    assert qexp_operator("V_p", f).coefficient(P) == f.coefficient(1)
    assert qexp_operator("U_p", V_p(f)).agrees_with(f)
    assert qexp_operator("diamond", f, dep).agrees_with(f)
    with pytest.raises(UnknownOperator):
        qexp_operator("W_p", f)


def test_truncation_guards(dep):
    f = eisenstein_F(1, dep, 2)
    with pytest.raises(TruncationTooShort):
        U_p(f)
    with pytest.raises(TruncationTooShort):
        f.coefficient(3)


def test_tame_tables_checked():
    with pytest.raises(InvariantViolation):
        TameDatum.from_tables({7: named_schwartz("sph", 5)})
