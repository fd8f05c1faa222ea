#!/usr/bin/env python3
"""
Tests for the torus and Weyl group helpers and the spherical Whittaker values.
"""

from fractions import Fraction

import pytest

from gsp4verify.errors import InvariantViolation, UnderdeterminedSystem
from gsp4verify.groups import (
    CENTRE,
    ORIGIN,
    TorusExponent,
    mat_mul,
    similitude,
    unipotent,
    weyl_group,
)
from gsp4verify.hecke_data import HeckeParams
from gsp4verify.parahoric import ParahoricTag
from gsp4verify.whittaker import (
    HeckeCombination,
    cross_path_table,
    cs_recursion_oracle,
    cs_value_gl2,
    cs_value_gsp4,
    eigenvalue_readback,
    eigenvector_normalisations,
    evaluate_hecke_translate,
    iwasawa_decompose,
    klingen_eigenvector_combo,
    psi_average,
)
from gsp4verify.whittaker.casselman_shalika import complete_homogeneous


@pytest.fixture
def params():
    return HeckeParams.symbolic(3, 1, 0)


def test_weyl_group_has_eight_elements():
    elements = weyl_group()
    assert len(elements) == 8
    assert elements[0].word == ()
    assert sum(w.sign for w in elements) == 0


def test_torus_similitude():
    """diag(p^e1, p^e2, p^(e0-e2), p^(e0-e1)) has similitude p^e0."""
    t = TorusExponent(2, 1, 1)
    assert t.diagonal() == (2, 1, 0, -1)
    assert similitude(t.matrix(3)) == 3
    assert CENTRE.modulus_exponent() == 0


def test_non_symplectic_diagonal_rejected():
    with pytest.raises(InvariantViolation):
        TorusExponent.from_diagonal((1, 0, 0, 1))


def test_iwasawa_of_torus():
    t = TorusExponent(2, 1, 1)
    result = iwasawa_decompose(t.matrix(3), 3)
    assert result.torus == t
    assert result.psi_argument == 0


def test_iwasawa_ignores_integral_right_factor():
    """g k and g have the same torus part for k in G(Z_p)."""
    t = TorusExponent(1, 0, -1)
    g = mat_mul(t.matrix(5), unipotent("-a1+a2", 3))
    assert iwasawa_decompose(g, 5).torus == t


def test_psi_average():
    """1 on Z_p, -1/(p-1) on p^-1 Z_p^x, 0 further out."""
    assert psi_average(Fraction(0), 3) == 1
    assert psi_average(Fraction(5), 3) == 1
    assert psi_average(Fraction(1, 3), 3) == Fraction(-1, 2)
    assert psi_average(Fraction(2, 9), 3) == 0


def test_complete_homogeneous(params):
    F = params.field
    assert complete_homogeneous([F.a, F.b], 2) == F.a ** 2 + F.a * F.b + F.b ** 2
    assert complete_homogeneous([F.a, F.b], -1) == 0


def test_closed_form_support(params):
    """w_sph is 1 at the identity and vanishes off the dominant cone."""
    assert cs_value_gsp4(params, ORIGIN) == 1
    assert cs_value_gsp4(params, TorusExponent(0, 1, 0)) == 0
    assert cs_value_gl2(params, 0) == 1
    assert cs_value_gl2(params, -1) == 0


def test_gl2_first_coefficient(params):
    F = params.field
    expected = F.sqrt_p_power(-(params.r1 + params.r2 + 4)) * (params.alpha + params.beta)
    assert cs_value_gl2(params, 1) == expected


def test_recursion_agrees_with_closed_form(params):
    """Both paths give the same value on the box |e_i| <= 1."""
    rows = cross_path_table(params, bound=1)
    assert len(rows) == 27
    for t, closed, recursion in rows:
        assert closed == recursion, str(t)


def test_recursion_bound_enforced(params):
    with pytest.raises(UnderdeterminedSystem):
        cs_recursion_oracle(params, TorusExponent(4, 0, 0), bound=3)


def test_eigenvalue_readback():
    """T1 on w_sph reads back alpha + beta + gamma + delta."""
    params = HeckeParams.symbolic(2, 0, 0)
    readback = eigenvalue_readback(params)
    assert readback["T1"] == sum(params.parameters()[1:], params.alpha)


@pytest.mark.slow
def test_eigenvector_normalisations():
    """Every eigenvector combination equals 1 at the identity."""
    values = eigenvector_normalisations(HeckeParams.symbolic(2, 0, 0))
    assert set(values) == {"siegel", "klingen", "iwahori_from_siegel", "iwahori_from_klingen"}
    for name, value in values.items():
        assert value == 1, name


@pytest.mark.slow
def test_klingen_normalisation_needs_gamma_delta():
    """Removing beta*gamma/P instead of gamma*delta/P breaks the value 1 at the identity."""
    params = HeckeParams.symbolic(2, 0, 0)
    alpha, beta, gamma, delta = params.parameters()
    P = params.field.p_power(params.r2 + 1)
    combo = HeckeCombination.identity(params)
    for root in (beta * gamma / P, alpha * gamma / P, beta * delta / P):
        combo = HeckeCombination.factor(params, "U2", root) * combo
    combo = combo.scale((1 + gamma / alpha).inverse() * (P / (alpha * beta)) ** 3)
    level = ParahoricTag.KLINGEN
    assert evaluate_hecke_translate(params, klingen_eigenvector_combo(params), level=level) == 1
    assert evaluate_hecke_translate(params, combo, level=level) != 1
