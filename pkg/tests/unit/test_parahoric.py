#!/usr/bin/env python3
"""
Tests for parahoric levels, coset enumeration and the Hecke matrices on invariants.
"""

from fractions import Fraction

import pytest

from gsp4verify.algebra import smat_identity, smat_scale
from gsp4verify.errors import InvariantViolation, UnknownOperator
from gsp4verify.groups import diagonal, identity
from gsp4verify.hecke_data import HeckeParams, klingen_u2_eigenvalues
from gsp4verify.parahoric import (
    OPERATORS,
    InducedModel,
    ParahoricTag,
    degree,
    genestier_tilouine_discriminator,
    hecke_matrix,
    hnf,
    iwahori_joint_eigen_check,
    klingen_eigenvector,
    phi1_trace_check,
    serre_transpose_check,
    trace_to_spherical,
)
from gsp4verify.parahoric.lattice import reduce_mod_p, residue_class
from gsp4verify.parahoric.trace import (
    expected_klingen_trace,
    frobenius_matrix_report,
    hyperspecial_eigenvalues,
    proportionality,
    siegel_u1_eigenvalues,
)


@pytest.fixture
def params():
    return HeckeParams.symbolic(2, 0, 0)


def test_tag_from_name():
    assert ParahoricTag.from_name("kl") is ParahoricTag.KLINGEN
    assert ParahoricTag.from_name("Siegel") is ParahoricTag.SIEGEL
    with pytest.raises(InvariantViolation):
        ParahoricTag.from_name("paramodular")


def test_operator_registry():
    assert "U2_prime" in OPERATORS
    assert len(OPERATORS) == 9
    with pytest.raises(UnknownOperator):
        OPERATORS.get("U3")
    names = {op.name for op in OPERATORS.at_level(ParahoricTag.HYPERSPECIAL)}
    assert names == {"diamond", "T1", "T2"}


def test_operator_missing_at_level(params):
    model = InducedModel(params, ParahoricTag.HYPERSPECIAL)
    with pytest.raises(UnknownOperator):
        model.operator_matrix("Z_prime")


def test_unknown_normalization(params):
    with pytest.raises(InvariantViolation):
        InducedModel(params, ParahoricTag.KLINGEN, normalization="arithmetic")


def test_residues():
    assert residue_class(Fraction(7), 1, 3) == 1
    assert residue_class(Fraction(1, 2), 1, 3) == 2
    assert reduce_mod_p(Fraction(5, 2), 3) == 1
    with pytest.raises(InvariantViolation):
        reduce_mod_p(Fraction(1, 3), 3)


def test_hnf_normalizes_units():
    """Diagonal entries become exact powers of p."""
    assert hnf(diagonal([6, 1, 1, 1]), 3) == diagonal([3, 1, 1, 1])
    assert hnf(identity(4), 5) == identity(4)


def test_hyperspecial_degrees():
    """(1 + p)(1 + p^2) and p(1 + p)(1 + p^2) cosets."""
    for p in (2, 3):
        t1, t2 = OPERATORS.get("T1").torus, OPERATORS.get("T2").torus
        assert degree(ParahoricTag.HYPERSPECIAL, t1, p) == (1 + p) * (1 + p * p)
        assert degree(ParahoricTag.HYPERSPECIAL, t2, p) == p * (1 + p) * (1 + p * p)
    assert degree(ParahoricTag.IWAHORI, OPERATORS.get("diamond").torus, 2) == 1


def test_cell_counts(params):
    for tag in ParahoricTag:
        assert InducedModel(params, tag).size == tag.cell_count


def test_hyperspecial_eigenvalue(params):
    """T1 acts on the spherical vector by alpha + beta + gamma + delta."""
    t1, _ = hyperspecial_eigenvalues(params)
    alpha, beta, gamma, delta = params.parameters()
    assert t1 == alpha + beta + gamma + delta


def test_diamond_is_scalar(params):
    """<p> is central, so its matrix is a multiple of the identity."""
    matrix = hecke_matrix(ParahoricTag.KLINGEN, "diamond", params)
    scalar = matrix[0][0]
    assert matrix == tuple(tuple(x * scalar for x in row) for row in smat_identity(params.field, 4))


def test_klingen_u2_eigenvalues(params):
    """U2 on Klingen invariants: alpha beta, alpha gamma, beta delta, gamma delta over p^(r2+1)."""
    model = InducedModel(params, ParahoricTag.KLINGEN)
    assert model.has_eigenvalues("U2", klingen_u2_eigenvalues(params))


def test_siegel_u1_eigenvalues(params):
    model = InducedModel(params, ParahoricTag.SIEGEL)
    assert model.has_eigenvalues("U1", siegel_u1_eigenvalues(params))


def test_normalizations_agree():
    """The cohomological twist is compensated in every operator."""
    params = HeckeParams.symbolic(2, 1, 1)
    unitary = hecke_matrix(ParahoricTag.KLINGEN, "U1", params)
    cohomological = hecke_matrix(ParahoricTag.KLINGEN, "U1", params, normalization="cohomological")
    assert unitary == cohomological


def test_serre_transpose(params):
    for name in ("U1", "U2", "U1_prime", "U2_prime"):
        assert serre_transpose_check(params, ParahoricTag.KLINGEN, name), name


def test_klingen_trace_discriminator(params):
    """Enumeration picks the (1 - gamma/(p beta)) closed form."""
    report = genestier_tilouine_discriminator(params)
    assert report.verdict == "stated"
    assert report.to_dict()["stated_matches"] is True


def test_phi1_trace(params):
    report = phi1_trace_check(params)
    assert report
    assert report.to_dict() == {"phi1_trace": True, "prime_trace": True, "image": True}


@pytest.mark.slow
def test_iwahori_joint_eigenvector():
    assert iwahori_joint_eigen_check(HeckeParams.symbolic(2, 1, 0))


def test_proportionality():
    F = HeckeParams.symbolic(2, 0, 0).field
    one = smat_identity(F, 2)
    assert proportionality(smat_scale(one, F(3)), one) == 3
    assert proportionality(((F(1), F(0)), (F(0), F(2))), one) is None
    assert proportionality(one, smat_scale(one, F(0))) is None


@pytest.mark.slow
@pytest.mark.parametrize("normalization", ["unitary", "cohomological"])
def test_frobenius_product_differs_from_u2_prime_in_the_hecke_algebra(normalization):
    """Z' Phi = p^(r2+1) U2' holds on ordinary cycles, not for the Iwahori matrices."""
    report = frobenius_matrix_report(HeckeParams.symbolic(2, 1, 1), normalization)
    assert not report.identity_holds
    assert not report.reversed_holds
    assert not report.commutes
    assert report.ratio is None
    summary = report.to_dict()
    assert summary["residual_entries"] > 0
    assert summary["ratio_to_u2_prime"] is None


def test_klingen_vector_removes_gamma_delta_not_beta_gamma(params):
    """beta*gamma/P is not a U2 eigenvalue, so removing it leaves a mixed vector."""
    model = InducedModel(params, ParahoricTag.KLINGEN)
    alpha, beta, gamma, delta = params.parameters()
    P = params.field.p_power(params.r2 + 1)
    eigenvalue = alpha * beta / P
    normalizer = (1 + gamma / alpha).inverse() * (P / (alpha * beta)) ** 3

    vector = klingen_eigenvector(model)
    assert model.is_eigenvector("U2", vector, eigenvalue)
    assert trace_to_spherical(vector) == expected_klingen_trace(params)

    roots = [beta * gamma / P, alpha * gamma / P, beta * delta / P]
    mixed = model.apply_factors("U2", roots, model.spherical_vector()).scale(normalizer)
    assert not model.is_eigenvector("U2", mixed, eigenvalue)
    assert trace_to_spherical(mixed) != expected_klingen_trace(params)
