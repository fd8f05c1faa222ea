#!/usr/bin/env python3
"""
Tests for Hecke parameters, ordinarity, Euler factors and the assembled constants.
"""

from fractions import Fraction

import pytest

from gsp4verify.errors import (
    InvariantViolation,
    ParityViolation,
    SymbolicMode,
    VanishingDenominator,
    VanishingEulerFactor,
)
from gsp4verify.hecke_data import (
    HeckeParams,
    TwistData,
    admissible_pairs,
    constants_report,
    euler_factor_E,
    klingen_denominator,
    klingen_testdata_value,
    klingen_u2_eigenvalues,
    ordinarity,
    require_admissible,
    siegel_euler_and_Cnq,
    theorem_A_constant,
    trivial_zero_check,
)


@pytest.fixture
def symbolic():
    return HeckeParams.symbolic(3, 2, 1)


@pytest.fixture
def ordinary():
    """Rational parameters at p = 3 with v = (0, 2, 4, 6) and no +-p^n among them."""
    return HeckeParams.rational(3, 2, 1, 2, 18, 405)


def test_delta_is_derived(symbolic):
    """alpha * delta = beta * gamma holds by construction."""
    assert symbolic.alpha * symbolic.delta == symbolic.beta * symbolic.gamma
    assert symbolic.weight == 6
    assert symbolic.mode == "symbolic"


def test_rational_checks_supplied_delta():
    HeckeParams.rational(3, 2, 1, 2, 18, 405, delta=3645)
    with pytest.raises(InvariantViolation):
        HeckeParams.rational(3, 2, 1, 2, 18, 405, delta=1)


def test_weights_ordered():
    with pytest.raises(InvariantViolation):
        HeckeParams.symbolic(3, 1, 2)


def test_admissible_pairs_parity():
    """q + r must have the parity of r2."""
    assert admissible_pairs(HeckeParams.symbolic(3, 2, 1)) == [(0, 1), (1, 0)]
    assert admissible_pairs(HeckeParams.symbolic(3, 2, 0)) == [(0, 0), (0, 2)]


def test_require_admissible_raises(symbolic):
    with pytest.raises(ParityViolation):
        require_admissible(symbolic, 1, 1)
    with pytest.raises(ParityViolation):
        theorem_A_constant(symbolic, 0, 0)


def test_ordinarity(ordinary):
    """v(alpha) = 0 is Siegel ordinary, v(alpha beta) = r2 + 1 is Klingen ordinary."""
    verdict = ordinarity(ordinary)
    assert verdict.siegel and verdict.klingen and verdict.borel
    assert verdict.to_dict() == {"siegel": True, "klingen": True, "borel": True}


def test_ordinarity_needs_rational(symbolic):
    with pytest.raises(SymbolicMode):
        ordinarity(symbolic)


def test_trivial_zero_passes(ordinary):
    report = trivial_zero_check(ordinary)
    assert report
    assert report.offending == ()
    assert all(report.bounds.values())
    assert report.valuations["delta"] == 6


def test_trivial_zero_flags_signed_powers():
    """alpha = 1 = p^0 and beta = -9 are both excluded."""
    report = trivial_zero_check(HeckeParams.rational(3, 2, 1, 1, -9, 5))
    assert not report
    assert report.offending == ("alpha", "beta")


def test_euler_factor_value(symbolic):
    """E(0) at a = 2, b = 4, c = 9 (so delta = 18), p = 3."""
    value = euler_factor_E(symbolic, 0).specialize({"a": 2, "b": 4, "c": 9})
    assert value == Fraction(1, 2) * Fraction(3, 4) * (-2) * (-5)


def test_assembled_constant_collapses(symbolic):
    """star * klingen value * denominator is the signed factorial."""
    expected = {(0, 1): 1, (1, 0): 2}
    for (q, r), sign in expected.items():
        product = (
            theorem_A_constant(symbolic, q, r)
            * klingen_testdata_value(symbolic, q, r)
            * klingen_denominator(symbolic, q)
        )
        assert product == sign


def test_vanishing_euler_factor():
    """alpha = p^q kills E(q)."""
    params = HeckeParams.rational(3, 2, 1, 1, 2, 5)
    with pytest.raises(VanishingEulerFactor):
        theorem_A_constant(params, 0, 1)


def test_vanishing_klingen_denominator():
    """gamma = p^(1+q) kills the denominator."""
    params = HeckeParams.rational(3, 2, 1, 2, 2, 3)
    with pytest.raises(VanishingDenominator):
        klingen_testdata_value(params, 0, 1)


def test_twist_central_character(symbolic):
    """chi1 is forced by chi1 * chi2 = chi_Pi."""
    twist = TwistData.from_chi2(symbolic, -1)
    assert twist.check(symbolic) is twist
    assert twist.chi1 == -symbolic.chi_pi
    F = symbolic.field
    with pytest.raises(InvariantViolation):
        TwistData(F.one, F.one).check(symbolic)


def test_klingen_eigenvalues(symbolic):
    eigen = klingen_u2_eigenvalues(symbolic)
    assert len(eigen) == 4
    assert eigen[0] == symbolic.alpha * symbolic.beta / 9


def test_siegel_constant_guards(symbolic):
    with pytest.raises(InvariantViolation):
        siegel_euler_and_Cnq(symbolic, 0, 1, 0, 1, 7)
    with pytest.raises(InvariantViolation):
        siegel_euler_and_Cnq(symbolic, 0, 1, -1, 7, 7)


def test_constants_report_shape(symbolic):
    report = constants_report(symbolic, 0, 1, shifts=2)
    assert report["params"]["mode"] == "symbolic"
    assert set(report["E_sieg_shifted"]) == {"0", "1", "2"}
    for key in ("euler_q", "euler_r", "star", "klingen_zeta", "E_sieg", "C_nq"):
        assert isinstance(report[key], str)
