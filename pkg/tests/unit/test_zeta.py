#!/usr/bin/env python3
"""
Tests for the Klingen and Siegel local zeta integrals.
"""

from fractions import Fraction

import pytest

from gsp4verify.errors import InvariantViolation, ParityViolation, UnsupportedTag
from gsp4verify.hecke_data import (
    HeckeParams,
    TwistData,
    admissible_pairs,
    klingen_denominator,
    klingen_testdata_value,
)
from gsp4verify.schwartz import UnitCharacter
from gsp4verify.verify import (
    KLINGEN_SLOT_PAIRS,
    expected_klingen_ratio,
    expected_twisted_ratio,
    twisted_requests,
)
from gsp4verify.zeta import (
    ZetaRequest,
    klingen_prefactor,
    klingen_ratio,
    klingen_zeta,
    siegel_zeta,
    siegel_zeta_paths,
    ztilde_normalization,
)


@pytest.fixture
def params():
    return HeckeParams.symbolic(2, 2, 1)


@pytest.fixture
def trivial(params):
    return TwistData.trivial(params)


def test_evaluation_point(params, trivial):
    """(s1, s2) = (-t1/2, -t2/2) with t1 = r1 - q - r and t2 = r2 - q + r."""
    req = ZetaRequest(params, trivial, 0, 1, "dep", "crit")
    assert req.evaluation_point == (Fraction(-1, 2), Fraction(-1))
    assert req.slots() == "dep,crit"
    assert not req.twisted


def test_request_validation(params, trivial):
    with pytest.raises(ParityViolation):
        ZetaRequest(params, trivial, 0, 0, "dep", "crit")
    with pytest.raises(UnsupportedTag):
        ZetaRequest(params, trivial, 0, 1, "dep", "paramodular")
    quadratic = UnitCharacter.quadratic(2)
    with pytest.raises(InvariantViolation):
        ZetaRequest(params, trivial, 0, 1, "dep", "dep", nu1=quadratic)


def test_spherical_first_slot_refused(params, trivial):
    """The first slot must vanish at the origin."""
    with pytest.raises(UnsupportedTag):
        klingen_ratio(ZetaRequest(params, trivial, 0, 1, "sph", "dep"))


def test_klingen_ratio_table(params, trivial):
    """1 for dep/crit mixes and 1/((1 - gamma/p^(1+q))(1 - delta/p^(1+q))) for crit x crit."""
    for q, r in admissible_pairs(params):
        for slot1, slot2 in KLINGEN_SLOT_PAIRS:
            ratio = klingen_ratio(ZetaRequest(params, trivial, q, r, slot1, slot2))
            assert ratio == expected_klingen_ratio(params, q, slot1, slot2), (q, r, slot1, slot2)


def test_crit_crit_is_the_test_data_value(params, trivial):
    for q, r in admissible_pairs(params):
        value = klingen_zeta(ZetaRequest(params, trivial, q, r, "crit", "crit"))
        assert value == klingen_testdata_value(params, q, r)
        assert value * klingen_denominator(params, q) == klingen_prefactor(params, trivial, q, r)


def test_twisted_requests_return_the_torus_integral():
    """dep(mu1, 1) x crit(nu2) with nu2 = mu1^-1 and rho = nu2 integrates to 1."""
    params = HeckeParams.symbolic(3, 1, 1)
    twist = TwistData.trivial(params)
    quadratic = UnitCharacter.quadratic(3)
    req = ZetaRequest(params, twist, 1, 0, "dep", "crit", quadratic, None, None, quadratic,
                      rho=quadratic)
    assert req.twisted
    assert req.meets_twisted_hypotheses()
    assert klingen_zeta(req) == klingen_ratio(req) == expected_twisted_ratio(req) == 1


def test_twist_needs_rho_equal_to_nu1_nu2():
    """With rho trivial the mu1 factor is left over and averages to 0."""
    params = HeckeParams.symbolic(3, 1, 1)
    twist = TwistData.trivial(params)
    quadratic = UnitCharacter.quadratic(3)
    req = ZetaRequest(params, twist, 1, 0, "dep", "crit", quadratic, None, None, quadratic)
    assert not req.meets_twisted_hypotheses()
    assert klingen_ratio(req) == 0
    with pytest.raises(InvariantViolation):
        expected_twisted_ratio(req)


def test_rho_squared_must_match_slot_characters():
    params = HeckeParams.symbolic(3, 1, 1)
    twist = TwistData.trivial(params)
    cubic = UnitCharacter(3, 2)
    assert cubic.order == 3
    with pytest.raises(InvariantViolation):
        ZetaRequest(params, twist, 1, 0, "dep", "dep", rho=cubic)


def test_twisted_orthogonality_at_two():
    params = HeckeParams.symbolic(2, 1, 1)
    requests = list(twisted_requests(params, 1, 0))
    assert len(requests) == 16
    assert {expected for _, expected in requests} == {0, 1}
    for req, expected in requests:
        assert req.meets_twisted_hypotheses()
        assert klingen_ratio(req) == expected, (req.slots(), str(req.mu1), str(req.nu1))


@pytest.mark.slow
def test_twisted_orthogonality():
    """Every character assignment gives its expected ratio."""
    params = HeckeParams.symbolic(3, 1, 1)
    for req, expected in twisted_requests(params, 1, 0):
        assert klingen_ratio(req) == expected, (req.slots(), str(req.mu1), str(req.nu1),
                                                str(req.nu2))


@pytest.mark.parametrize("chi2", [1, -1])
def test_siegel_paths_agree(params, chi2):
    """The generating-series route reproduces the closed form."""
    twist = TwistData.from_chi2(params, chi2)
    for q, r in admissible_pairs(params):
        paths = siegel_zeta_paths(params, twist, q, r)
        assert paths.agree
        assert siegel_zeta(params, twist, q, r) == paths.closed_form


def test_ztilde_normalization(params, trivial):
    factors = ztilde_normalization(params, trivial, 0, 1)
    assert set(factors) == {"L_first_inverse", "L_second_inverse"}
    alpha, beta, gamma, delta = params.parameters()
    expected = (1 - alpha / 2) * (1 - beta / 2) * (1 - gamma / 2) * (1 - delta / 2)
    assert factors["L_first_inverse"] == expected
