#!/usr/bin/env python3
"""
Tests for lattice models of ordinary moduli points and the correspondences on them.
"""

from fractions import Fraction

import pytest

from gsp4verify.errors import InvariantViolation, NonOrdinary
from gsp4verify.groups import diagonal, identity
from gsp4verify.moduli import (
    Cycle,
    ModuliPointG,
    ModuliPointH,
    canonical_orbit,
    diamond,
    frobenius_factorization,
    index_exponent,
    iota_delta,
    lattice_contains,
    nullspace_mod_p,
    random_points,
    span,
    subgroup_invariants,
    u2_prime,
    up_boxtimes_up,
    verify_correspondence_identity,
    z_prime,
)


@pytest.fixture(params=[2, 3])
def point(request):
    return ModuliPointH.standard(request.param)


def test_span_adds_fractional_vector():
    lattice = span([(1, 0), (0, 1), (Fraction(1, 3), 0)], 3)
    assert lattice == diagonal([Fraction(1, 3), 1])
    assert index_exponent(identity(2), lattice, 3) == 1
    assert lattice_contains(lattice, identity(2), 3)
    assert not lattice_contains(identity(2), lattice, 3)


def test_span_rejects_degenerate_sets():
    with pytest.raises(InvariantViolation):
        span([], 3)
    with pytest.raises(InvariantViolation):
        span([(1, 0), (2, 0)], 3)


def test_subgroup_invariants():
    """Z_3^2 / diag(9, 3) is Z/9 x Z/3."""
    assert subgroup_invariants(diagonal([9, 3]), identity(2), 3) == (9, 3)
    with pytest.raises(InvariantViolation):
        subgroup_invariants(identity(2), diagonal([9, 3]), 3)


def test_nullspace_mod_p():
    basis = nullspace_mod_p([[1, 1, 0, 0]], 4, 3)
    assert len(basis) == 3
    assert all((x[0] + x[1]) % 3 == 0 for x in basis)


def test_alpha_must_be_invertible():
    with pytest.raises(InvariantViolation):
        ModuliPointH.standard(3, lam=3)


def test_subgroup_must_be_multiplicative():
    with pytest.raises(NonOrdinary):
        ModuliPointG.create(3, identity(4), (0, 0, Fraction(1, 3), 0))
    with pytest.raises(NonOrdinary):
        ModuliPointG.create(3, identity(4), (1, 0, 0, 0))


def test_iota_of_standard_point(point):
    g = iota_delta(point)
    assert g.modularity() == 0
    assert g.pairing == (0, 0)


def test_correspondence_degrees(point):
    """Up x Up has degree p^2, Z' degree p^2 and U2' degree p."""
    p = point.p
    g = iota_delta(point)
    assert up_boxtimes_up(point).degree == p * p
    assert z_prime(g).degree == p * p
    assert u2_prime(g).degree == p


def test_diamond_scales_lattices():
    x = ModuliPointH.standard(3)
    assert diamond(x).L1 == diagonal([Fraction(1, 3), Fraction(1, 3)])
    assert diamond(x).lam == x.lam


def test_cycle_arithmetic():
    x, y = ModuliPointH.standard(3, 1), ModuliPointH.standard(3, 2)
    cycle = Cycle.of([x, y, x])
    assert cycle.multiplicity(x) == 2
    assert cycle.degree == 3
    assert len(cycle) == 2
    assert cycle.times(2).degree == 6
    assert cycle + Cycle.of([y]) == Cycle({x: 2, y: 2})
    with pytest.raises(InvariantViolation):
        cycle.add(x, -1)


def test_frobenius_factorization(point):
    """U2' is the part of Z' o Phi on the kernel lattice; the composite has p times the degree."""
    result = frobenius_factorization(iota_delta(point))
    assert result.holds
    assert result.to_dict()["composite_degree"] == point.p * point.p


def test_correspondence_identity_on_canonical_orbit():
    checks = verify_correspondence_identity(2)
    assert len(checks) == len(canonical_orbit(2))
    for check in checks:
        assert check.passed
        assert check.kernel_law
        assert check.torsion_contained
        assert check.lhs.degree == 8


def test_random_points_are_seeded():
    assert random_points(3, 4, seed=7) == random_points(3, 4, seed=7)
    assert len(random_points(3, 0)) == 0


@pytest.mark.slow
def test_correspondence_identity_on_random_points():
    for check in verify_correspondence_identity(3, random_points(3, 3, seed=1)):
        assert check.passed, check.to_dict()
