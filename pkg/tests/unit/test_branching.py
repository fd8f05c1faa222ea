#!/usr/bin/env python3
"""
Tests for the polynomial models of GL2, H and GSp4 and the branching projection.
"""

from fractions import Fraction

import pytest

from gsp4verify.branching import (
    FIRST_SLOT,
    NAMED_VECTORS,
    SECOND_SLOT,
    X12,
    X41,
    MatrixFunction,
    admissible_tuples,
    branching_image,
    branching_vector,
    closed_form_coefficient,
    killing_depth,
    lie_act,
    p_minor,
    projection_coefficient,
    sym_vector,
    v,
    w,
    w_double_prime,
    w_minus,
    w_prime,
)
from gsp4verify.errors import DegreeBudgetExceeded, InvariantViolation, RangeViolation
from gsp4verify.verify import LADDER_DEPTHS


def test_x12_is_symplectic():
    assert X12.is_symplectic
    assert X41.is_symplectic


def test_ladder_steps():
    """X12: w'' -> -w' -> 2 w- -> 0, and w is killed at once."""
    assert lie_act(X12, w_double_prime()) == -w_prime()
    assert lie_act(X12, w_prime()) == w_minus().scale(-2)
    assert lie_act(X12, w_minus()).is_zero
    assert lie_act(X12, w()).is_zero
    assert lie_act(X12, v(2)) == v(1)


def test_w_prime_labels():
    """The minor on columns (3, 4) is killed by X12, so w' is p14 - p23 instead."""
    assert w_prime() == p_minor(1, 4) - p_minor(2, 3)
    assert lie_act(X12, p_minor(3, 4)).is_zero
    assert not lie_act(X12, w_prime()).is_zero


def test_killing_depths():
    depths = {name: killing_depth(build()) for name, build in NAMED_VECTORS.items()}
    assert depths == LADDER_DEPTHS
    assert killing_depth(MatrixFunction.constant(0)) == -1


def test_weights():
    assert v(1).weight() == (1, 0, 0)
    assert w().weight() == (1, 1, 0)
    assert (v(1) + v(2)).weight() is None
    assert sym_vector(3, 1).weight == (2, 1)


def test_size_mismatch():
    with pytest.raises(InvariantViolation):
        v(1) + sym_vector(1, 0).function
    with pytest.raises(InvariantViolation):
        lie_act(X12, sym_vector(1, 0).function)


def test_ranges():
    with pytest.raises(RangeViolation):
        sym_vector(2, 3)
    with pytest.raises(RangeViolation):
        branching_vector(1, 2, 0, 0)
    with pytest.raises(RangeViolation):
        branching_vector(2, 1, 2, 0)
    with pytest.raises(RangeViolation):
        branching_image(2, 1, 0, 0, "third_slot", 0)
    with pytest.raises(RangeViolation):
        v(1) ** -1


def test_branching_vector():
    assert branching_vector(1, 1, 0, 0) == w()
    assert branching_vector(2, 1, 1, 1) == w_prime() * v(2)


def test_first_slot_image():
    """X41 takes w to w''."""
    assert branching_image(1, 1, 0, 0, FIRST_SLOT, 1) == w_double_prime()
    assert branching_image(1, 1, 0, 0, SECOND_SLOT, 1) == p_minor(1, 3)


@pytest.mark.parametrize(
    "tup,side,index,value",
    [
        ((1, 1, 0, 0), FIRST_SLOT, 2, Fraction(1)),
        ((1, 1, 0, 0), SECOND_SLOT, 0, Fraction(1)),
        ((1, 1, 1, 0), FIRST_SLOT, 1, Fraction(-2)),
        ((2, 1, 0, 0), FIRST_SLOT, 2, Fraction(1, 2)),
    ],
)
def test_projection_coefficients(tup, side, index, value):
    entry = projection_coefficient(*tup, side=side)
    assert entry.index == index
    assert entry.closed_form == value
    assert entry.brute_force == value
    assert entry.match and entry.exact_multiple


def test_killing_depth_matches_index():
    entry = projection_coefficient(1, 1, 0, 0)
    assert entry.killing_depth == entry.index == 2
    assert entry.to_dict()["tuple"] == [1, 1, 0, 0]


def test_closed_form():
    assert closed_form_coefficient(3, 2, 1, 0, FIRST_SLOT) == Fraction(-2, 2)
    assert closed_form_coefficient(0, 0, 0, 0, SECOND_SLOT) == 1


def test_degree_budget():
    with pytest.raises(DegreeBudgetExceeded):
        projection_coefficient(5, 4, 0, 0, budget=8)


def test_admissible_tuples():
    assert list(admissible_tuples(0)) == [(0, 0, 0, 0)]
    assert list(admissible_tuples(1)) == [(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 1)]


@pytest.mark.slow
def test_small_table_matches():
    for tup in admissible_tuples(4):
        for side in (FIRST_SLOT, SECOND_SLOT):
            assert projection_coefficient(*tup, side=side).match, (tup, side)
