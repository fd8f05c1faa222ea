"""
Small dense linear algebra over Scalars.

Matrices are tuples of row tuples. Sizes never exceed 8, so the plain
cubic algorithms are all that is needed.
"""

from typing import List, Sequence, Tuple

from ..errors import InvariantViolation
from .scalar import Scalar, ScalarField

ScalarMatrix = Tuple[Tuple[Scalar, ...], ...]
ScalarVector = Tuple[Scalar, ...]


def smat_identity(F: ScalarField, n: int) -> ScalarMatrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def smat_zero(F: ScalarField, n: int) -> ScalarMatrix:
    return tuple(tuple(F.zero for _ in range(n)) for _ in range(n))


def smat_add(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def smat_sub(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def smat_scale(a: ScalarMatrix, s) -> ScalarMatrix:
    return tuple(tuple(x * s for x in row) for row in a)


def smat_mul(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    if not a:
        return a
    zero = a[0][0].field.zero
    cols = list(zip(*b))
    out = []
    for row in a:
        new_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new_row.append(acc)
        out.append(tuple(new_row))
    return tuple(out)


def smat_vec(a: ScalarMatrix, v: Sequence[Scalar]) -> ScalarVector:
    zero = v[0].field.zero
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def smat_transpose(a: ScalarMatrix) -> ScalarMatrix:
    return tuple(zip(*a))


def smat_trace(a: ScalarMatrix) -> Scalar:
    total = a[0][0].field.zero
    for i, row in enumerate(a):
        total = total + row[i]
    return total


def smat_diagonal(entries: Sequence[Scalar]) -> ScalarMatrix:
    F = entries[0].field
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else F.zero for j in range(n)) for i in range(n))


def charpoly(a: ScalarMatrix) -> List[Scalar]:
    """
    Coefficients c_0, ..., c_n of det(X - A) by Faddeev-LeVerrier.

    Exact over any field of characteristic 0; c_n = 1.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise InvariantViolation("charpoly needs a square matrix")
    F = a[0][0].field
    coeffs = [F.zero] * (n + 1)
    coeffs[n] = F.one
    m = smat_zero(F, n)
    for k in range(1, n + 1):
        m = smat_add(smat_mul(a, m), smat_scale(smat_identity(F, n), coeffs[n - k + 1]))
        coeffs[n - k] = -smat_trace(smat_mul(a, m)) / k
    return coeffs


def polynomial_from_roots(roots: Sequence[Scalar]) -> List[Scalar]:
    """Coefficients of prod (X - root), constant term first."""
    F = roots[0].field
    coeffs = [F.one]
    for root in roots:
        shifted = [F.zero] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - root * c
        coeffs = shifted
    return coeffs
