"""
Iwasawa decomposition g = n t a k over Q_p.

n is upper unipotent, t a p-power torus element, a a diagonal unit matrix and
k in G(Z_p). Only right multiplication by integral elements is used, so every
step is exact over Q.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from ..algebra import valuation
from ..errors import InvariantViolation, PrecisionExceeded
from ..groups import (
    S2,
    Mat,
    TorusExponent,
    diagonal,
    gl2,
    identity,
    is_upper_triangular,
    mat_inv,
    mat_mul,
    unipotent,
    weyl_to_last_column,
)
from ..log import get_logger

log = get_logger("whittaker")

DEFAULT_MAX_VALUATION = 64

# Root subgroup used to clear each column of the last row, against column 4.
_CLEARING = ((2, "-a1"), (1, "-a1+a2"), (0, "-2a1+a2"))


@dataclass(frozen=True)
class IwasawaResult:
    """g = n * t.matrix(p) * diagonal(unit) * k."""
    n: Mat
    torus: TorusExponent
    unit: Tuple[Fraction, ...]
    k: Mat

    @property
    def psi_argument(self) -> Fraction:
        """Sum of the simple-root coordinates n12 + n23."""
        return self.n[0][1] + self.n[1][2]


def _v(x: Fraction, p: int, bound: int) -> Optional[int]:
    if x == 0:
        return None
    v = valuation(x, p)
    if abs(v) > bound:
        raise PrecisionExceeded(f"Valuation {v} exceeds the bound {bound}")
    return v


def _argmin(values) -> int:
    """Index of the smallest valuation, the last one on ties; None counts as infinity."""
    best = None
    for i, v in enumerate(values):
        if v is not None and (best is None or v <= values[best]):
            best = i
    if best is None:
        raise InvariantViolation("Row of zeros in a group element")
    return best


def _split_diagonal(b: Mat, p: int, bound: int) -> Tuple[Tuple[int, ...], Tuple[Fraction, ...]]:
    exponents, units = [], []
    for i in range(len(b)):
        v = _v(b[i][i], p, bound)
        if v is None:
            raise InvariantViolation("Singular group element")
        exponents.append(v)
        units.append(b[i][i] / Fraction(p) ** v)
    return tuple(exponents), tuple(units)


def _finish(g: Mat, b: Mat, k_acc: Mat, p: int, bound: int):
    if not is_upper_triangular(b):
        raise InvariantViolation("Reduction did not reach the Borel subgroup")
    exponents, units = _split_diagonal(b, p, bound)
    d = diagonal([Fraction(p) ** e * a for e, a in zip(exponents, units)])
    n = mat_mul(b, mat_inv(d))
    k = mat_inv(k_acc)
    if mat_mul(mat_mul(n, d), k) != g:
        raise InvariantViolation("Iwasawa factors do not multiply back to g")
    return n, exponents, units, k


def iwasawa_decompose(g: Mat, p: int, max_valuation: int = DEFAULT_MAX_VALUATION) -> IwasawaResult:
    """
    Decompose a GSp4(Q_p) element.

    Raises:
        PrecisionExceeded: an entry has |valuation| above max_valuation
        InvariantViolation: g is singular
    """
    k_acc = identity(4)
    x = g

    def push(m: Mat):
        nonlocal x, k_acc
        x = mat_mul(x, m)
        k_acc = mat_mul(k_acc, m)

    # last row: move the entry of least valuation to column 4, then clear the rest
    push(weyl_to_last_column(_argmin([_v(e, p, max_valuation) for e in x[3]])))
    for column, root in _CLEARING:
        if x[3][column]:
            direction = mat_mul(x, unipotent(root, 1))[3][column] - x[3][column]
            push(unipotent(root, -x[3][column] / direction))

    # third row inside the Klingen Levi
    v32, v33 = _v(x[2][1], p, max_valuation), _v(x[2][2], p, max_valuation)
    if v32 is not None and (v33 is None or v32 < v33):
        push(S2)
    if x[2][1]:
        push(unipotent("-a2", -x[2][1] / x[2][2]))

    n, exponents, units, k = _finish(g, x, k_acc, p, max_valuation)
    torus = TorusExponent(exponents[0], exponents[1], exponents[0] + exponents[3])
    return IwasawaResult(n, torus, units, k)


def iwasawa_decompose_gl2(
    g: Mat, p: int, max_valuation: int = DEFAULT_MAX_VALUATION
) -> Tuple[Mat, int, int, Tuple[Fraction, ...], Mat]:
    """g = n diag(p^a, p^d) unit k for 2x2 g; returns (n, a, d, unit, k)."""
    k_acc = identity(2)
    x = g
    if _argmin([_v(e, p, max_valuation) for e in x[1]]) == 0:
        swap = gl2(0, 1, -1, 0)
        x, k_acc = mat_mul(x, swap), mat_mul(k_acc, swap)
    if x[1][0]:
        clear = gl2(1, 0, -x[1][0] / x[1][1], 1)
        x, k_acc = mat_mul(x, clear), mat_mul(k_acc, clear)
    n, exponents, units, k = _finish(g, x, k_acc, p, max_valuation)
    return n, exponents[0], exponents[1], units, k


def psi_average(x: Fraction, p: int) -> Fraction:
    """
    Average of psi(a x) over a in Z_p^x, for psi of conductor Z_p:
    1 on Z_p, -1/(p-1) on p^-1 Z_p^x, 0 below that.
    """
    if x == 0:
        return Fraction(1)
    v = valuation(x, p)
    if v >= 0:
        return Fraction(1)
    if v == -1:
        return Fraction(-1, p - 1)
    return Fraction(0)
