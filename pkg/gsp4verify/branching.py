"""
Polynomial models of the algebraic representations of GL2, H and GSp4.

Functions on a group are polynomials in the formal matrix entries g_ij. A Lie
algebra element X acts by the right-translation derivation

    (X . f)(g) = d/dt f(g exp(tX)) at t = 0 = sum_ij (gX)_ij df/dg_ij,

so every vector here is an honest polynomial and every identity is checked by
expanding it. No symplectic relations are imposed on the entries.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from .errors import DegreeBudgetExceeded, InvariantViolation, RangeViolation
from .groups import J, Mat, elementary, mat_add, mat_mul, mat_scale, root_vector, transpose
from .log import get_logger

log = get_logger("branching")

FIRST_SLOT = "first_slot"
SECOND_SLOT = "second_slot"
SIDES = (FIRST_SLOT, SECOND_SLOT)

DEFAULT_DEGREE_BUDGET = 8


@lru_cache(maxsize=None)
def _ring(size: int):
    names = ",".join(f"g{i}{j}" for i in range(1, size + 1) for j in range(1, size + 1))
    R, *gens = ring(names, QQ)
    return R, tuple(gens)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


# ============================================================================
# Functions and Lie elements
# ============================================================================

@dataclass(frozen=True)
class MatrixFunction:
    """A polynomial in the entries of a size x size matrix."""
    size: int
    poly: object

    @classmethod
    def entry(cls, i: int, j: int, size: int = 4) -> "MatrixFunction":
        """The coordinate function g -> g_ij (1-based)."""
        _, gens = _ring(size)
        return cls(size, gens[(i - 1) * size + (j - 1)])

    @classmethod
    def constant(cls, c, size: int = 4) -> "MatrixFunction":
        R, _ = _ring(size)
        c = Fraction(c)
        return cls(size, R(QQ(c.numerator, c.denominator)))

    @classmethod
    def minor(cls, rows: Tuple[int, int], cols: Tuple[int, int], size: int = 4) -> "MatrixFunction":
        """The 2x2 minor with the given 1-based rows and columns."""
        (i, k), (j, l) = rows, cols
        e = cls.entry
        return e(i, j, size) * e(k, l, size) - e(i, l, size) * e(k, j, size)

    def _check(self, other: "MatrixFunction"):
        if self.size != other.size:
            raise InvariantViolation("Functions on matrices of different sizes combined")

    def __add__(self, other: "MatrixFunction") -> "MatrixFunction":
        self._check(other)
        return MatrixFunction(self.size, self.poly + other.poly)

    def __sub__(self, other: "MatrixFunction") -> "MatrixFunction":
        self._check(other)
        return MatrixFunction(self.size, self.poly - other.poly)

    def __neg__(self) -> "MatrixFunction":
        return MatrixFunction(self.size, -self.poly)

    def __mul__(self, other: "MatrixFunction") -> "MatrixFunction":
        self._check(other)
        return MatrixFunction(self.size, self.poly * other.poly)

    def __pow__(self, n: int) -> "MatrixFunction":
        if n < 0:
            raise RangeViolation("Negative power of a matrix function")
        return MatrixFunction(self.size, self.poly ** n)

    def scale(self, c) -> "MatrixFunction":
        c = Fraction(c)
        return MatrixFunction(self.size, self.poly * QQ(c.numerator, c.denominator))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixFunction):
            return NotImplemented
        return self.size == other.size and self.poly == other.poly

    def __hash__(self):
        return hash((self.size, tuple(sorted(self.terms().items()))))

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def terms(self) -> Dict[Tuple[int, ...], Fraction]:
        """Exponent vector (row-major over g_ij) -> coefficient."""
        return {monom: _to_fraction(c) for monom, c in self.poly.terms()}

    def coefficient(self, exponents: Dict[Tuple[int, int], int]) -> Fraction:
        """Coefficient of prod g_ij^e_ij, keyed by 1-based (i, j)."""
        monom = [0] * (self.size * self.size)
        for (i, j), e in exponents.items():
            monom[(i - 1) * self.size + (j - 1)] = e
        return self.terms().get(tuple(monom), Fraction(0))

    @property
    def degree(self) -> int:
        if self.is_zero:
            return 0
        return max(sum(monom) for monom in self.terms())

    def column_content(self, monom: Tuple[int, ...]) -> Tuple[int, ...]:
        n = self.size
        return tuple(sum(monom[i * n + j] for i in range(n)) for j in range(n))

    def weight(self) -> Optional[Tuple[int, ...]]:
        """
        Weight under right multiplication by the diagonal torus.

        For 4x4 matrices this is the symplectic weight (c1 - c4, c2 - c3, c3 + c4)
        in the (e1, e2, e0) coordinates; for GL2 it is the column content. None
        when the terms do not share a weight.
        """
        weights = set()
        for monom in self.terms():
            c = self.column_content(monom)
            if self.size == 4:
                weights.add((c[0] - c[3], c[1] - c[2], c[2] + c[3]))
            else:
                weights.add(c)
        if len(weights) > 1:
            return None
        return weights.pop() if weights else None

    def __repr__(self) -> str:
        return f"MatrixFunction({self.poly})"


@dataclass(frozen=True)
class LieElement:
    """A matrix X in gl_n, acting on functions by right-translation derivation."""
    name: str
    matrix: Mat

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def is_symplectic(self) -> bool:
        """X^T J + J X = 0 for the antidiagonal form."""
        if self.size != 4:
            return False
        total = mat_add(mat_mul(transpose(self.matrix), J), mat_mul(J, self.matrix))
        return all(x == 0 for row in total for x in row)


def _lie(name: str, *terms: Tuple[int, int, int], size: int = 4) -> LieElement:
    m = tuple(tuple(Fraction(0) for _ in range(size)) for _ in range(size))
    for sign, i, j in terms:
        m = mat_add(m, mat_scale(elementary(size, i, j), sign))
    return LieElement(name, m)


X12 = LieElement("X12", root_vector("a1"))
X41 = _lie("X41", (1, 4, 1))
X32 = _lie("X32", (1, 3, 2))
X21 = _lie("X21", (1, 2, 1), size=2)

LIE_ELEMENTS = {X.name: X for X in (X12, X41, X32, X21)}


def lie_act(X: LieElement, f: MatrixFunction) -> MatrixFunction:
    """sum_ij (gX)_ij df/dg_ij."""
    n = f.size
    if X.size != n:
        raise InvariantViolation(f"{X.name} does not act on functions of {n}x{n} matrices")
    _, gens = _ring(n)
    R, _ = _ring(n)
    result = R.zero
    for j in range(n):
        for k in range(n):
            x = X.matrix[k][j]
            if x == 0:
                continue
            c = QQ(x.numerator, x.denominator)
            for i in range(n):
                result += c * gens[i * n + k] * f.poly.diff(gens[i * n + j])
    return MatrixFunction(n, result)


def lie_power(X: LieElement, f: MatrixFunction, n: int) -> MatrixFunction:
    for _ in range(n):
        if f.is_zero:
            break
        f = lie_act(X, f)
    return f


def killing_depth(f: MatrixFunction, X: LieElement = X12) -> int:
    """
    Smallest m with X^(m+1) . f = 0.

    The zero function has depth -1. Terminates because X12 strictly raises the
    torus weight.
    """
    if f.is_zero:
        return -1
    m = 0
    current = lie_act(X, f)
    while not current.is_zero:
        m += 1
        current = lie_act(X, current)
    return m


# ============================================================================
# Named vectors
# ============================================================================

def v(i: int) -> MatrixFunction:
    """v_i: the i-th entry of the first row."""
    return MatrixFunction.entry(1, i)


def p_minor(i: int, j: int) -> MatrixFunction:
    """Minor on rows (1, 2) and columns (i, j)."""
    return MatrixFunction.minor((1, 2), (i, j))


def w() -> MatrixFunction:
    return p_minor(1, 2)


def w_prime() -> MatrixFunction:
    """
    w' = p14 - p23, writing pij for p_minor(i, j) = |g1i g1j; g2i g2j|.

    The minor |g13 g14; g23 g24| is p34 in these labels. X12 kills p34, so it
    cannot be the middle step of w'' -> -w' -> 2w- -> 0.
    """
    return p_minor(1, 4) - p_minor(2, 3)


def w_minus() -> MatrixFunction:
    return p_minor(1, 3)


def w_double_prime() -> MatrixFunction:
    return -p_minor(2, 4)


NAMED_VECTORS = {
    "v1": lambda: v(1),
    "v2": lambda: v(2),
    "v3": lambda: v(3),
    "v4": lambda: v(4),
    "w": w,
    "w'": w_prime,
    "w-": w_minus,
    "w''": w_double_prime,
}


def gl2_v() -> MatrixFunction:
    return MatrixFunction.entry(1, 1, size=2)


def gl2_w() -> MatrixFunction:
    return MatrixFunction.entry(1, 2, size=2)


@dataclass(frozen=True)
class WeightVector:
    """A function tagged with the representation it lives in."""
    function: MatrixFunction
    label: str
    datum: Tuple[int, ...]

    @property
    def weight(self) -> Optional[Tuple[int, ...]]:
        return self.function.weight()


def sym_vector(k: int, i: int) -> WeightVector:
    """v^(k-i) w^i in Sym^k of the standard GL2 representation."""
    if not 0 <= i <= k:
        raise RangeViolation(f"Need 0 <= i <= k, got i={i}, k={k}")
    return WeightVector(gl2_v() ** (k - i) * gl2_w() ** i, "Sym", (k,))


# ============================================================================
# The branching map
# ============================================================================

def check_range(r1: int, r2: int, q: int, r: int):
    if r2 < 0 or r1 < r2:
        raise RangeViolation(f"Need r1 >= r2 >= 0, got ({r1}, {r2})")
    if not 0 <= q <= r2:
        raise RangeViolation(f"Need 0 <= q <= r2, got q={q}, r2={r2}")
    if not 0 <= r <= r1 - r2:
        raise RangeViolation(f"Need 0 <= r <= r1 - r2, got r={r}, r1 - r2={r1 - r2}")


def branching_vector(r1: int, r2: int, q: int, r: int) -> MatrixFunction:
    """w^(r2-q) (w')^q v1^(r1-r2-r) v2^r, the image of the highest weight vector."""
    check_range(r1, r2, q, r)
    return w() ** (r2 - q) * w_prime() ** q * v(1) ** (r1 - r2 - r) * v(2) ** r


def slot_degrees(r1: int, r2: int, q: int, r: int) -> Tuple[int, int]:
    """(t1, t2): the Sym degrees of the two GL2 factors of H."""
    return r1 - q - r, r2 - q + r


def branching_image(r1: int, r2: int, q: int, r: int, side: str, t: int) -> MatrixFunction:
    """
    Image in V_G of v^(t1-t) w^t (x) v^t2 (first slot) or v^t1 (x) v^(t2-t) w^t.

    Equivariance gives ((ti - t)!/ti!) X^t . v^[q,r] with X = X41 or X32.
    """
    check_range(r1, r2, q, r)
    t1, t2 = slot_degrees(r1, r2, q, r)
    if side == FIRST_SLOT:
        ti, X = t1, X41
    elif side == SECOND_SLOT:
        ti, X = t2, X32
    else:
        raise RangeViolation(f"Unknown side {side!r}; expected one of {SIDES}")
    if not 0 <= t <= ti:
        raise RangeViolation(f"Need 0 <= t <= {ti}, got t={t}")
    lifted = lie_power(X, branching_vector(r1, r2, q, r), t)
    return lifted.scale(Fraction(factorial(ti - t), factorial(ti)))


def projection_target(r1: int, r2: int) -> MatrixFunction:
    """v1^(r1-r2) (w-)^r2, sent to the basis vector v^(r1+r2)."""
    return v(1) ** (r1 - r2) * w_minus() ** r2


def projection_index(r1: int, r2: int, q: int, r: int, side: str) -> int:
    return 2 * r2 - q + r if side == FIRST_SLOT else q + r


def closed_form_coefficient(r1: int, r2: int, q: int, r: int, side: str) -> Fraction:
    """(-2)^q / C(ti, t) with t = r2 - q."""
    check_range(r1, r2, q, r)
    t1, t2 = slot_degrees(r1, r2, q, r)
    ti = t1 if side == FIRST_SLOT else t2
    return Fraction((-2) ** q, comb(ti, r2 - q))


@dataclass(frozen=True)
class ProjectionCoefficient:
    r1: int
    r2: int
    q: int
    r: int
    side: str
    index: int
    closed_form: Fraction
    brute_force: Fraction
    exact_multiple: bool
    killing_depth: int

    @property
    def match(self) -> bool:
        return self.closed_form == self.brute_force

    def to_dict(self) -> dict:
        return {
            "tuple": [self.r1, self.r2, self.q, self.r],
            "side": self.side,
            "index": self.index,
            "closed_form": str(self.closed_form),
            "brute_force": str(self.brute_force),
            "match": self.match,
            "exact_multiple": self.exact_multiple,
            "killing_depth": self.killing_depth,
        }


def projection_coefficient(
    r1: int,
    r2: int,
    q: int,
    r: int,
    side: str = FIRST_SLOT,
    budget: int = DEFAULT_DEGREE_BUDGET,
) -> ProjectionCoefficient:
    """
    Coefficient of br^[q,r](slot vector) on v^(r1+r2) in W_G(r1, -r2; r1 + r2).

    Brute force: expand the slot vector, apply X12 index times, read the
    coefficient of g11^r1 g23^r2 (which is 1 in the target) and divide by
    index!.
    """
    check_range(r1, r2, q, r)
    if r1 + r2 > budget:
        raise DegreeBudgetExceeded(f"r1 + r2 = {r1 + r2} exceeds the degree budget {budget}")

    index = projection_index(r1, r2, q, r, side)
    vector = branching_image(r1, r2, q, r, side, r2 - q)
    image = lie_power(X12, vector, index)

    raw = image.coefficient({(1, 1): r1, (2, 3): r2})
    target = projection_target(r1, r2)
    result = ProjectionCoefficient(
        r1=r1,
        r2=r2,
        q=q,
        r=r,
        side=side,
        index=index,
        closed_form=closed_form_coefficient(r1, r2, q, r, side),
        brute_force=raw / factorial(index),
        exact_multiple=image == target.scale(raw),
        killing_depth=killing_depth(vector),
    )
    log.debug(
        "Projection coefficient",
        tuple=(r1, r2, q, r),
        side=side,
        index=index,
        match=result.match,
    )
    return result


def admissible_tuples(budget: int = DEFAULT_DEGREE_BUDGET) -> Iterator[Tuple[int, int, int, int]]:
    """All (r1, r2, q, r) with r1 >= r2 >= 0 and r1 + r2 <= budget."""
    for total in range(budget + 1):
        for r2 in range(total // 2 + 1):
            r1 = total - r2
            for q in range(r2 + 1):
                for r in range(r1 - r2 + 1):
                    yield r1, r2, q, r


def branching_table(budget: int = DEFAULT_DEGREE_BUDGET) -> List[ProjectionCoefficient]:
    entries = [
        projection_coefficient(*tup, side=side, budget=budget)
        for tup in admissible_tuples(budget)
        for side in SIDES
    ]
    failed = sum(1 for e in entries if not e.match)
    log.info("Branching table built", entries=len(entries), failed=failed, budget=budget)
    return entries
