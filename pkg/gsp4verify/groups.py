"""
GSp4 and GL2 over Q_p, realised with exact rational matrices.

Conventions:
    J = antidiag(1, 1, -1, -1); g is in GSp4 when g^T J g = nu J.
    A torus exponent (e1, e2, e0) is diag(p^e1, p^e2, p^(e0-e2), p^(e0-e1)).
    Positive roots, as functionals on (e1, e2, e0):
        a1       = e1 - e2       E12 - E34   (short, simple)
        a2       = 2e2 - e0      E23         (long, simple)
        a1+a2    = e1 + e2 - e0  E13 + E24   (short)
        2a1+a2   = 2e1 - e0      E14         (long)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import Matrix, Rational

from .errors import InvariantViolation

Mat = Tuple[Tuple[Fraction, ...], ...]


# ============================================================================
# Matrix helpers
# ============================================================================

def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int = 4) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def diagonal(entries: Sequence) -> Mat:
    n = len(entries)
    return tuple(
        tuple(Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def elementary(n: int, i: int, j: int) -> Mat:
    """E_ij with 1-based indices."""
    return tuple(
        tuple(Fraction(int(r == i - 1 and c == j - 1)) for c in range(n)) for r in range(n)
    )


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Mat, s) -> Mat:
    s = Fraction(s)
    return tuple(tuple(x * s for x in row) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols)
                 for row in a)


def mat_prod(*factors: Mat) -> Mat:
    result = factors[0]
    for factor in factors[1:]:
        result = mat_mul(result, factor)
    return result


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def mat_inv(a: Mat) -> Mat:
    """Exact inverse through sympy."""
    inverse = Matrix([[Rational(x.numerator, x.denominator) for x in row] for row in a]).inv()
    return tuple(
        tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(len(a)))
        for i in range(len(a))
    )


def is_upper_triangular(a: Mat) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


# ============================================================================
# The symplectic form and similitude
# ============================================================================

J = mat([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])


def similitude(g: Mat) -> Fraction:
    """nu with g^T J g = nu J; raises if g is not a symplectic similitude."""
    form = mat_prod(transpose(g), J, g)
    nu = form[0][3]
    if nu == 0 or form != mat_scale(J, nu):
        raise InvariantViolation("Matrix is not a symplectic similitude for J")
    return nu


# ============================================================================
# Torus exponents
# ============================================================================

@dataclass(frozen=True, order=True)
class TorusExponent:
    """diag(p^e1, p^e2, p^(e0-e2), p^(e0-e1))."""
    e1: int
    e2: int
    e0: int

    @classmethod
    def from_diagonal(cls, d: Sequence[int]) -> "TorusExponent":
        """From the four diagonal exponents; checks the similitude pairing."""
        if d[0] + d[3] != d[1] + d[2]:
            raise InvariantViolation(f"Diagonal exponents {tuple(d)} are not symplectic")
        return cls(d[0], d[1], d[0] + d[3])

    def diagonal(self) -> Tuple[int, int, int, int]:
        return (self.e1, self.e2, self.e0 - self.e2, self.e0 - self.e1)

    def matrix(self, p: int) -> Mat:
        return diagonal([Fraction(p) ** k for k in self.diagonal()])

    def __add__(self, other: "TorusExponent") -> "TorusExponent":
        return TorusExponent(self.e1 + other.e1, self.e2 + other.e2, self.e0 + other.e0)

    def __sub__(self, other: "TorusExponent") -> "TorusExponent":
        return TorusExponent(self.e1 - other.e1, self.e2 - other.e2, self.e0 - other.e0)

    def __neg__(self) -> "TorusExponent":
        return TorusExponent(-self.e1, -self.e2, -self.e0)

    def scaled(self, k: int) -> "TorusExponent":
        return TorusExponent(k * self.e1, k * self.e2, k * self.e0)

    def root_value(self, root: str) -> int:
        c1, c2, c0 = ROOT_FUNCTIONALS[root]
        return c1 * self.e1 + c2 * self.e2 + c0 * self.e0

    def is_dominant(self) -> bool:
        """e1 >= e2 >= e0 - e2."""
        return self.e1 >= self.e2 >= self.e0 - self.e2

    def modulus_exponent(self) -> int:
        """m with delta_B(t) = p^(-m); delta_B^(1/2)(t) = u^(-m)."""
        return 4 * self.e1 + 2 * self.e2 - 3 * self.e0

    def __str__(self):
        return f"({self.e1},{self.e2},{self.e0})"


CENTRE = TorusExponent(1, 1, 2)
ORIGIN = TorusExponent(0, 0, 0)


# ============================================================================
# Roots and root subgroups
# ============================================================================

POSITIVE_ROOTS = ("a1", "a2", "a1+a2", "2a1+a2")
ROOTS = POSITIVE_ROOTS + tuple("-" + name for name in POSITIVE_ROOTS)

ROOT_FUNCTIONALS: Dict[str, Tuple[int, int, int]] = {
    "a1": (1, -1, 0),
    "a2": (0, 2, -1),
    "a1+a2": (1, 1, -1),
    "2a1+a2": (2, 0, -1),
}
ROOT_FUNCTIONALS.update(
    {"-" + name: tuple(-c for c in value) for name, value in list(ROOT_FUNCTIONALS.items())}
)


def _lie(*terms: Tuple[int, int, int]) -> Mat:
    result = mat([[0] * 4] * 4)
    for sign, i, j in terms:
        result = mat_add(result, mat_scale(elementary(4, i, j), sign))
    return result


ROOT_VECTORS: Dict[str, Mat] = {
    "a1": _lie((1, 1, 2), (-1, 3, 4)),
    "a2": _lie((1, 2, 3)),
    "a1+a2": _lie((1, 1, 3), (1, 2, 4)),
    "2a1+a2": _lie((1, 1, 4)),
    "-a1": _lie((1, 2, 1), (-1, 4, 3)),
    "-a2": _lie((1, 3, 2)),
    "-a1+a2": _lie((1, 3, 1), (1, 4, 2)),
    "-2a1+a2": _lie((1, 4, 1)),
}


def root_vector(root: str) -> Mat:
    return ROOT_VECTORS[_canonical_root(root)]


def _canonical_root(root: str) -> str:
    if root in ROOT_VECTORS:
        return root
    raise InvariantViolation(f"Unknown root {root!r}")


def unipotent(root: str, s) -> Mat:
    """x_root(s) = I + s X_root (every root vector squares to zero)."""
    return mat_add(identity(4), mat_scale(root_vector(root), s))


def negative(root: str) -> str:
    return root[1:] if root.startswith("-") else "-" + root


def weyl_lift(root: str) -> Mat:
    """x_root(1) x_-root(-1) x_root(1), an integral lift of the reflection."""
    return mat_prod(unipotent(root, 1), unipotent(negative(root), -1), unipotent(root, 1))


def torus_unit(kind: str, a) -> Mat:
    """Unit torus generators: 't1' diag(a,1,1,1/a), 't2' diag(1,a,1/a,1), 'nu' diag(1,1,a,a)."""
    a = Fraction(a)
    entries = {
        "t1": (a, 1, 1, 1 / a),
        "t2": (1, a, 1 / a, 1),
        "nu": (1, 1, a, a),
    }[kind]
    return diagonal(entries)


# ============================================================================
# Weyl group
# ============================================================================

S1 = weyl_lift("a1")
S2 = weyl_lift("a2")
SIMPLE_REFLECTIONS = {"s1": S1, "s2": S2}


def column_permutation(w: Mat) -> Tuple[int, ...]:
    """sigma with w e_j = +-e_sigma(j) (0-based)."""
    sigma = []
    for j in range(len(w)):
        rows = [i for i in range(len(w)) if w[i][j] != 0]
        if len(rows) != 1:
            raise InvariantViolation("Not a monomial matrix")
        sigma.append(rows[0])
    return tuple(sigma)


def weyl_act(w: Mat, t: TorusExponent) -> TorusExponent:
    """Exponents of w t w^-1."""
    sigma = column_permutation(w)
    old = t.diagonal()
    new = [0] * 4
    for j, image in enumerate(sigma):
        new[image] = old[j]
    return TorusExponent.from_diagonal(new)


@dataclass(frozen=True)
class WeylElement:
    word: Tuple[str, ...]
    matrix: Mat

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def act(self, t: TorusExponent) -> TorusExponent:
        return weyl_act(self.matrix, t)


@lru_cache(maxsize=None)
def weyl_group() -> Tuple[WeylElement, ...]:
    """The 8 elements, shortest words first, each with an integral lift."""
    seen = {column_permutation(identity(4)): WeylElement((), identity(4))}
    frontier = [seen[column_permutation(identity(4))]]
    while frontier:
        nxt = []
        for element in frontier:
            for name in ("s1", "s2"):
                product = mat_mul(element.matrix, SIMPLE_REFLECTIONS[name])
                key = column_permutation(product)
                if key not in seen:
                    seen[key] = WeylElement(element.word + (name,), product)
                    nxt.append(seen[key])
        frontier = nxt
    elements = sorted(seen.values(), key=lambda w: (w.length, w.word))
    if len(elements) != 8:
        raise InvariantViolation(f"Weyl group has {len(elements)} elements, expected 8")
    return tuple(elements)


def weyl_to_last_column(j: int) -> Mat:
    """A Weyl lift whose last column is +-e_j."""
    for element in weyl_group():
        if column_permutation(element.matrix)[3] == j:
            return element.matrix
    raise InvariantViolation(f"No Weyl element moves column {j} to position 4")


# ============================================================================
# GL2
# ============================================================================

def gl2(a, b, c, d) -> Mat:
    return mat([[a, b], [c, d]])


def list_positive_roots() -> List[str]:
    return list(POSITIVE_ROOTS)
