"""
Lattice chains, parahoric subgroups and canonical coset labels.

A parahoric K is the stabiliser in GSp4(Q_p) of a chain of lattices
L_S = span(e_i : i in S) + p Z_p^4 together with L_0 = Z_p^4. Left cosets xK
are labelled by the column Hermite normal forms of the lattices x L_S, which
are exact and hashable.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Sequence, Tuple

from sympy import mod_inverse, primitive_root

from ..algebra import valuation
from ..errors import InvariantViolation, PrecisionExceeded
from ..groups import (
    ROOTS,
    TorusExponent,
    Mat,
    diagonal,
    identity,
    mat_inv,
    mat_mul,
    root_vector,
    torus_unit,
    unipotent,
)

ChainLabel = Tuple[Mat, ...]
CellKey = Tuple[FrozenSet[int], ...]


class ParahoricTag(Enum):
    """The four parahoric levels, each given by its chain of coordinate subspaces."""
    HYPERSPECIAL = "hyp"
    KLINGEN = "kl"
    SIEGEL = "sieg"
    IWAHORI = "iw"

    @classmethod
    def from_name(cls, name: str) -> "ParahoricTag":
        lowered = name.lower()
        for tag in cls:
            if lowered in (tag.value, tag.name.lower()):
                return tag
        raise InvariantViolation(f"Unknown parahoric level {name!r}")

    @property
    def chain(self) -> Tuple[FrozenSet[int], ...]:
        """0-based index sets S of the lattices L_S beyond L_0."""
        return _CHAINS[self]

    @property
    def cell_count(self) -> int:
        return {"hyp": 1, "kl": 4, "sieg": 4, "iw": 8}[self.value]


_CHAINS = {
    ParahoricTag.HYPERSPECIAL: (),
    ParahoricTag.KLINGEN: (frozenset({0}),),
    ParahoricTag.SIEGEL: (frozenset({0, 1}),),
    ParahoricTag.IWAHORI: (frozenset({0}), frozenset({0, 1})),
}


# ============================================================================
# p-adic residues
# ============================================================================

def _v(x: Fraction, p: int) -> int:
    return valuation(x, p)


def residue_class(m: Fraction, a: int, p: int) -> Fraction:
    """
    Canonical representative of m modulo p^a Z_(p).

    The representative is r / p^e with 0 <= r < p^(a+e), where p^e clears the
    p-part of the denominator of m.
    """
    m = Fraction(m)
    if m == 0:
        return Fraction(0)
    e = max(0, -_v(m, p))
    if a + e <= 0:
        return Fraction(0)
    modulus = p ** (a + e)
    scaled = m * Fraction(p) ** e
    unit_den = scaled.denominator
    r = (scaled.numerator * mod_inverse(unit_den, modulus)) % modulus
    return Fraction(r, p ** e)


def reduce_mod_p(x: Fraction, p: int) -> int:
    """Image of a p-integral rational in F_p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise InvariantViolation(f"{x} is not p-integral for p={p}")
    return (x.numerator * mod_inverse(x.denominator, p)) % p


# ============================================================================
# Column Hermite normal form over Z_(p)
# ============================================================================

def hnf(m: Mat, p: int) -> Mat:
    """
    Canonical upper-triangular basis of the Z_p-lattice spanned by the columns of m.

    Diagonal entries are exact powers of p; the entries above the diagonal in
    row r are reduced modulo the diagonal entry of row r.
    """
    n = len(m)
    cols = [list(col) for col in zip(*m)]
    exponents = [0] * n

    for i in range(n - 1, -1, -1):
        candidates = [j for j in range(i + 1) if cols[j][i] != 0]
        if not candidates:
            raise InvariantViolation("Lattice basis is singular")
        pivot = min(candidates, key=lambda j: (_v(cols[j][i], p), j))
        cols[i], cols[pivot] = cols[pivot], cols[i]

        a = _v(cols[i][i], p)
        scale = Fraction(p) ** a / cols[i][i]
        cols[i] = [x * scale for x in cols[i]]
        exponents[i] = a

        for j in range(i):
            factor = cols[j][i] / cols[i][i]
            if factor:
                cols[j] = [x - factor * y for x, y in zip(cols[j], cols[i])]

    for i in range(n):
        for r in range(i - 1, -1, -1):
            entry = cols[i][r]
            target = residue_class(entry, exponents[r], p)
            if entry != target:
                k = (entry - target) / cols[r][r]
                cols[i] = [x - k * y for x, y in zip(cols[i], cols[r])]

    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def hnf_exponents(h: Mat, p: int) -> Tuple[int, ...]:
    return tuple(_v(h[i][i], p) for i in range(len(h)))


# ============================================================================
# Chains, labels and membership
# ============================================================================

@lru_cache(maxsize=None)
def chain_bases(tag: ParahoricTag, p: int) -> Tuple[Mat, ...]:
    """Column bases of L_0 and of every L_S in the chain."""
    bases = [identity(4)]
    for subset in tag.chain:
        bases.append(diagonal([1 if i in subset else p for i in range(4)]))
    return tuple(bases)


def chain_label(x: Mat, tag: ParahoricTag, p: int) -> ChainLabel:
    """Label of the left coset xK."""
    return tuple(hnf(mat_mul(x, basis), p) for basis in chain_bases(tag, p))


def contains(tag: ParahoricTag, k: Mat, p: int) -> bool:
    """k lies in K exactly when it fixes every lattice of the chain."""
    return chain_label(k, tag, p) == chain_label(identity(4), tag, p)


def _preserves_chain(x: Mat, tag: ParahoricTag) -> bool:
    """Does the integral matrix x map each span(e_i : i in S) into itself mod p?"""
    for subset in tag.chain:
        for j in subset:
            for i in range(4):
                if x[i][j] != 0 and i not in subset:
                    return False
    return True


def root_in_parahoric(tag: ParahoricTag, root: str) -> bool:
    """True when x_root(Z_p) lies in K; otherwise only x_root(p Z_p) does."""
    return _preserves_chain(root_vector(root), tag)


def unit_generators(p: int) -> List[int]:
    if p == 2:
        return [-1, 5]
    return [int(primitive_root(p * p))]


@lru_cache(maxsize=None)
def generators(tag: ParahoricTag, p: int) -> Tuple[Mat, ...]:
    """
    Topological generators of K: unit torus elements and one root-group
    element per root, x_root(1) or x_root(p).
    """
    gens: List[Mat] = []
    for a in unit_generators(p):
        for kind in ("t1", "t2", "nu"):
            gens.append(torus_unit(kind, a))
    for root in ROOTS:
        gens.append(unipotent(root, 1 if root_in_parahoric(tag, root) else p))
    return tuple(gens)


# ============================================================================
# Cells of B(Z_p) \ G(Z_p) / K
# ============================================================================

def iwasawa_exponents(x: Mat, p: int) -> TorusExponent:
    """Torus exponents of b in any factorisation x = b k, read off HNF(x Z_p^4)."""
    a = hnf_exponents(hnf(x, p), p)
    return TorusExponent(a[0], a[1], a[0] + a[3])


def subspace_pivots(vectors: Sequence[Sequence[int]], p: int) -> FrozenSet[int]:
    """
    Last-nonzero indices of an echelon basis of the span of vectors in F_p^n.

    These record the relative position with respect to the standard flag, which
    is invariant under upper-triangular row operations.
    """
    basis = {}
    for vector in vectors:
        v = [x % p for x in vector]
        while any(v):
            last = max(i for i, x in enumerate(v) if x)
            if last not in basis:
                basis[last] = v
                break
            pivot = basis[last]
            factor = (v[last] * mod_inverse(pivot[last], p)) % p
            v = [(x - factor * y) % p for x, y in zip(v, pivot)]
    return frozenset(basis)


def cell_key(x: Mat, tag: ParahoricTag, p: int) -> CellKey:
    """The B(Q_p) x K double coset containing x, as a tuple of pivot sets."""
    return _cell_key_from(hnf(x, p), x, tag, p)


def _cell_key_from(h: Mat, x: Mat, tag: ParahoricTag, p: int) -> CellKey:
    unit = mat_mul(mat_inv(h), x)
    key = []
    for subset, basis in zip(tag.chain, chain_bases(tag, p)[1:]):
        image = mat_mul(unit, basis)
        columns = [
            [reduce_mod_p(image[i][j], p) for i in range(4)]
            for j in range(4)
            if j in subset
        ]
        key.append(subspace_pivots(columns, p))
    return tuple(key)


# ============================================================================
# Matrices modulo p^k
# ============================================================================

@dataclass(frozen=True)
class MatrixModPk:
    """A 4x4 integral matrix reduced modulo p^k, as exported in coset lists."""
    entries: Tuple[Tuple[int, ...], ...]
    p: int
    k: int

    @classmethod
    def reduce(cls, m: Mat, p: int, k: int) -> "MatrixModPk":
        modulus = p ** k
        rows = []
        for row in m:
            out = []
            for x in row:
                if x.denominator % p == 0:
                    raise PrecisionExceeded(f"Entry {x} is not p-integral")
                out.append((x.numerator * mod_inverse(x.denominator, modulus)) % modulus)
            rows.append(tuple(out))
        return cls(tuple(rows), p, k)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


def cell_and_torus(x: Mat, tag: ParahoricTag, p: int) -> Tuple[CellKey, TorusExponent]:
    """cell_key and iwasawa_exponents sharing one normal form."""
    h = hnf(x, p)
    a = hnf_exponents(h, p)
    return _cell_key_from(h, x, tag, p), TorusExponent(a[0], a[1], a[0] + a[3])
