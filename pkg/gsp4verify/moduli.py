"""
Ordinary Klingen-level moduli points as Tate-module lattices.

An H-point (E1, E2, alpha) is a pair of lattices L_i in Q_p^2 with basis
(e_i, f_i); the formal group of E_i has Tate module L_i meet Q_p e_i and alpha
identifies the p-torsion of the two formal parts. A G-point (A, C) is a lattice
L in Q_p^4 with coordinates (e1, e2, f1, f2), multiplicative part
M = L meet span(e1, e2), and an order-p subgroup C of (1/p)M/M, stored as the
lattice M + Z_p c. Quotienting by a finite subgroup is passing to the lattice
it spans over L.

The prime-to-p level structure is carried by the lattice class itself, so
<p> acts by L -> (1/p) L.
"""

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import valuation
from .errors import InvariantViolation, NonOrdinary, PrecisionExceeded
from .groups import Mat, mat_inv, mat_mul, transpose
from .log import get_logger
from .parahoric.lattice import hnf, hnf_exponents, reduce_mod_p

log = get_logger("moduli")

Vector = Tuple[Fraction, ...]

DEFAULT_MAX_VALUATION = 64


# ============================================================================
# Lattice helpers
# ============================================================================

def _vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _scaled(x: Vector, c) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def _added(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def columns(m: Mat) -> List[Vector]:
    return [tuple(col) for col in zip(*m)]


def span(vectors: Iterable[Vector], p: int, max_valuation: int = DEFAULT_MAX_VALUATION) -> Mat:
    """Canonical basis of the Z_p-span of any full-rank family of vectors."""
    remaining = [list(v) for v in vectors]
    if not remaining:
        raise InvariantViolation("Empty generating set")
    n = len(remaining[0])
    chosen: List[Optional[List[Fraction]]] = [None] * n

    for i in range(n - 1, -1, -1):
        candidates = [k for k, col in enumerate(remaining) if col[i] != 0]
        if not candidates:
            raise InvariantViolation("Generating set does not span a full-rank lattice")
        pivot_index = min(candidates, key=lambda k: valuation(remaining[k][i], p))
        pivot = remaining.pop(pivot_index)
        for col in remaining:
            factor = col[i] / pivot[i]
            if factor:
                for r in range(n):
                    col[r] -= factor * pivot[r]
        chosen[i] = pivot

    basis = tuple(tuple(chosen[j][i] for j in range(n)) for i in range(n))
    result = hnf(basis, p)
    _check_precision(result, p, max_valuation)
    return result


def _check_precision(m: Mat, p: int, max_valuation: int):
    for row in m:
        for x in row:
            if x and abs(valuation(x, p)) > max_valuation:
                raise PrecisionExceeded(
                    f"Lattice entry {x} has valuation beyond {max_valuation} at p={p}"
                )


def scale_lattice(m: Mat, c, p: int) -> Mat:
    return span([_scaled(col, c) for col in columns(m)], p)


def lattice_contains(big: Mat, small: Mat, p: int) -> bool:
    return span(columns(big) + columns(small), p) == big


def index_exponent(small: Mat, big: Mat, p: int) -> int:
    """log_p [big : small] for small inside big."""
    return sum(hnf_exponents(small, p)) - sum(hnf_exponents(big, p))


def subgroup_invariants(small: Mat, big: Mat, p: int) -> Tuple[int, ...]:
    """Orders of the cyclic factors of big/small, largest first."""
    if not lattice_contains(big, small, p):
        raise InvariantViolation("Quotient requested for lattices that are not nested")
    sizes = []
    k = 0
    while True:
        image = span(columns(scale_lattice(big, Fraction(p) ** k, p)) + columns(small), p)
        sizes.append(index_exponent(small, image, p))
        if sizes[-1] == 0:
            break
        k += 1
    # sizes[k] - sizes[k+1] counts the factors of exponent greater than k
    at_least = [sizes[k] - sizes[k + 1] for k in range(len(sizes) - 1)] + [0]
    exponents: List[int] = []
    for k in range(len(at_least) - 1, 0, -1):
        exponents += [k] * (at_least[k - 1] - at_least[k])
    return tuple(p ** e for e in exponents)


def coordinates(m: Mat, x: Vector) -> Vector:
    """Coefficients of x in the column basis of m."""
    inverse = mat_inv(m)
    return tuple(sum(inverse[i][j] * x[j] for j in range(len(x))) for i in range(len(x)))


def _combine(m: Mat, coeffs: Sequence, c=1) -> Vector:
    cols = columns(m)
    total = tuple(Fraction(0) for _ in cols)
    for a, col in zip(coeffs, cols):
        if a:
            total = _added(total, _scaled(col, a))
    return _scaled(total, c)


# ============================================================================
# Linear algebra over F_p
# ============================================================================

def nullspace_mod_p(rows: Sequence[Sequence[int]], n: int, p: int) -> List[Tuple[int, ...]]:
    """Basis of {x in F_p^n : row . x = 0 for every row}."""
    work = [[a % p for a in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for col in range(n):
        pick = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pick is None:
            continue
        work[r], work[pick] = work[pick], work[r]
        inv = pow(work[r][col], -1, p)
        work[r] = [(a * inv) % p for a in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1

    basis = []
    for free in (c for c in range(n) if c not in pivots):
        x = [0] * n
        x[free] = 1
        for i, col in enumerate(pivots):
            x[col] = (-work[i][free]) % p
        basis.append(tuple(x))
    return basis


def _independent_mod_p(x: Sequence[int], y: Sequence[int], p: int) -> bool:
    return any((x[i] * y[j] - x[j] * y[i]) % p for i in range(len(x)) for j in range(len(x)))


# ============================================================================
# Points
# ============================================================================

@dataclass(frozen=True)
class ModuliPointH:
    """(E1, E2, alpha) with alpha(eps1/p) = lam * eps2/p on formal generators."""
    p: int
    L1: Mat
    L2: Mat
    lam: int

    @classmethod
    def create(cls, p: int, L1, L2, lam: int = 1, max_valuation: int = DEFAULT_MAX_VALUATION):
        if lam % p == 0:
            raise InvariantViolation("alpha must be an isomorphism of order-p groups")
        return cls(
            p,
            span(columns(_as_mat(L1)), p, max_valuation),
            span(columns(_as_mat(L2)), p, max_valuation),
            lam % p,
        )

    @classmethod
    def standard(cls, p: int, lam: int = 1) -> "ModuliPointH":
        return cls.create(p, ((1, 0), (0, 1)), ((1, 0), (0, 1)), lam)

    def factor(self, i: int) -> Mat:
        return self.L1 if i == 1 else self.L2

    def formal_generator(self, i: int) -> Vector:
        """Generator of L_i meet Q_p e_i: the first canonical basis vector."""
        return columns(self.factor(i))[0]

    def pairing_exponent(self, i: int) -> int:
        """s with p^s times the standard form unimodular on L_i."""
        return -sum(hnf_exponents(self.factor(i), self.p))

    def scaled(self, c) -> "ModuliPointH":
        return ModuliPointH(
            self.p, scale_lattice(self.L1, c, self.p), scale_lattice(self.L2, c, self.p), self.lam
        )

    def sort_key(self) -> str:
        return repr((self.L1, self.L2, self.lam))

    def to_dict(self) -> dict:
        return {
            "L1": _mat_rows(self.L1),
            "L2": _mat_rows(self.L2),
            "lambda": self.lam,
        }


@dataclass(frozen=True)
class ModuliPointG:
    """(A, C): lattice L, subgroup lattice M + Z_p c in span(e1, e2), pairing exponents."""
    p: int
    lattice: Mat
    subgroup: Mat
    pairing: Tuple[int, int]

    @classmethod
    def create(
        cls,
        p: int,
        lattice: Mat,
        c: Vector,
        pairing: Tuple[int, int] = (0, 0),
        max_valuation: int = DEFAULT_MAX_VALUATION,
    ) -> "ModuliPointG":
        lattice = span(columns(lattice), p, max_valuation)
        if c[2] != 0 or c[3] != 0:
            raise NonOrdinary("C must lie in the multiplicative part span(e1, e2)")
        M = multiplicative_part(lattice)
        c2 = (c[0], c[1])
        subgroup = span(columns(M) + [c2], p, max_valuation)
        if index_exponent(M, subgroup, p) != 1:
            raise NonOrdinary("C must be an order-p subgroup of the multiplicative p-torsion")
        if not lattice_contains(scale_lattice(M, Fraction(1, p), p), subgroup, p):
            raise NonOrdinary("C is not killed by p")
        low = min(pairing)
        return cls(p, lattice, subgroup, (pairing[0] - low, pairing[1] - low))

    @property
    def multiplicative(self) -> Mat:
        return multiplicative_part(self.lattice)

    @property
    def generator(self) -> Vector:
        """A vector c in W with C = <c> modulo M."""
        M = self.multiplicative
        for col in columns(self.subgroup):
            if not _in_lattice(M, col, self.p):
                return (col[0], col[1], Fraction(0), Fraction(0))
        raise InvariantViolation("Subgroup lattice equals the multiplicative part")

    def form(self) -> Mat:
        s1, s2 = self.pairing
        a, b = Fraction(self.p) ** s1, Fraction(self.p) ** s2
        z = Fraction(0)
        return (
            (z, z, a, z),
            (z, z, z, b),
            (-a, z, z, z),
            (z, -b, z, z),
        )

    def modularity(self) -> int:
        """t with L^dual = p^t L for the recorded form."""
        B = self.lattice
        dual = span(columns(mat_inv(mat_mul(transpose(B), self.form()))), self.p)
        diff = sum(hnf_exponents(dual, self.p)) - sum(hnf_exponents(B, self.p))
        if diff % 4:
            raise InvariantViolation("Lattice is not modular for its polarization")
        t = diff // 4
        if dual != scale_lattice(B, Fraction(self.p) ** t, self.p):
            raise InvariantViolation("Lattice is not modular for its polarization")
        return t

    def weil_matrix(self) -> List[List[int]]:
        """Weil pairing on A[p] in the basis b_k/p of (1/p)L/L."""
        t = self.modularity()
        B = self.lattice
        omega = self.form()
        cols = columns(B)
        scale = Fraction(self.p) ** t
        gram = []
        for x in cols:
            row = []
            for y in cols:
                value = sum(x[i] * omega[i][j] * y[j] for i in range(4) for j in range(4))
                row.append(reduce_mod_p(value * scale, self.p))
            gram.append(row)
        return gram

    def torsion_coordinates(self, x: Vector) -> Tuple[int, ...]:
        """Image in F_p^4 of x in (1/p)L, in the basis b_k/p."""
        coeffs = coordinates(self.lattice, _scaled(x, self.p))
        return tuple(reduce_mod_p(a, self.p) for a in coeffs)

    def torsion_lift(self, coords: Sequence[int]) -> Vector:
        return _combine(self.lattice, coords, Fraction(1, self.p))

    def scaled(self, c) -> "ModuliPointG":
        return ModuliPointG(
            self.p,
            scale_lattice(self.lattice, c, self.p),
            scale_lattice(self.subgroup, c, self.p),
            self.pairing,
        )

    def sort_key(self) -> str:
        return repr((self.lattice, self.subgroup, self.pairing))

    def to_dict(self) -> dict:
        return {
            "lattice": _mat_rows(self.lattice),
            "subgroup": _mat_rows(self.subgroup),
            "pairing": list(self.pairing),
        }


Point = Union[ModuliPointH, ModuliPointG]


def _as_mat(m) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _in_lattice(m: Mat, x: Vector, p: int) -> bool:
    return all(valuation(a, p) >= 0 for a in coordinates(m, x) if a)


def _mat_rows(m: Mat) -> List[List[str]]:
    return [[str(x) for x in row] for row in m]


def multiplicative_part(lattice: Mat) -> Mat:
    """L meet span(e1, e2): the first two canonical columns, in (e1, e2) coordinates."""
    return ((lattice[0][0], lattice[0][1]), (lattice[1][0], lattice[1][1]))


# ============================================================================
# Cycles
# ============================================================================

class Cycle:
    """Formal sum of points with positive multiplicities."""

    def __init__(self, points: Optional[Dict[Point, int]] = None):
        self._points: Counter = Counter()
        for point, n in (points or {}).items():
            self.add(point, n)

    @classmethod
    def of(cls, points: Iterable[Point]) -> "Cycle":
        cycle = cls()
        for point in points:
            cycle.add(point)
        return cycle

    def add(self, point: Point, n: int = 1):
        if n < 0:
            raise InvariantViolation("Cycle multiplicities must be positive")
        if n:
            self._points[point] += n

    def __add__(self, other: "Cycle") -> "Cycle":
        result = Cycle(dict(self._points))
        for point, n in other.items():
            result.add(point, n)
        return result

    def times(self, n: int) -> "Cycle":
        return Cycle({point: m * n for point, m in self._points.items()})

    def map(self, fn) -> "Cycle":
        result = Cycle()
        for point, n in self._points.items():
            result.add(fn(point), n)
        return result

    def bind(self, fn) -> "Cycle":
        """Apply a correspondence point -> Cycle and collect with multiplicity."""
        result = Cycle()
        for point, n in self._points.items():
            for image, m in fn(point).items():
                result.add(image, n * m)
        return result

    def items(self) -> List[Tuple[Point, int]]:
        return sorted(self._points.items(), key=lambda item: item[0].sort_key())

    @property
    def degree(self) -> int:
        return sum(self._points.values())

    def __len__(self) -> int:
        return len(self._points)

    def multiplicity(self, point: Point) -> int:
        return self._points.get(point, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self._points == other._points

    def to_rows(self) -> List[dict]:
        return [dict(point.to_dict(), multiplicity=n) for point, n in self.items()]


# ============================================================================
# Correspondences
# ============================================================================

def up_boxtimes_up(x: ModuliPointH, max_valuation: int = DEFAULT_MAX_VALUATION) -> Cycle:
    """Sum over J_i = <(phi_i + a_i eps_i)/p>, the p cyclic subgroups other than the formal one."""
    p = x.p
    cycle = Cycle()
    for a1, a2 in product(range(p), repeat=2):
        cycle.add(up_boxtimes_up_term(x, a1, a2, max_valuation))
    return cycle


def up_boxtimes_up_term(
    x: ModuliPointH, a1: int, a2: int, max_valuation: int = DEFAULT_MAX_VALUATION
) -> ModuliPointH:
    p = x.p
    quotients = []
    for i, a in ((1, a1), (2, a2)):
        eps, phi = columns(x.factor(i))
        extra = _scaled(_added(phi, _scaled(eps, a)), Fraction(1, p))
        quotients.append(span([eps, phi, extra], p, max_valuation))
    # The formal generators are unchanged, so alpha transports as is.
    return ModuliPointH(p, quotients[0], quotients[1], x.lam)


def iota_delta(x: ModuliPointH, max_valuation: int = DEFAULT_MAX_VALUATION) -> ModuliPointG:
    """(E1 + E2, graph of alpha)."""
    p = x.p
    z = Fraction(0)
    gens = [(e, z, f, z) for e, f in columns(x.L1)]
    gens += [(z, e, z, f) for e, f in columns(x.L2)]
    eps1, eps2 = x.formal_generator(1), x.formal_generator(2)
    c = _vec(Fraction(eps1[0], p), Fraction(x.lam * eps2[0], p), 0, 0)
    pairing = (x.pairing_exponent(1), x.pairing_exponent(2))
    return ModuliPointG.create(p, span(gens, p, max_valuation), c, pairing, max_valuation)


def _subgroup_data(x: ModuliPointG):
    """Torsion coordinates of c, a second multiplicative vector, and a basis of C-perp."""
    p = x.p
    c = x.generator
    yc = x.torsion_coordinates(c)
    if yc[2] or yc[3]:
        raise NonOrdinary("C is not multiplicative")
    gram = x.weil_matrix()
    pairing_row = [sum(gram[k][l] * yc[l] for l in range(4)) % p for k in range(4)]
    perp = nullspace_mod_p([pairing_row], 4, p)
    a = (1, 0, 0, 0) if _independent_mod_p((1, 0, 0, 0), yc, p) else (0, 1, 0, 0)
    return c, yc, a, perp


def _multiplicative_complement(x: ModuliPointG, c: Vector) -> Vector:
    """A basis vector b_j of M independent of p*c modulo p."""
    p = x.p
    cols = columns(x.lattice)
    yc = x.torsion_coordinates(c)
    for j in (0, 1):
        e = tuple(int(i == j) for i in range(4))
        if _independent_mod_p(e, yc, p):
            return cols[j]
    raise InvariantViolation("C is trivial")


def liftings(x: ModuliPointG) -> List[Vector]:
    """Generators c~ = (c + k b_j)/p of the p cyclic p^2-subgroups of A-hat with p C~ = C."""
    c = x.generator
    b = _multiplicative_complement(x, c)
    return [_scaled(_added(c, _scaled(b, k)), Fraction(1, x.p)) for k in range(x.p)]


def isotropic_complements(x: ModuliPointG) -> List[List[Vector]]:
    """Lifts of the p isotropic (p, p)-subgroups J with J meet A-hat[p] = C."""
    p = x.p
    _, yc, a, perp = _subgroup_data(x)
    z = next((y for y in perp if y[2] % p or y[3] % p), None)
    if z is None:
        raise InvariantViolation("C-perp lies inside the multiplicative torsion")
    subgroups = []
    for k in range(p):
        y = tuple((zi + k * ai) % p for zi, ai in zip(z, a))
        subgroups.append([x.torsion_lift(yc), x.torsion_lift(y)])
    return subgroups


def z_prime(x: ModuliPointG, max_valuation: int = DEFAULT_MAX_VALUATION) -> Cycle:
    """Sum over J and C~ of (A/J, C~ mod J); degree p^2."""
    p = x.p
    cycle = Cycle()
    lifts = liftings(x)
    for J in isotropic_complements(x):
        quotient = span(columns(x.lattice) + J, p, max_valuation)
        for c_tilde in lifts:
            cycle.add(ModuliPointG.create(p, quotient, c_tilde, x.pairing, max_valuation))
    return cycle


def u2_kernel(x: ModuliPointG, max_valuation: int = DEFAULT_MAX_VALUATION) -> Mat:
    """Lattice of J0 = (p^-1 C meet A-hat) + C-perp."""
    p = x.p
    _, _, _, perp = _subgroup_data(x)
    gens = columns(x.lattice)
    gens += [(a / p, b / p, Fraction(0), Fraction(0)) for a, b in columns(x.subgroup)]
    gens += [x.torsion_lift(y) for y in perp]
    return span(gens, p, max_valuation)


def u2_prime(x: ModuliPointG, max_valuation: int = DEFAULT_MAX_VALUATION) -> Cycle:
    """Sum over C~ of (A/J0, (p^-1 C~ meet A-hat) mod J0); degree p."""
    p = x.p
    kernel = u2_kernel(x, max_valuation)
    cycle = Cycle()
    for c_tilde in liftings(x):
        cycle.add(
            ModuliPointG.create(
                p, kernel, _scaled(c_tilde, Fraction(1, p)), x.pairing, max_valuation
            )
        )
    return cycle


def diamond(x: Point) -> Point:
    """<p>: multiply the prime-to-p level structure by p, i.e. L -> (1/p) L."""
    return x.scaled(Fraction(1, x.p))


def phi(x: ModuliPointG, max_valuation: int = DEFAULT_MAX_VALUATION) -> ModuliPointG:
    """The Frobenius lift (A / A-hat[p], (p^-1 C meet A-hat[p^2]) mod A-hat[p])."""
    p = x.p
    M = x.multiplicative
    gens = columns(x.lattice) + [(a / p, b / p, Fraction(0), Fraction(0)) for a, b in columns(M)]
    return ModuliPointG.create(
        p, span(gens, p, max_valuation), _scaled(x.generator, Fraction(1, p)),
        x.pairing, max_valuation,
    )


@dataclass
class FrobeniusFactorization:
    """Z' o Phi against U2' on one point."""
    composite: Cycle
    u2: Cycle
    kernel: Mat
    p: int

    @property
    def on_kernel(self) -> Cycle:
        return Cycle(
            {pt: n for pt, n in self.composite.items() if pt.lattice == self.kernel}
        )

    @property
    def holds(self) -> bool:
        return self.on_kernel == self.u2 and self.composite.degree == self.u2.degree * self.p

    def to_dict(self) -> dict:
        return {
            "composite_degree": self.composite.degree,
            "u2_degree": self.u2.degree,
            "holds": self.holds,
        }


def frobenius_factorization(
    x: ModuliPointG, max_valuation: int = DEFAULT_MAX_VALUATION
) -> FrobeniusFactorization:
    """
    U2'(x) is the part of Z'(Phi(x)) lying on the lattice of J0; the composite
    has p times the degree.
    """
    return FrobeniusFactorization(
        composite=z_prime(phi(x, max_valuation), max_valuation),
        u2=u2_prime(x, max_valuation),
        kernel=u2_kernel(x, max_valuation),
        p=x.p,
    )


# ============================================================================
# The identity U2' o iota o (Up x Up) = p <p> Z' o iota
# ============================================================================

def lhs_cycle(x: ModuliPointH, max_valuation: int = DEFAULT_MAX_VALUATION) -> Cycle:
    return up_boxtimes_up(x, max_valuation).map(
        lambda y: iota_delta(y, max_valuation)
    ).bind(lambda g: u2_prime(g, max_valuation))


def rhs_cycle(x: ModuliPointH, max_valuation: int = DEFAULT_MAX_VALUATION) -> Cycle:
    return z_prime(iota_delta(x, max_valuation), max_valuation).map(diamond).times(x.p)


def kernel_classes(x: ModuliPointH,
                   max_valuation: int = DEFAULT_MAX_VALUATION) -> List[List[Tuple[int, int]]]:
    """
    Group the pairs (a1, a2) by the U2' o iota image of their Up x Up term.

    The composite isogeny is p times the quotient by a kernel K that depends on
    (a1, a2) only through one residue mod p, so there are p classes of size p.
    """
    images: Dict[Tuple, List[Tuple[int, int]]] = {}
    for a1, a2 in product(range(x.p), repeat=2):
        term = up_boxtimes_up_term(x, a1, a2, max_valuation)
        image = u2_prime(iota_delta(term, max_valuation), max_valuation)
        key = tuple((point.sort_key(), n) for point, n in image.items())
        images.setdefault(key, []).append((a1, a2))
    return sorted(images.values())


@dataclass
class IdentityCheck:
    point: ModuliPointH
    lhs: Cycle
    rhs: Cycle
    classes: List[List[Tuple[int, int]]]
    kernel_invariants: Tuple[int, ...]
    torsion_contained: bool

    @property
    def kernel_law(self) -> bool:
        return len(self.classes) == self.point.p and all(
            len(c) == self.point.p for c in self.classes
        )

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        report = {
            "point": self.point.to_dict(),
            "pass": self.passed,
            "lhs_degree": self.lhs.degree,
            "rhs_degree": self.rhs.degree,
            "kernel_law": self.kernel_law,
            "kernel_invariants": list(self.kernel_invariants),
            "torsion_contained": self.torsion_contained,
        }
        if not self.passed:
            report["lhs"] = self.lhs.to_rows()
            report["rhs"] = self.rhs.to_rows()
        return report


def check_point(x: ModuliPointH, max_valuation: int = DEFAULT_MAX_VALUATION) -> IdentityCheck:
    base = iota_delta(x, max_valuation)
    first = iota_delta(up_boxtimes_up_term(x, 0, 0, max_valuation), max_valuation)
    kernel = u2_kernel(first, max_valuation)
    torsion = scale_lattice(base.lattice, Fraction(1, x.p), x.p)
    return IdentityCheck(
        point=x,
        lhs=lhs_cycle(x, max_valuation),
        rhs=rhs_cycle(x, max_valuation),
        classes=kernel_classes(x, max_valuation),
        kernel_invariants=subgroup_invariants(first.lattice, kernel, x.p),
        torsion_contained=lattice_contains(kernel, torsion, x.p),
    )


def canonical_orbit(p: int, depth: int = 1) -> List[ModuliPointH]:
    """Standard points for every alpha, closed under depth rounds of Up x Up."""
    frontier = [ModuliPointH.standard(p, lam) for lam in range(1, p)]
    seen = {point: None for point in frontier}
    for _ in range(depth):
        nxt = []
        for point in frontier:
            for image, _ in up_boxtimes_up(point).items():
                if image not in seen:
                    seen[image] = None
                    nxt.append(image)
        frontier = nxt
    return sorted(seen, key=lambda point: point.sort_key())


def random_points(p: int, count: int, seed: int = 0, spread: int = 2) -> List[ModuliPointH]:
    """Points with L_i = [[p^a, x], [0, p^b]], exponents in [-spread, spread]."""
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        factors = []
        for _ in range(2):
            a = rng.randint(-spread, spread)
            b = rng.randint(-spread, spread)
            x = Fraction(rng.randrange(p ** (spread + 1)), p ** spread)
            factors.append(((Fraction(p) ** a, x), (Fraction(0), Fraction(p) ** b)))
        points.append(ModuliPointH.create(p, factors[0], factors[1], rng.randrange(1, p)))
    return points


def verify_correspondence_identity(
    p: int,
    sample: Optional[Sequence[ModuliPointH]] = None,
    max_valuation: int = DEFAULT_MAX_VALUATION,
) -> List[IdentityCheck]:
    """Check the identity on every sample point; defaults to the depth-1 canonical orbit."""
    points = list(sample) if sample is not None else canonical_orbit(p)
    checks = [check_point(x, max_valuation) for x in points]
    failed = sum(1 for c in checks if not c.passed)
    log.info("Correspondence identity checked", p=p, points=len(checks), failed=failed)
    return checks
