"""
Schwartz functions on Q_p^2 and the GL2-level operators acting on them.

Functions are stored as finite tables of valuation boxes: each coordinate is
either a ball p^d Z_p or a shell p^d Z_p^x, optionally weighted by a
finite-order character of the unit part. That family is closed under the
box rescalings that phi, <p> and U_p induce in partial-Fourier coordinates,
so every operator here returns another table.

Usage:
    from gsp4verify.schwartz import named_schwartz, schwartz_operator

    sph = named_schwartz("sph", 3)
    assert schwartz_operator("one_minus_phi", sph) == named_schwartz("crit", 3)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from sympy import Poly, cyclotomic_poly, primitive_root, symbols

from .algebra import Scalar, scalar_field, valuation
from .errors import (
    CharacterConductorMismatch,
    InvariantViolation,
    PoleDetected,
    UnknownOperator,
    UnsupportedLocalDatum,
    UnsupportedTag,
)
from .log import get_logger

log = get_logger("zeta")

BALL = "ball"
SHELL = "shell"

# Characters live on (Z/p^2)^x, which is cyclic for every p.
UNIT_LEVEL = 2

SLOT_TAGS = ("sph", "crit", "dep", "phi_shift_crit")

_ZETA = symbols("zeta")


# ============================================================================
# Finite-order characters of Z_p^x
# ============================================================================

@lru_cache(maxsize=None)
def unit_generator(p: int) -> int:
    """A generator of (Z/p^2)^x."""
    return 3 if p == 2 else int(primitive_root(p ** UNIT_LEVEL))


def unit_group_order(p: int) -> int:
    return p ** (UNIT_LEVEL - 1) * (p - 1)


@lru_cache(maxsize=None)
def _discrete_logs(p: int) -> Dict[int, int]:
    modulus = p ** UNIT_LEVEL
    g = unit_generator(p)
    logs, x = {}, 1
    for i in range(unit_group_order(p)):
        logs[x] = i
        x = x * g % modulus
    return logs


def unit_residues(p: int) -> List[int]:
    """Representatives of (Z/p^2)^x."""
    return sorted(_discrete_logs(p))


@dataclass(frozen=True, order=True)
class UnitCharacter:
    """
    chi(g^i) = zeta^(index * i), where g generates (Z/p^2)^x and zeta is a
    primitive root of unity of order |(Z/p^2)^x|.

    Values are kept as exponents; only characters of order at most 2 have
    values in Q, and value() refuses the others.
    """
    p: int
    index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "index", self.index % unit_group_order(self.p))

    @classmethod
    def trivial(cls, p: int) -> "UnitCharacter":
        return cls(p, 0)

    @classmethod
    def quadratic(cls, p: int) -> "UnitCharacter":
        """The unique character of order 2 on (Z/p^2)^x with conductor p (or 4 when p=2)."""
        return cls(p, unit_group_order(p) // 2)

    @classmethod
    def from_table(cls, p: int, table: Mapping[int, int], level: int = UNIT_LEVEL
                   ) -> "UnitCharacter":
        """
        Build from a value table on (Z/p^level)^x, values given as exponents of zeta.

        Raises:
            CharacterConductorMismatch: the table is not a character of that level
        """
        if not 0 <= level <= UNIT_LEVEL:
            raise CharacterConductorMismatch(f"Level {level} outside 0..{UNIT_LEVEL}")
        order = unit_group_order(p)
        modulus = p ** level
        normalized = {int(k) % modulus if modulus > 1 else 0: int(v) % order
                      for k, v in table.items()}
        g = unit_generator(p)
        index = normalized.get(g % modulus if modulus > 1 else 0)
        if index is None:
            raise CharacterConductorMismatch(f"Table has no value at the generator {g}")
        chi = cls(p, index)
        for x in unit_residues(p):
            key = x % modulus if modulus > 1 else 0
            if normalized.get(key) != chi.exponent(x):
                raise CharacterConductorMismatch(
                    f"Table is not a character of (Z/{p}^{level})^x: mismatch at {x}"
                )
        return chi

    @property
    def order(self) -> int:
        """Multiplicative order of the character."""
        n = unit_group_order(self.p)
        return n // _gcd(n, self.index) if self.index else 1

    @property
    def conductor(self) -> int:
        """Exponent t of the conductor p^t."""
        if self.index == 0:
            return 0
        return 1 if self.index % self.p == 0 and self.p != 2 else UNIT_LEVEL

    def is_trivial(self) -> bool:
        return self.index == 0

    def exponent(self, x: int) -> int:
        """e with chi(x) = zeta^e, for x prime to p."""
        residue = x % (self.p ** UNIT_LEVEL)
        if residue % self.p == 0:
            raise InvariantViolation(f"{x} is not a unit at p={self.p}")
        return self.index * _discrete_logs(self.p)[residue] % unit_group_order(self.p)

    def sign(self) -> int:
        """chi(-1)."""
        return -1 if self.index % 2 else 1

    def value(self, x) -> int:
        """
        chi(x) for a rational p-adic unit x, as +1 or -1.

        Raises:
            UnsupportedLocalDatum: the character takes non-rational values
        """
        if self.order > 2:
            raise UnsupportedLocalDatum(
                f"Character of order {self.order} has values outside Q"
            )
        x = Fraction(x)
        modulus = self.p ** UNIT_LEVEL
        residue = x.numerator * pow(x.denominator, -1, modulus) % modulus
        return -1 if self.exponent(residue) else 1

    def __mul__(self, other: "UnitCharacter") -> "UnitCharacter":
        if other.p != self.p:
            raise InvariantViolation(f"Characters at p={self.p} and p={other.p}")
        return UnitCharacter(self.p, self.index + other.index)

    def inverse(self) -> "UnitCharacter":
        return UnitCharacter(self.p, -self.index)

    def __str__(self):
        return "1" if self.is_trivial() else f"chi[{self.index}/{unit_group_order(self.p)}]"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def unit_average(characters: Iterable[UnitCharacter]) -> Fraction:
    """
    The mean over Z_p^x of a product of characters, i.e. the integral for
    the Haar measure giving Z_p^x volume 1.

    The character sum is reduced modulo the cyclotomic polynomial, so the
    orthogonality relation is computed rather than assumed.
    """
    characters = list(characters)
    if not characters:
        return Fraction(1)
    p = characters[0].p
    product = UnitCharacter.trivial(p)
    for chi in characters:
        product = product * chi
    order = unit_group_order(p)
    counts: Dict[int, int] = {}
    for x in unit_residues(p):
        e = product.exponent(x)
        counts[e] = counts.get(e, 0) + 1
    total = Poly(sum(c * _ZETA ** e for e, c in counts.items()), _ZETA)
    reduced = total.rem(Poly(cyclotomic_poly(order, _ZETA), _ZETA))
    if reduced.is_zero:
        return Fraction(0)
    if reduced.degree() > 0:
        raise InvariantViolation(f"Character sum {reduced} did not reduce to a rational")
    return Fraction(int(reduced.LC()), order)


# ============================================================================
# Cells
# ============================================================================

@dataclass(frozen=True, order=True)
class Support:
    """p^depth Z_p (ball) or p^depth Z_p^x (shell)."""
    kind: str
    depth: int

    def __post_init__(self):
        if self.kind not in (BALL, SHELL):
            raise InvariantViolation(f"Unknown support kind {self.kind!r}")

    def contains_valuation(self, v: int) -> bool:
        return v >= self.depth if self.kind == BALL else v == self.depth

    def shifted(self, k: int) -> "Support":
        return Support(self.kind, self.depth + k)

    def __str__(self):
        exponent = "" if self.depth == 0 else f"p^{self.depth}"
        return f"{exponent}Zp" + ("^x" if self.kind == SHELL else "")


@dataclass(frozen=True, order=True)
class Cell:
    """ch(X x Y) * mu(unit part of x) * nu(unit part of y)."""
    x: Support
    y: Support
    mu: UnitCharacter
    nu: UnitCharacter

    def shifted(self, kx: int, ky: int) -> "Cell":
        return Cell(self.x.shifted(kx), self.y.shifted(ky), self.mu, self.nu)

    def contains_origin(self) -> bool:
        return (self.x.kind == BALL and self.y.kind == BALL
                and self.mu.is_trivial() and self.nu.is_trivial())

    def __str__(self):
        text = f"ch({self.x} x {self.y})"
        if not self.mu.is_trivial():
            text += f"*mu{self.mu}"
        if not self.nu.is_trivial():
            text += f"*nu{self.nu}"
        return text


def _split_ball(support: Support, depth: int) -> List[Support]:
    """A ball as shells down to depth, plus the ball at depth."""
    if support.kind == SHELL or support.depth >= depth:
        return [support]
    return [Support(SHELL, d) for d in range(support.depth, depth)] + [Support(BALL, depth)]


def _integral_pieces(cell: Cell) -> List[Cell]:
    """cell restricted to v(x) + v(y) >= 0."""
    x, y = cell.x, cell.y
    if x.kind == SHELL and y.kind == SHELL:
        return [cell] if x.depth + y.depth >= 0 else []
    if x.kind == SHELL:
        return [Cell(x, Support(BALL, max(y.depth, -x.depth)), cell.mu, cell.nu)]
    if y.kind == SHELL:
        return [Cell(Support(BALL, max(x.depth, -y.depth)), y, cell.mu, cell.nu)]
    if x.depth + y.depth >= 0:
        return [cell]
    pieces = [
        Cell(Support(SHELL, j), Support(BALL, -j), cell.mu, cell.nu)
        for j in range(x.depth, -y.depth)
    ]
    pieces.append(Cell(Support(BALL, -y.depth), y, cell.mu, cell.nu))
    return pieces


# ============================================================================
# Schwartz functions
# ============================================================================

@dataclass(frozen=True)
class SchwartzFunction:
    """
    A finite Scalar combination of cells.

    prime_coordinates records whether the table stores Phi' (the partial
    Fourier transform in the second variable) or Phi itself. Operators act
    on Phi' tables.
    """
    p: int
    cells: Tuple[Tuple[Cell, Scalar], ...]
    prime_coordinates: bool = True

    @classmethod
    def from_cells(cls, p: int, cells: Iterable[Tuple[Cell, object]],
                   prime_coordinates: bool = True) -> "SchwartzFunction":
        F = scalar_field(p)
        merged: Dict[Cell, Scalar] = {}
        for cell, coeff in cells:
            if cell.mu.p != p or cell.nu.p != p:
                raise InvariantViolation("Cell characters live at a different prime")
            merged[cell] = merged.get(cell, F.zero) + F(coeff)
        kept = tuple(sorted((c, v) for c, v in merged.items() if not v.is_zero()))
        return cls(p, kept, prime_coordinates)

    @classmethod
    def zero(cls, p: int, prime_coordinates: bool = True) -> "SchwartzFunction":
        return cls(p, (), prime_coordinates)

    @property
    def field(self):
        return scalar_field(self.p)

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def _check_compatible(self, other: "SchwartzFunction"):
        if other.p != self.p or other.prime_coordinates != self.prime_coordinates:
            raise InvariantViolation("Schwartz functions stored in different coordinates")

    def __add__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        self._check_compatible(other)
        return SchwartzFunction.from_cells(
            self.p, list(self.cells) + list(other.cells), self.prime_coordinates
        )

    def scale(self, factor) -> "SchwartzFunction":
        factor = self.field(factor)
        return SchwartzFunction.from_cells(
            self.p, [(c, v * factor) for c, v in self.cells], self.prime_coordinates
        )

    def __neg__(self) -> "SchwartzFunction":
        return self.scale(-1)

    def __sub__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        return self + (-other)

    def __rmul__(self, factor) -> "SchwartzFunction":
        return self.scale(factor)

    def _depth_bound(self) -> int:
        depths = [d for cell, _ in self.cells for d in (cell.x.depth, cell.y.depth)]
        return max(depths, default=0) + 1

    def refined(self, depth: Optional[int] = None) -> Dict[Cell, Scalar]:
        """
        Disjoint table where every ball shallower than depth is cut into shells.

        Two tables describe the same function exactly when their refinements
        to a common depth agree.
        """
        depth = self._depth_bound() if depth is None else depth
        out: Dict[Cell, Scalar] = {}
        for cell, coeff in self.cells:
            for x in _split_ball(cell.x, depth):
                for y in _split_ball(cell.y, depth):
                    piece = Cell(x, y, cell.mu, cell.nu)
                    out[piece] = out.get(piece, self.field.zero) + coeff
        return {c: v for c, v in out.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.refined()

    def __eq__(self, other):
        if not isinstance(other, SchwartzFunction):
            return NotImplemented
        if other.p != self.p or other.prime_coordinates != self.prime_coordinates:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.p, self.prime_coordinates))

    def simplified(self) -> "SchwartzFunction":
        """Coarsest table: shell(d) + ball(d+1) with equal data merged into ball(d)."""
        table = self.refined()
        changed = True
        while changed:
            changed = False
            for cell, coeff in sorted(table.items()):
                for axis in ("x", "y"):
                    support = getattr(cell, axis)
                    if support.kind != SHELL:
                        continue
                    deeper = Support(BALL, support.depth + 1)
                    partner = (Cell(cell.x, deeper, cell.mu, cell.nu) if axis == "y"
                               else Cell(deeper, cell.y, cell.mu, cell.nu))
                    if table.get(partner) == coeff:
                        merged_support = Support(BALL, support.depth)
                        merged = (Cell(cell.x, merged_support, cell.mu, cell.nu) if axis == "y"
                                  else Cell(merged_support, cell.y, cell.mu, cell.nu))
                        del table[cell], table[partner]
                        table[merged] = table.get(merged, self.field.zero) + coeff
                        changed = True
                        break
                if changed:
                    break
        return SchwartzFunction.from_cells(self.p, table.items(), self.prime_coordinates)

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def value_at_origin(self) -> Scalar:
        total = self.field.zero
        for cell, coeff in self.cells:
            if cell.contains_origin():
                total = total + coeff
        return total

    def fourier_value_at_origin(self) -> Scalar:
        """Phi(0, 0) = int Phi'(0, v) dv for a Phi' table."""
        _require_prime(self)
        F = self.field
        total = F.zero
        for cell, coeff in self.cells:
            if cell.x.kind != BALL or not cell.mu.is_trivial() or not cell.nu.is_trivial():
                continue
            volume = F.p_power(-cell.y.depth)
            if cell.y.kind == SHELL:
                volume = volume * (1 - F.p_power(-1))
            total = total + coeff * volume
        return total

    def min_depths(self) -> Tuple[int, int]:
        """Smallest valuations reachable in each coordinate."""
        return (
            min(cell.x.depth for cell, _ in self.cells),
            min(cell.y.depth for cell, _ in self.cells),
        )

    def evaluate(self, x, y) -> Scalar:
        """
        Value at a point of Q x Q viewed in Q_p^2.

        Raises:
            UnsupportedLocalDatum: a character with non-rational values is met
        """
        x, y = Fraction(x), Fraction(y)
        total = self.field.zero
        for cell, coeff in self.cells:
            weight = _coordinate_weight(cell.x, cell.mu, x, self.p)
            if weight == 0:
                continue
            weight *= _coordinate_weight(cell.y, cell.nu, y, self.p)
            if weight:
                total = total + coeff * weight
        return total

    # ------------------------------------------------------------------
    # Box transforms
    # ------------------------------------------------------------------

    def box_scaled(self, kx: int, ky: int) -> "SchwartzFunction":
        """ch(A) -> ch((p^kx, p^ky) * A) on every cell."""
        return SchwartzFunction.from_cells(
            self.p, [(c.shifted(kx, ky), v) for c, v in self.cells], self.prime_coordinates
        )

    def restricted_to_integral_product(self) -> "SchwartzFunction":
        """Multiply by ch(xy in Z_p)."""
        pieces = [(piece, v) for c, v in self.cells for piece in _integral_pieces(c)]
        return SchwartzFunction.from_cells(self.p, pieces, self.prime_coordinates)

    def __str__(self):
        if not self.cells:
            return "0"
        return " + ".join(f"({v})*{c}" for c, v in self.cells)


def _coordinate_weight(support: Support, chi: UnitCharacter, t: Fraction, p: int) -> int:
    if t == 0:
        return 1 if support.kind == BALL and chi.is_trivial() else 0
    v = valuation(t, p)
    if not support.contains_valuation(v):
        return 0
    return chi.value(t / Fraction(p) ** v)


# ============================================================================
# Partial Fourier transform
# ============================================================================

def partial_fourier(f: SchwartzFunction) -> SchwartzFunction:
    """
    Fourier transform in the second variable with the self-dual measure.

    ch(p^d Z_p) is sent to p^-d ch(p^-d Z_p); shells are treated as differences
    of balls. The transform is an involution on this family.

    Raises:
        UnsupportedLocalDatum: a cell carries a character on its second coordinate
    """
    F = f.field
    cells: List[Tuple[Cell, Scalar]] = []
    for cell, coeff in f.cells:
        if not cell.nu.is_trivial():
            raise UnsupportedLocalDatum(
                "Partial Fourier transform of a ramified second coordinate is a Gauss sum"
            )
        balls = [(cell.y.depth, F.one)]
        if cell.y.kind == SHELL:
            balls.append((cell.y.depth + 1, -F.one))
        for depth, sign in balls:
            image = Cell(cell.x, Support(BALL, -depth), cell.mu, cell.nu)
            cells.append((image, coeff * sign * F.p_power(-depth)))
    return SchwartzFunction.from_cells(f.p, cells, not f.prime_coordinates)


# ============================================================================
# Named data
# ============================================================================

def _cell(p: int, x: Support, y: Support, mu: Optional[UnitCharacter] = None,
          nu: Optional[UnitCharacter] = None) -> Cell:
    trivial = UnitCharacter.trivial(p)
    return Cell(x, y, mu or trivial, nu or trivial)


def named_schwartz(tag: str, p: int, mu: Optional[UnitCharacter] = None,
                   nu: Optional[UnitCharacter] = None) -> SchwartzFunction:
    """
    The standard Phi' tables at p.

        sph             ch(Zp x Zp)
        crit            ch(Zp x Zp^x) nu(y)
        dep             ch(Zp^x x Zp^x) mu(x) nu(y)
        phi_shift_crit  ch(pZp x Zp^x) nu(y), i.e. <p>^-1 phi applied to crit

    Raises:
        UnsupportedTag: unknown tag, or characters on a tag that takes none
    """
    ball0, shell0 = Support(BALL, 0), Support(SHELL, 0)
    if tag == "sph":
        if mu is not None or nu is not None:
            raise UnsupportedTag("The spherical datum carries no characters")
        cell = _cell(p, ball0, ball0)
    elif tag == "crit":
        if mu is not None and not mu.is_trivial():
            raise UnsupportedTag("Critical data take a character on y only")
        cell = _cell(p, ball0, shell0, None, nu)
    elif tag == "dep":
        cell = _cell(p, shell0, shell0, mu, nu)
    elif tag == "phi_shift_crit":
        if mu is not None and not mu.is_trivial():
            raise UnsupportedTag("Critical data take a character on y only")
        cell = _cell(p, Support(BALL, 1), shell0, None, nu)
    else:
        raise UnsupportedTag(f"Unknown Schwartz tag {tag!r}; expected one of {SLOT_TAGS}")
    return SchwartzFunction.from_cells(p, [(cell, 1)])


# ============================================================================
# Operators in Phi' coordinates
# ============================================================================

def _require_prime(f: SchwartzFunction):
    if not f.prime_coordinates:
        raise UnsupportedLocalDatum("Operators act on Phi' tables; transform first")


def phi(f: SchwartzFunction) -> SchwartzFunction:
    """(phi Phi)' = ch((1, p) A)."""
    _require_prime(f)
    return f.box_scaled(0, 1)


def diamond_p(f: SchwartzFunction, k: int) -> SchwartzFunction:
    """(<p> Phi)' = p^(k+1) ch((p^-1, p) A)."""
    _require_prime(f)
    return f.box_scaled(-1, 1).scale(f.field.p_power(k + 1))


def diamond_p_inverse(f: SchwartzFunction, k: int) -> SchwartzFunction:
    _require_prime(f)
    return f.box_scaled(1, -1).scale(f.field.p_power(-k - 1))


def U_p(f: SchwartzFunction, k: int) -> SchwartzFunction:
    """
    (U_p Phi)'(x, y) = p^(k+1) Phi'(px, y) ch(xy in Z_p).

    The integrality cut is what the unipotent sum in U_p leaves behind; on
    tables supported in Zp x Zp it is invisible after phi, so U_p phi = <p>.
    """
    _require_prime(f)
    return f.box_scaled(-1, 0).restricted_to_integral_product().scale(f.field.p_power(k + 1))


def one_minus_phi(f: SchwartzFunction) -> SchwartzFunction:
    return f - phi(f)


def crit_depletion(f: SchwartzFunction, k: int) -> SchwartzFunction:
    """(1 - p^(k+1) <p>^-1 phi) Phi; the composite is ch(A) -> ch((p, 1) A)."""
    shifted = diamond_p_inverse(phi(f), k).scale(f.field.p_power(k + 1))
    return f - shifted


SCHWARTZ_OPERATORS = ("U_p", "phi", "diamond_p", "one_minus_phi", "crit_depletion")


def schwartz_operator(op: str, f: SchwartzFunction, k: int = 0) -> SchwartzFunction:
    """
    Apply a named operator; k is the weight used by U_p, diamond_p, crit_depletion.

    Raises:
        UnknownOperator: op not in SCHWARTZ_OPERATORS
    """
    if op == "U_p":
        return U_p(f, k)
    if op == "phi":
        return phi(f)
    if op == "diamond_p":
        return diamond_p(f, k)
    if op == "one_minus_phi":
        return one_minus_phi(f)
    if op == "crit_depletion":
        return crit_depletion(f, k)
    raise UnknownOperator(f"Unknown Schwartz operator {op!r}; expected one of {SCHWARTZ_OPERATORS}")


# ============================================================================
# Whittaker values of Siegel sections
# ============================================================================

@dataclass(frozen=True)
class TorusSequence:
    """
    n -> value on the torus points diag(p^n, 1).

    For n < start the value is points.get(n, 0); from start on it is
    sum_j amp_j * ratio_j^n.
    """
    points: Tuple[Tuple[int, Scalar], ...]
    start: int
    tail: Tuple[Tuple[Scalar, Scalar], ...]

    @property
    def lowest(self) -> int:
        return min([n for n, _ in self.points] + [self.start])

    def value(self, n: int, F) -> Scalar:
        if n < self.start:
            return dict(self.points).get(n, F.zero)
        total = F.zero
        for amp, ratio in self.tail:
            total = total + amp * ratio ** n
        return total

    def times(self, other: "TorusSequence", F) -> "TorusSequence":
        start = max(self.start, other.start)
        low = max(self.lowest, other.lowest)
        points = []
        for n in range(low, start):
            v = self.value(n, F) * other.value(n, F)
            if not v.is_zero():
                points.append((n, v))
        tail = tuple((a1 * a2, r1 * r2) for a1, r1 in self.tail for a2, r2 in other.tail)
        return TorusSequence(tuple(points), start, tail)

    def geometric_twist(self, ratio: Scalar) -> "TorusSequence":
        """Multiply the n-th value by ratio^n."""
        points = tuple((n, v * ratio ** n) for n, v in self.points)
        tail = tuple((a, r * ratio) for a, r in self.tail)
        return TorusSequence(points, self.start, tail)

    def scaled(self, factor: Scalar) -> "TorusSequence":
        return TorusSequence(
            tuple((n, v * factor) for n, v in self.points),
            self.start,
            tuple((a * factor, r) for a, r in self.tail),
        )


def _cell_sequence(cell: Cell, R: Scalar) -> TorusSequence:
    """n -> sum over j with n-j in X and j in Y of R^j."""
    F = R.field
    x, y = cell.x, cell.y
    a, b = x.depth, y.depth
    if y.kind == SHELL and x.kind == SHELL:
        return TorusSequence(((a + b, R ** b),), a + b + 1, ())
    if y.kind == SHELL:
        return TorusSequence((), a + b, ((R ** b, F.one),))
    if x.kind == SHELL:
        return TorusSequence((), a + b, ((R ** -a, R),))
    gap = 1 - R
    if gap.is_zero():
        raise PoleDetected("Section ratio p^(2s-1)/chi(p) equals 1 on a ball-ball cell")
    return TorusSequence((), a + b, ((R ** b / gap, F.one), (-(R ** (1 - a)) / gap, R)))


def _half_integer(s) -> Fraction:
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise InvariantViolation(f"s = {s} must be a half-integer")
    return s


def cell_unit_factor(cell: Cell, chi_unit: UnitCharacter) -> Fraction:
    """mu(-1) nu(-1) times the mean of mu * nu^-1 * chi over Z_p^x."""
    sign = cell.mu.sign() * cell.nu.sign()
    return sign * unit_average([cell.mu, cell.nu.inverse(), chi_unit])


def whittaker_sequences(f: SchwartzFunction, chi_p: Scalar, s,
                        chi_unit: Optional[UnitCharacter] = None
                        ) -> List[Tuple[UnitCharacter, TorusSequence]]:
    """
    W^Phi(diag(p^n u, 1); chi, s) as a sum of (mu(u), sequence in n) pieces.

    W^Phi(diag(x,1)) = |x|^s * int Phi'(-xt, -1/t) chi(t) |t|^(2s-1) d^x t,
    with vol(Z_p^x) = 1; the unit integral is a character orthogonality sum.
    """
    _require_prime(f)
    F = f.field
    s = _half_integer(s)
    chi_unit = chi_unit or UnitCharacter.trivial(f.p)
    R = F.p_power(int(2 * s - 1)) / chi_p
    decay = F.sqrt_p_power(int(-2 * s))
    pieces = []
    for cell, coeff in f.cells:
        unit = cell_unit_factor(cell, chi_unit)
        if unit == 0:
            continue
        sequence = _cell_sequence(cell, R).geometric_twist(decay).scaled(coeff * unit)
        pieces.append((cell.mu, sequence))
    return pieces


def whittaker_value(f: SchwartzFunction, n: int, chi_p: Scalar, s,
                    chi_unit: Optional[UnitCharacter] = None, unit: int = 1) -> Scalar:
    """W^Phi(diag(p^n * unit, 1); chi, s)."""
    F = f.field
    total = F.zero
    for mu, sequence in whittaker_sequences(f, chi_p, s, chi_unit):
        weight = 1 if unit == 1 else mu.value(unit)
        total = total + sequence.value(n, F) * weight
    return total


def section_whittaker_value(tag: str, chi_p: Scalar, s, n: int,
                            mu: Optional[UnitCharacter] = None,
                            nu: Optional[UnitCharacter] = None, unit: int = 1) -> Scalar:
    """
    Whittaker value of the Siegel section attached to a named datum.

    The character chi restricted to Z_p^x is mu^-1 nu, as the datum requires.

    Raises:
        UnsupportedTag: unknown tag
    """
    p = chi_p.p
    f = named_schwartz(tag, p, mu, nu)
    chi_unit = (mu or UnitCharacter.trivial(p)).inverse() * (nu or UnitCharacter.trivial(p))
    value = whittaker_value(f, n, chi_p, s, chi_unit, unit)
    log.debug("Section Whittaker value", tag=tag, n=n, s=str(s), p=p)
    return value
