"""
Local zeta integrals at p.

The Klingen value is an Euler-factor prefactor times a torus integral
sum_{n >= 0} w_sph(diag(p^n,1)) W^Phi1 W^Phi2 theta(p)^n p^n, summed in
closed form against the generating function 1/((1 - alpha X)(1 - beta X)).
The Siegel value is computed twice: from its closed form and from the
Bessel generating series through the shift relation F_{Uw} = (F_w - F_w(0))/X.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .algebra import Scalar, TruncatedSeries, series_shift_divide
from .errors import InvariantViolation, PoleDetected, UnsupportedTag, VanishingDenominator
from .hecke_data import (
    HeckeParams,
    TwistData,
    euler_factor_E,
    euler_factor_E_twisted,
    require_admissible,
)
from .log import get_logger
from .schwartz import (
    SchwartzFunction,
    TorusSequence,
    UnitCharacter,
    named_schwartz,
    unit_average,
    whittaker_sequences,
)
from .whittaker.casselman_shalika import complete_homogeneous

log = get_logger("zeta")


# ============================================================================
# Requests
# ============================================================================

@dataclass(frozen=True)
class ZetaRequest:
    """
    One Klingen zeta evaluation.

    Slot tags are the names accepted by named_schwartz; mu_i and nu_i are the
    characters of the slot's datum and rho the twisting character of det.
    """
    params: HeckeParams
    twist: TwistData
    q: int
    r: int
    slot1: str
    slot2: str
    mu1: Optional[UnitCharacter] = None
    nu1: Optional[UnitCharacter] = None
    mu2: Optional[UnitCharacter] = None
    nu2: Optional[UnitCharacter] = None
    rho: Optional[UnitCharacter] = None

    def __post_init__(self):
        require_admissible(self.params, self.q, self.r)
        self.twist.check(self.params)
        self.slot_function(1)
        self.slot_function(2)
        # chi1 chi2 = rho^2 chi_Pi, restricted to units
        if self.chi_unit(1) * self.chi_unit(2) != self._rho * self._rho:
            raise InvariantViolation(
                "Slot characters must satisfy chi1 chi2 = rho^2 on Z_p^x"
            )

    @property
    def _trivial(self) -> UnitCharacter:
        return UnitCharacter.trivial(self.params.p)

    @property
    def _rho(self) -> UnitCharacter:
        return self.rho or self._trivial

    def _characters(self, slot: int) -> Tuple[Optional[UnitCharacter], Optional[UnitCharacter]]:
        return (self.mu1, self.nu1) if slot == 1 else (self.mu2, self.nu2)

    def slot_function(self, slot: int) -> SchwartzFunction:
        tag = self.slot1 if slot == 1 else self.slot2
        mu, nu = self._characters(slot)
        return named_schwartz(tag, self.params.p, mu, nu)

    def chi_unit(self, slot: int) -> UnitCharacter:
        """chi_i on Z_p^x, forced to be mu_i^-1 nu_i by the datum."""
        mu, nu = self._characters(slot)
        return (mu or self._trivial).inverse() * (nu or self._trivial)

    def character(self, name: str) -> UnitCharacter:
        return getattr(self, name) or self._trivial

    def meets_twisted_hypotheses(self) -> bool:
        """mu1 nu1 mu2 nu2 = 1 and rho = nu1 nu2."""
        mu1, nu1, mu2, nu2 = (self.character(n) for n in ("mu1", "nu1", "mu2", "nu2"))
        return (mu1 * nu1 * mu2 * nu2).is_trivial() and self._rho == nu1 * nu2

    @property
    def twisted(self) -> bool:
        characters = (self.mu1, self.nu1, self.mu2, self.nu2, self.rho)
        return any(chi is not None and not chi.is_trivial() for chi in characters)

    @property
    def evaluation_point(self) -> Tuple[Fraction, Fraction]:
        """(s1, s2) = (-t1/2, -t2/2) with t1 = r1 - q - r, t2 = r2 - q + r."""
        t1 = self.params.r1 - self.q - self.r
        t2 = self.params.r2 - self.q + self.r
        return Fraction(-t1, 2), Fraction(-t2, 2)

    def slots(self) -> str:
        return f"{self.slot1},{self.slot2}"


# ============================================================================
# Klingen torus integral
# ============================================================================

def _spherical_pairing(params: HeckeParams, sequence: TorusSequence) -> Scalar:
    """sum_{n >= 0} h_n(alpha, beta) sequence(n)."""
    F = params.field
    alpha, beta = params.alpha, params.beta
    total = F.zero
    for n, value in sequence.points:
        if n >= 0:
            total = total + complete_homogeneous([alpha, beta], n) * value
    start = max(sequence.start, 0)
    for amplitude, ratio in sequence.tail:
        denominator = (1 - alpha * ratio) * (1 - beta * ratio)
        if denominator.is_zero():
            raise PoleDetected(f"Torus integral has a pole: ratio {ratio} meets alpha or beta")
        head = F.zero
        for n in range(start):
            head = head + complete_homogeneous([alpha, beta], n) * ratio ** n
        total = total + amplitude * (denominator.inverse() - head)
    return total


def torus_integral(params: HeckeParams, f1: SchwartzFunction, f2: SchwartzFunction,
                   s1, s2, chi1_p: Scalar, chi2_p: Scalar,
                   chi1_unit: Optional[UnitCharacter] = None,
                   chi2_unit: Optional[UnitCharacter] = None,
                   rho: Optional[UnitCharacter] = None) -> Scalar:
    """
    int w_sph(diag(x,1)) W^Phi1(x; chi1, s1) W^Phi2(x; chi2, s2) theta(x) rho(x) / |x| d^x x.

    theta is unramified with theta(p) = gamma/alpha and vol(Z_p^x) = 1.

    Raises:
        UnsupportedTag: Phi1'(0, 0) != 0
        PoleDetected: a closed-form denominator vanishes
    """
    if not f1.value_at_origin().is_zero():
        raise UnsupportedTag("The first Schwartz slot must vanish at (0, 0)")
    F = params.field
    rho = rho or UnitCharacter.trivial(params.p)
    theta = params.gamma / params.alpha
    # w_sph(diag(p^n,1)) = p^(-n(r1+r2+4)/2) h_n(alpha, beta); 1/|p^n| = p^n
    step = theta * F.p_power(1) * F.sqrt_p_power(-(params.r1 + params.r2 + 4))

    total = F.zero
    pieces1 = whittaker_sequences(f1, chi1_p, s1, chi1_unit)
    pieces2 = whittaker_sequences(f2, chi2_p, s2, chi2_unit)
    for mu_a, seq_a in pieces1:
        for mu_b, seq_b in pieces2:
            unit = unit_average([mu_a, mu_b, rho])
            if unit == 0:
                continue
            product = seq_a.times(seq_b, F).geometric_twist(step)
            total = total + _spherical_pairing(params, product) * unit
    log.debug("Torus integral", cells1=len(f1.cells), cells2=len(f2.cells), p=params.p)
    return total


def klingen_ratio(req: ZetaRequest) -> Scalar:
    """The torus integral alone, i.e. klingen_zeta without its Euler prefactor."""
    s1, s2 = req.evaluation_point
    return torus_integral(
        req.params,
        req.slot_function(1),
        req.slot_function(2),
        s1,
        s2,
        req.twist.chi1,
        req.twist.chi2,
        req.chi_unit(1),
        req.chi_unit(2),
        req.rho,
    )


def klingen_prefactor(params: HeckeParams, twist: TwistData, q: int, r: int) -> Scalar:
    """E(pi, q) E(pi x chi2^-1, r2 + 1 + r)."""
    return euler_factor_E(params, q) * euler_factor_E_twisted(params, twist, params.r2 + 1 + r)


def klingen_zeta(req: ZetaRequest) -> Scalar:
    """
    Z~ of the Klingen eigenvector against Phi1 x Phi2.

    Unramified requests carry the prefactor E(pi,q) E(pi x chi2^-1, r2+1+r).
    Twisted requests return the torus integral alone, since their
    normalising L-factors belong to a ramified GL2 representation.
    """
    ratio = klingen_ratio(req)
    if req.twisted:
        log.debug("Twisted request; returning the torus integral", slots=req.slots())
        return ratio
    return klingen_prefactor(req.params, req.twist, req.q, req.r) * ratio


# ============================================================================
# Siegel zeta
# ============================================================================

@dataclass(frozen=True)
class SiegelZetaPaths:
    closed_form: Scalar
    series_route: Scalar

    @property
    def agree(self) -> bool:
        return self.closed_form == self.series_route


def _bessel_numerator_roots(params: HeckeParams, twist: TwistData, r: int) -> Tuple[Scalar, Scalar]:
    F = params.field
    return (
        twist.chi1 * F.p_power(params.r1 + 1 - r),
        twist.chi2 * F.p_power(params.r2 + 1 + r),
    )


def bessel_series(params: HeckeParams, twist: TwistData, r: int, order: int) -> TruncatedSeries:
    """
    F_sph(X) = (1 - chi1 p^(r1+1-r) X)(1 - chi2 p^(r2+1+r) X) / prod_x (1 - x X),
    x running over alpha, beta, gamma, delta.
    """
    F = params.field
    A, B = _bessel_numerator_roots(params, twist, r)
    numerator = [F.one, -(A + B), A * B]
    denominator = TruncatedSeries.from_list(F, [1], 0)
    for x in params.parameters():
        denominator = _poly_mul(denominator, [F.one, -x])
    return TruncatedSeries.from_rational(numerator, denominator.dense(), order, F)


def _poly_mul(poly: TruncatedSeries, linear) -> TruncatedSeries:
    """Exact product of a polynomial (stored as a series) with a linear factor."""
    F = poly.scalar_field
    values = poly.dense() + [F.zero]
    out = [values[0] * linear[0]]
    for n in range(1, len(values)):
        out.append(values[n] * linear[0] + values[n - 1] * linear[1])
    return TruncatedSeries.from_list(F, out, len(out) - 1)


def siegel_eigen_series(params: HeckeParams, twist: TwistData, r: int,
                        order: int = 8) -> TruncatedSeries:
    """
    F of w_Sieg = alpha^-3 (U - beta)(U - gamma)(U - delta) w_sph, with U acting
    on generating series as the shift-divide map.
    """
    series = bessel_series(params, twist, r, order)
    for x in params.parameters()[1:]:
        shifted = series_shift_divide(series)
        series = shifted - series.truncate(shifted.order).scale(x)
    return series.scale(params.alpha ** -3)


def siegel_zeta_series_route(params: HeckeParams, twist: TwistData, q: int, r: int,
                             order: int = 8) -> Scalar:
    """
    (1/(p+1)^2) L(pi, s1+s2-1/2)^-1 F_wSieg(p^(-1-q)).

    The eigen-series must be c/(1 - alpha X); that shape is checked on every
    stored coefficient before the closed form c/(1 - alpha X) is evaluated.

    Raises:
        VanishingDenominator: 1 - alpha p^(-1-q) = 0
        InvariantViolation: the eigen-series is not geometric in alpha
    """
    F = params.field
    series = siegel_eigen_series(params, twist, r, order)
    c = series.coefficient(0)
    for n in range(series.order + 1):
        if series.coefficient(n) != c * params.alpha ** n:
            raise InvariantViolation(f"Siegel eigen-series is not geometric at degree {n}")
    X0 = F.p_power(-1 - q)
    gap = 1 - params.alpha * X0
    if gap.is_zero():
        raise VanishingDenominator(f"1 - alpha/p^(1+q) vanishes at q={q}")
    value = c / gap
    L_inverse = ztilde_normalization(params, twist, q, r)["L_first_inverse"]
    return value * L_inverse / F(params.p + 1) ** 2


def siegel_zeta_closed_form(params: HeckeParams, twist: TwistData, q: int, r: int) -> Scalar:
    F = params.field
    _, beta, gamma, delta = params.parameters()
    pq1 = F.p_power(1 + q)
    shift = params.r2 + r
    return (
        (1 - beta / pq1)
        * (1 - gamma / pq1)
        * (1 - delta / pq1)
        * (1 - delta / (F.p_power(shift + 2) * twist.chi2))
        * (1 - twist.chi2 * F.p_power(shift + 1) / params.alpha)
        / F(params.p + 1) ** 2
    )


def siegel_zeta_paths(params: HeckeParams, twist: TwistData, q: int, r: int) -> SiegelZetaPaths:
    require_admissible(params, q, r)
    twist.check(params)
    return SiegelZetaPaths(
        siegel_zeta_closed_form(params, twist, q, r),
        siegel_zeta_series_route(params, twist, q, r),
    )


def siegel_zeta(params: HeckeParams, twist: TwistData, q: int, r: int) -> Scalar:
    """
    Z~(w_Sieg_alpha, Phi_Sieg) at (s1, s2) = (-t1/2, -t2/2).

    Raises:
        VanishingDenominator: the series route meets a zero denominator
        InvariantViolation: the two computations disagree
    """
    paths = siegel_zeta_paths(params, twist, q, r)
    if not paths.agree:
        raise InvariantViolation(
            f"Siegel zeta paths disagree: {paths.closed_form} vs {paths.series_route}"
        )
    return paths.closed_form


def ztilde_normalization(params: HeckeParams, twist: TwistData, q: int, r: int
                         ) -> Dict[str, Scalar]:
    """
    The reciprocals of the two L-factors dividing Z in Z~:

        L_first_inverse   = prod_x (1 - x / p^(q+1))                 L(pi, s1+s2-1/2)^-1
        L_second_inverse  = prod_x (1 - x / (chi2(p) p^(r+r2+2)))    L(pi x chi2^-1, s1-s2+1/2)^-1
    """
    F = params.field
    first = F.one
    second = F.one
    pq1 = F.p_power(q + 1)
    pr = F.p_power(r + params.r2 + 2) * twist.chi2
    for x in params.parameters():
        first = first * (1 - x / pq1)
        second = second * (1 - x / pr)
    return {"L_first_inverse": first, "L_second_inverse": second}
