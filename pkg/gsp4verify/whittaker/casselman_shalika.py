"""
Casselman-Shalika values of the normalised spherical Whittaker function.

For dominant t, w_sph(t) = delta_B^(1/2)(t) * chi_t(s), where chi_t is the
character of the dual-group representation with highest weight t and s is
the Satake parameter of Lambda. The character comes from the Weyl character
formula, computed once per weight as a Laurent polynomial in x1, x2, x0 and
then evaluated at Lambda.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.orderings import grlex

from ..algebra import Scalar
from ..errors import InvariantViolation
from ..groups import TorusExponent, weyl_group
from ..hecke_data import HeckeParams
from ..log import get_logger

log = get_logger("whittaker")

LAURENT, _X1, _X2, _X0 = field("x1,x2,x0", QQ, grlex)

# Half the sum of the positive coroots, shifted by half the centre to be integral.
RHO = TorusExponent(2, 1, 1)


def _monomial(t: TorusExponent):
    return (_X1 ** t.e1) * (_X2 ** t.e2) * (_X0 ** t.e0)


def _alternant(t: TorusExponent):
    total = LAURENT.zero
    for element in weyl_group():
        total += element.sign * _monomial(element.act(t))
    return total


@lru_cache(maxsize=None)
def weight_multiplicities(t: TorusExponent) -> Tuple[Tuple[TorusExponent, Fraction], ...]:
    """
    Weights of the irreducible representation with dominant highest weight t,
    with multiplicities, by the Weyl character formula.
    """
    if not t.is_dominant():
        raise InvariantViolation(f"{t} is not dominant")
    quotient = _alternant(t + RHO) / _alternant(RHO)
    denominator = quotient.denom.terms()
    if len(denominator) != 1:
        raise InvariantViolation(f"Weyl character for {t} is not a Laurent polynomial")
    (shift, scale), = denominator
    weights = []
    for monom, coeff in quotient.numer.terms():
        exponents = [a - b for a, b in zip(monom, shift)]
        multiplicity = Fraction(int(coeff.numerator), int(coeff.denominator)) / Fraction(
            int(scale.numerator), int(scale.denominator)
        )
        weights.append((TorusExponent(*exponents), multiplicity))
    weights.sort()
    log.debug("Weyl character expanded", torus=str(t), weights=len(weights))
    return tuple(weights)


def unramified_character(params: HeckeParams, t: TorusExponent) -> Scalar:
    """Lambda(t) = chi1^e1 chi2^e2 rho^e0.

    chi1 = gamma/alpha, chi2 = beta/alpha and rho = alpha p^(-w/2).
    """
    alpha, beta, gamma, _ = params.parameters()
    rho = alpha * params.field.sqrt_p_power(-params.weight)
    return (gamma / alpha) ** t.e1 * (beta / alpha) ** t.e2 * rho ** t.e0


def dual_character(params: HeckeParams, t: TorusExponent) -> Scalar:
    """chi_t at the Satake parameter of Lambda."""
    total = params.field.zero
    for weight, multiplicity in weight_multiplicities(t):
        total = total + unramified_character(params, weight) * multiplicity
    return total


def cs_value_gsp4(params: HeckeParams, t: TorusExponent) -> Scalar:
    """
    w_sph(diag(p^e1, p^e2, p^(e0-e2), p^(e0-e1))); zero off the dominant cone.

    Examples:
        >>> cs_value_gsp4(params, TorusExponent(0, 0, 0))   # 1
        >>> cs_value_gsp4(params, TorusExponent(0, 1, 0))   # 0
    """
    if not t.is_dominant():
        return params.field.zero
    return params.field.sqrt_p_power(-t.modulus_exponent()) * dual_character(params, t)


def complete_homogeneous(values, n: int) -> Scalar:
    """h_n(values), the sum of all monomials of degree n."""
    values = list(values)
    F = values[0].field
    if n < 0:
        return F.zero
    # h_n(x_1..x_k) = sum_i x_1^i h_(n-i)(x_2..x_k)
    table = [F.one] + [F.zero] * n
    for x in values:
        for degree in range(1, n + 1):
            table[degree] = table[degree] + x * table[degree - 1]
    return table[n]


def cs_value_gl2(params: HeckeParams, n: int) -> Scalar:
    """
    w_sph(diag(p^n, 1)) = p^(-n(r1+r2+4)/2) (alpha^n + alpha^(n-1) beta + ... + beta^n);
    zero for n < 0.
    """
    F = params.field
    if n < 0:
        return F.zero
    alpha, beta, _, _ = params.parameters()
    return F.sqrt_p_power(-n * (params.r1 + params.r2 + 4)) * complete_homogeneous(
        [alpha, beta], n
    )


def siegel_levi_value(params: HeckeParams, n: int) -> Scalar:
    """
    w_sph at (n, n, n) through the GL2 values: the spin character of weight n
    is sum_i h_i(alpha, beta) h_(n-i)(gamma, delta).
    """
    F = params.field
    alpha, beta, gamma, delta = params.parameters()
    total = F.zero
    for i in range(n + 1):
        gl2_part = cs_value_gl2(params, i) * F.sqrt_p_power(i * (params.r1 + params.r2 + 4))
        total = total + gl2_part * complete_homogeneous([gamma, delta], n - i)
    return F.sqrt_p_power(-n * (params.weight + 3)) * total


def casselman_shalika_constant(params: HeckeParams) -> Scalar:
    """
    W_(f_sph)(1) for the spherical section of Ind(Lambda):
    (1 - beta/(p alpha)) (1 - gamma/(p beta)) (1 - delta/(p alpha)) (1 - delta/(p beta)).
    """
    alpha, beta, gamma, delta = params.parameters()
    p = params.field.p_power(1)
    return (
        (1 - beta / (p * alpha))
        * (1 - gamma / (p * beta))
        * (1 - delta / (p * alpha))
        * (1 - delta / (p * beta))
    )
