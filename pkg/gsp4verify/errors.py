"""
Exception hierarchy for gsp4verify.

Every error raised by the library derives from Gsp4VerifyError so that the
CLI can catch one type at its boundary.
"""


class Gsp4VerifyError(Exception):
    """Base class for all gsp4verify errors."""


# Exact arithmetic

class DivisionByZero(Gsp4VerifyError, ZeroDivisionError):
    """A denominator vanished, symbolically or under specialization."""


class IrrationalResidue(Gsp4VerifyError):
    """A specialization left an odd power of sqrt(p) behind."""


class PoleAtOne(Gsp4VerifyError):
    """A geometric ratio equals 1, so the series has no closed form."""


class FieldMismatch(Gsp4VerifyError):
    """Scalars built over different primes were combined."""


# Hecke parameters

class SymbolicMode(Gsp4VerifyError):
    """The operation needs rational parameters but got indeterminates."""


class InvariantViolation(Gsp4VerifyError):
    """Supplied data violates a structural relation such as alpha*delta = beta*gamma."""


class ParityViolation(Gsp4VerifyError):
    """(q, r) outside the admissible range or with the wrong parity."""


class VanishingEulerFactor(Gsp4VerifyError):
    """An Euler factor that must be inverted is zero."""


class VanishingDenominator(Gsp4VerifyError):
    """A closed-form denominator is zero."""


# Groups, cosets, recursion

class PrecisionExceeded(Gsp4VerifyError):
    """A p-adic computation needed more precision than configured."""


class UnderdeterminedSystem(Gsp4VerifyError):
    """The Hecke recursion could not pin down the requested value."""


class UnknownOperator(Gsp4VerifyError):
    """Operator tag not available at the requested level."""


# Zeta integrals and Eisenstein series

class UnsupportedTag(Gsp4VerifyError):
    """Schwartz slot tag (or tag pair) outside the supported cases."""


class PoleDetected(Gsp4VerifyError):
    """The torus integral diverges at the evaluation point."""


class UnsupportedLocalDatum(Gsp4VerifyError):
    """The local Schwartz datum at p is not one the construction allows."""


class WeightZeroSupport(Gsp4VerifyError):
    """Weight 0 requested but Phi(0, 0) != 0."""


class TruncationTooShort(Gsp4VerifyError):
    """A q-expansion does not carry enough coefficients for the operator."""


class CharacterConductorMismatch(Gsp4VerifyError):
    """A character table and its claimed conductor are incompatible."""


# Branching

class RangeViolation(Gsp4VerifyError):
    """Branching indices outside 0 <= q <= r2, 0 <= r <= r1 - r2."""


class DegreeBudgetExceeded(Gsp4VerifyError):
    """r1 + r2 exceeds the configured polynomial degree budget."""


# Moduli

class NonOrdinary(Gsp4VerifyError):
    """The moduli point carries no multiplicative summand."""


# Configuration

class ConfigError(Gsp4VerifyError):
    """Invalid settings or command-line configuration."""
