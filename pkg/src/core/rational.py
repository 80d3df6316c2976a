"""Exact rationals and quadratic radii.

Rationals are plain `fractions.Fraction` values. Radii whose squares are not
rational (for example 2dR - eps with R irrational) are carried as
`QuadRadius` values u + v*sqrt(D) over a fixed rational D > 0.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .exceptions import ParameterError

Rational = Fraction


# =============================================================================
# Parsing and formatting
# =============================================================================


def parse_rational(value: "str | int | Fraction") -> Fraction:
    """Parse "p/q", "n" or an exact decimal string such as "48.15".

    Raises:
        ParameterError: If the value is not an exact rational literal
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParameterError(f"Rationals must be given as strings or integers, got {value!r}")

    text = value.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ParameterError(f"Zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(Decimal(text))
    except (ValueError, InvalidOperation) as e:
        raise ParameterError(f"Not a rational: {value!r}") from e


def format_rational(value: Fraction) -> str:
    """Format as "n" for integers, "p/q" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sign(value: Fraction | int) -> int:
    return (value > 0) - (value < 0)


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def rational_gcd(x: Fraction, y: Fraction) -> Fraction:
    """Largest positive rational g with x/g and y/g both integers."""
    if x == 0 and y == 0:
        raise ParameterError("gcd of two zeros is undefined")
    num = math.gcd(x.numerator * y.denominator, y.numerator * x.denominator)
    return Fraction(num, x.denominator * y.denominator)


# =============================================================================
# Quadratic radii
# =============================================================================


@dataclass(frozen=True)
class QuadRadius:
    """The real number u + v*sqrt(D) with rational u, v and rational D > 0."""

    u: Fraction
    v: Fraction
    D: Fraction

    def __post_init__(self) -> None:
        if self.D <= 0:
            raise ParameterError(f"QuadRadius needs D > 0, got {self.D}")
        root = rational_sqrt(self.D)
        if root is not None and self.v != 0:
            # Collapse perfect squares so equality stays canonical.
            object.__setattr__(self, "u", self.u + self.v * root)
            object.__setattr__(self, "v", Fraction(0))

    @classmethod
    def from_rational(cls, value: Fraction) -> "QuadRadius":
        return cls(Fraction(value), Fraction(0), Fraction(1))

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    def squared(self) -> "QuadRadius":
        """(u + v√D)² = u² + v²D + 2uv√D."""
        return QuadRadius(self.u**2 + self.v**2 * self.D, 2 * self.u * self.v, self.D)

    def sign(self) -> int:
        return -cmp_rational_quad(Fraction(0), self)

    def to_float(self) -> float:
        """Approximate value, for display and drawing only."""
        return float(self.u) + float(self.v) * math.sqrt(self.D)

    def __str__(self) -> str:
        if self.is_rational:
            return format_rational(self.u)
        u, v, root = (format_rational(c) for c in (self.u, self.v, self.D))
        return f"{u}+{v}*sqrt({root})"


RadiusSq = Fraction | QuadRadius


def cmp_rational_quad(q: Fraction, alpha: QuadRadius) -> int:
    """Exact sign of q - (u + v*sqrt(D)): -1, 0 or 1."""
    s = q - alpha.u
    v = alpha.v
    if v == 0:
        return sign(s)
    if sign(s) != sign(v):
        return sign(s) if s != 0 else -sign(v)
    return sign(v) * sign(s * s - v * v * alpha.D)


def cmp_to_radius_sq(q: Fraction, rho_sq: RadiusSq) -> int:
    """Compare a rational squared distance against a rational or quadratic ρ²."""
    if isinstance(rho_sq, QuadRadius):
        return cmp_rational_quad(q, rho_sq)
    return sign(q - rho_sq)


def radius_sq_to_str(rho_sq: RadiusSq) -> str:
    if isinstance(rho_sq, QuadRadius):
        return str(rho_sq)
    return format_rational(rho_sq)


def radius_sq_floor(rho_sq: RadiusSq) -> Fraction:
    """A rational lower bound for ρ² that is exact when ρ² is rational."""
    if isinstance(rho_sq, QuadRadius):
        if rho_sq.is_rational:
            return rho_sq.u
        approx = Fraction(rho_sq.to_float()).limit_denominator(10**6)
        while cmp_rational_quad(approx, rho_sq) > 0:
            approx -= Fraction(1, 10**6)
        return approx
    return rho_sq


def radius_sq_ceil(rho_sq: RadiusSq) -> Fraction:
    """A rational upper bound for ρ² that is exact when ρ² is rational."""
    if isinstance(rho_sq, QuadRadius):
        if rho_sq.is_rational:
            return rho_sq.u
        approx = Fraction(rho_sq.to_float()).limit_denominator(10**6)
        while cmp_rational_quad(approx, rho_sq) < 0:
            approx += Fraction(1, 10**6)
        return approx
    return rho_sq
