"""Exact arithmetic for rational multiples of pi.

Angles that arise from the rotation-orbit links are all of the form
(n/d)*pi.  Keeping them as reduced integer pairs lets equality,
intersection and wedge-membership tests run in exact integer arithmetic
instead of floating comparisons, which matters once denominators grow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True, order=False)
class RationalAngle:
    """The angle (numerator/denominator)*pi, reduced, with numerator in [0, 2*denominator).

    Two instances compare equal exactly when they are the same angle
    modulo 2*pi.
    """

    numerator: int
    denominator: int = 1

    def __post_init__(self) -> None:
        n, d = self.numerator, self.denominator
        if d == 0:
            raise ZeroDivisionError("angle denominator must be nonzero")
        if d < 0:
            n, d = -n, -d
        g = gcd(abs(n), d)
        if g > 1:
            n //= g
            d //= g
        if g == 0:  # n == 0, gcd(0, d) == d already handled above; keep d = 1
            d = 1
        n %= 2 * d
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "denominator", d)

    # ------------------------------------------------------------------ arithmetic

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __sub__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(
            self.numerator * other.denominator - other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self) -> "RationalAngle":
        return RationalAngle(-self.numerator, self.denominator)

    def __mul__(self, k: int) -> "RationalAngle":
        return RationalAngle(self.numerator * k, self.denominator)

    __rmul__ = __mul__

    def antipode(self) -> "RationalAngle":
        """The angle shifted by pi."""
        return self + RationalAngle(1, 1)

    # ------------------------------------------------------------------ queries

    def same_line(self, other: "RationalAngle") -> bool:
        """True when the two angles agree modulo pi (same line through the origin)."""
        diff = self - other
        # diff is normalized to [0, 2*pi); a multiple of pi means n/d in {0, 1}
        return diff.denominator == 1

    def as_fraction_of_pi(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def index_in_units_of(self, q: int) -> int:
        """Write the angle as k*pi/q and return k in [0, 2q); raises if not a multiple of pi/q."""
        num = self.numerator * q
        if num % self.denominator != 0:
            raise ValueError(f"{self} is not an integer multiple of pi/{q}")
        return (num // self.denominator) % (2 * q)

    @property
    def radians(self) -> float:
        return math.pi * self.numerator / self.denominator

    def cos(self) -> float:
        return math.cos(self.radians)

    def sin(self) -> float:
        return math.sin(self.radians)

    def __str__(self) -> str:
        if self.numerator == 0:
            return "0"
        head = "pi" if self.numerator == 1 else f"{self.numerator}*pi"
        return head if self.denominator == 1 else f"{head}/{self.denominator}"

    def json_pair(self) -> list[int]:
        """Serialized form: [numerator, denominator] for (n/d)*pi."""
        return [self.numerator, self.denominator]


ZERO_ANGLE = RationalAngle(0)
