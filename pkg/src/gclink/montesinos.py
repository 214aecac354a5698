"""Spherical classification of Montesinos data.

A Montesinos link is a cyclic arrangement of rational tangles
(beta_i/alpha_i) with an optional integral twist e0.  Its double
branched cover is a Seifert fibered space over the sphere with one cone
point of order alpha_i per tangle; that cover is spherical exactly when
the base orbifold is spherical and the Euler number of the fibration is
nonzero.  With at most two cone points the base is a lens-space base;
with three, sphericity is the short list (2,2,n), (2,3,3), (2,3,4),
(2,3,5), equivalently positive orbifold Euler characteristic; four or
more cone points are never spherical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import InvalidInputError
from .twobridge import VerdictStatus, VirtualFibrationVerdict


@dataclass(frozen=True)
class MontesinosLink:
    """Integral twist e0 plus rational tangles (beta_i, alpha_i), alpha_i >= 2, 0 < beta_i < alpha_i."""

    tangles: Tuple[Tuple[int, int], ...]
    e0: int = 0

    def __post_init__(self) -> None:
        if not self.tangles:
            raise InvalidInputError("a Montesinos link needs at least one tangle")
        for beta, alpha in self.tangles:
            if alpha < 2:
                raise InvalidInputError(
                    f"tangle {beta}/{alpha}: alpha must be at least 2 (integer tangles fold into e0)")
            if not 0 < beta < alpha:
                raise InvalidInputError(f"tangle {beta}/{alpha}: beta must satisfy 0 < beta < alpha")
            if math.gcd(beta, alpha) != 1:
                raise InvalidInputError(f"tangle {beta}/{alpha}: beta and alpha must be coprime")
        object.__setattr__(self, "tangles", tuple(tuple(t) for t in self.tangles))

    @classmethod
    def parse(cls, tangle_texts: Sequence[str], e0: int = 0) -> "MontesinosLink":
        tangles = []
        for text in tangle_texts:
            parts = text.strip().split("/")
            if len(parts) != 2:
                raise InvalidInputError(f"expected 'beta/alpha', got {text!r}")
            tangles.append((int(parts[0]), int(parts[1])))
        return cls(tuple(tangles), e0)

    def __str__(self) -> str:
        body = ", ".join(f"{b}/{a}" for b, a in self.tangles)
        return f"M(e0={self.e0}; {body})"


@dataclass(frozen=True)
class OrbifoldBase:
    """A sphere with cone points, recorded by their orders sorted ascending."""

    cone_orders: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a < 2 for a in self.cone_orders):
            raise InvalidInputError("cone orders must be at least 2")
        object.__setattr__(self, "cone_orders", tuple(sorted(self.cone_orders)))

    def __str__(self) -> str:
        return "S(" + ",".join(str(a) for a in self.cone_orders) + ")"


def orbifold_euler_char(base: OrbifoldBase) -> Fraction:
    """chi_orb = 2 - sum(1 - 1/alpha_i), exact."""
    return Fraction(2) - sum(Fraction(a - 1, a) for a in base.cone_orders)


SPHERICAL_TRIPLES = ((2, 3, 3), (2, 3, 4), (2, 3, 5))


def spherical_triple_by_list(orders: Sequence[int]) -> bool:
    """Membership test for the spherical three-cone bases: (2,2,n) or the three exceptional triples."""
    a, b, c = sorted(orders)
    return (a == 2 and b == 2) or (a, b, c) in SPHERICAL_TRIPLES


def spherical_triple_by_euler(orders: Sequence[int]) -> bool:
    """Positivity test: a three-cone base is spherical exactly when chi_orb > 0."""
    return orbifold_euler_char(OrbifoldBase(tuple(orders))) > 0


class GeometryVerdict(str, Enum):
    SPHERICAL = "SPHERICAL"
    NOT_SPHERICAL = "NOT_SPHERICAL"


@dataclass(frozen=True)
class SeifertClassification:
    """Outcome of the spherical test for the double branched cover."""

    base: OrbifoldBase
    euler_number: Fraction
    geometry_verdict: GeometryVerdict
    reason: str


def seifert_euler_number(link: MontesinosLink) -> Fraction:
    """Euler number of the double branched cover's fibration: -(e0 + sum beta_i/alpha_i).

    This is the standard Seifert-invariant convention; only nonvanishing
    matters for the spherical test, so the overall sign is cosmetic.
    """
    return -(Fraction(link.e0) + sum(Fraction(b, a) for b, a in link.tangles))


def classify(link: MontesinosLink) -> SeifertClassification:
    """Decide whether the double branched cover is a spherical Seifert fibered space."""
    base = OrbifoldBase(tuple(a for _, a in link.tangles))
    e = seifert_euler_number(link)
    n = len(base.cone_orders)
    if n <= 2:
        base_spherical = True
        base_reason = f"base {base} has at most two cone points (lens space base)"
    elif n == 3:
        base_spherical = spherical_triple_by_list(base.cone_orders)
        chi = orbifold_euler_char(base)
        base_reason = f"base {base} has chi_orb = {chi}"
        if base_spherical != (chi > 0):
            raise RuntimeError("spherical triple list disagrees with Euler characteristic")
    else:
        base_spherical = False
        base_reason = f"base {base} has {n} >= 4 cone points, chi_orb <= 0"
    if not base_spherical:
        return SeifertClassification(base, e, GeometryVerdict.NOT_SPHERICAL,
                                     f"{base_reason}; not a spherical orbifold")
    if e == 0:
        return SeifertClassification(base, e, GeometryVerdict.NOT_SPHERICAL,
                                     f"{base_reason}; Euler number vanishes")
    return SeifertClassification(base, e, GeometryVerdict.SPHERICAL,
                                 f"{base_reason}; Euler number {e} is nonzero")


def verdict(link: MontesinosLink) -> VirtualFibrationVerdict:
    """Virtual fibration verdict for Montesinos data.

    Spherical inputs are virtually fibered: the double branched cover is
    a spherical Seifert fibered space, its universal cover is the
    three-sphere, and the preimage of the branch locus there can be
    realized as a great circle link, whose complement is fibered.  The
    geometric cover is existential here and is not constructed.
    """
    cls = classify(link)
    if cls.geometry_verdict is GeometryVerdict.SPHERICAL:
        return VirtualFibrationVerdict(
            subject=str(link), status=VerdictStatus.VIRTUALLY_FIBERED,
            cover_name="great circle link complement (existential, via the spherical double branched cover)",
            reason=cls.reason)
    return VirtualFibrationVerdict(
        subject=str(link), status=VerdictStatus.OUT_OF_SCOPE,
        reason=cls.reason + "; the spherical Montesinos pipeline does not apply")
