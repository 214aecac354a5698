"""Two-bridge fraction arithmetic and the virtual fibration verdict.

A two-bridge knot or link is encoded by a coprime fraction p/q; q odd
gives a knot, q even a link, and 1/0 is the excluded trivial two
component link.  Unoriented equivalence is Schubert's rule
(q = q' and p' = +-p^{+-1} mod q).  Fiberedness is decided by searching
for a continued fraction expansion 1/(2s1 + 1/(2s2 + ...)) with all
partial quotients +-2 whose exact value lands in the Schubert class;
when no expansion exists, the complement is still virtually fibered via
the degree-2q great circle link cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Set, Tuple

import numpy as np

from .errors import InvalidInputError
from .covering import CoveringCertificate, covering_certificate


@dataclass(frozen=True, order=True)
class TwoBridgeFraction:
    """A normalized two-bridge fraction: 0 < p < q with gcd(p, q) = 1, or the sentinel 1/0."""

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if q == 0:
            if abs(p) != 1:
                raise InvalidInputError("the only fraction with q = 0 is 1/0")
            object.__setattr__(self, "p", 1)
            return
        if q < 0:
            p, q = -p, -q
        if math.gcd(p, q) != 1:
            raise InvalidInputError(f"p and q must be coprime, got {p}/{q}")
        if q == 1:
            raise InvalidInputError(
                "p/1 is the unknot, which is not a two-bridge knot; use q = 0 for the trivial link or q >= 2")
        p %= q
        if p == 0:
            raise InvalidInputError(f"{self.p}/{self.q} does not normalize into 0 < p < q")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "TwoBridgeFraction":
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise InvalidInputError(f"expected 'p/q', got {text!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InvalidInputError(f"expected integers in 'p/q', got {text!r}") from exc
        return cls(p, q)

    @property
    def is_trivial_link(self) -> bool:
        return self.q == 0

    @property
    def is_knot(self) -> bool:
        return self.q % 2 == 1 and self.q != 0

    @property
    def is_link(self) -> bool:
        return self.q != 0 and self.q % 2 == 0

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def schubert_equivalent(f1: TwoBridgeFraction, f2: TwoBridgeFraction) -> bool:
    """Unoriented equivalence: q = q' and p' congruent to +-p or +-p^{-1} mod q."""
    if f1.q != f2.q:
        return False
    if f1.is_trivial_link:
        return True
    q = f1.q
    p1, p2 = f1.p, f2.p
    return (p2 - p1) % q == 0 or (p2 + p1) % q == 0 \
        or (p1 * p2 - 1) % q == 0 or (p1 * p2 + 1) % q == 0


def equivalence_class(f: TwoBridgeFraction) -> Set[TwoBridgeFraction]:
    """All normalized fractions equivalent to f: {p, q-p, p^{-1}, q-p^{-1}} over q."""
    if f.is_trivial_link:
        raise InvalidInputError("the trivial link has no equivalence class to enumerate")
    q = f.q
    pinv = pow(f.p, -1, q)
    return {TwoBridgeFraction(x, q) for x in (f.p, q - f.p, pinv, q - pinv)}


# ---------------------------------------------------------------------------
# Continued fractions with partial quotients +-2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvenContinuedFraction:
    """A sign sequence encoding 1/(2 s1 + 1/(2 s2 + ... + 1/(2 sn))).

    ``target`` records which fraction the expansion evaluates to (a
    member of the searched equivalence class).
    """

    signs: Tuple[int, ...]
    target: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if not self.signs or any(s not in (1, -1) for s in self.signs):
            raise InvalidInputError("signs must be a nonempty sequence over {+1, -1}")

    def value(self) -> Fraction:
        """Exact evaluation, innermost first."""
        v = Fraction(0)
        for s in reversed(self.signs):
            v = Fraction(1) / (2 * s + v)
        return v

    def __str__(self) -> str:
        return "1/(" + " + 1/(".join(f"{2 * s:+d}" for s in self.signs) + ")" * len(self.signs)


def _search_signs(target: Fraction, max_depth: int) -> Optional[Tuple[int, ...]]:
    """Depth-first search for a +-2 expansion of an exact rational target.

    At each step the residual after choosing the outermost sign is
    forced; a residual can only be continued when its absolute value
    lies strictly between 1/3 and 1 (the closure of the achievable
    values), which makes the search complete: denominators strictly
    decrease, so termination does not depend on the depth cap.
    """
    if not 0 < abs(target) < 1:
        return None
    stack: List[Tuple[Fraction, Tuple[int, ...]]] = [(target, ())]
    while stack:
        t, signs = stack.pop()
        if len(signs) >= max_depth:
            continue
        inv = 1 / t
        for s in (-1, 1):  # pushed in reverse so +1 is explored first
            rest = inv - 2 * s
            if rest == 0:
                return signs + (s,)
            if Fraction(1, 3) < abs(rest) < 1:
                stack.append((rest, signs + (s,)))
    return None


def find_pm2_expansion(f: TwoBridgeFraction,
                       max_depth: Optional[int] = None) -> Optional[EvenContinuedFraction]:
    """Search the whole Schubert class of f for a +-2 continued fraction expansion.

    Fiberedness is an invariant of the unoriented link, so any class
    member witnesses it; members are tried in increasing order.  Returns
    None when no member admits an expansion within ``max_depth``
    (default 2q, which the denominator descent never exhausts).
    """
    if f.is_trivial_link:
        return None
    depth = max_depth if max_depth is not None else 2 * f.q
    for member in sorted(equivalence_class(f)):
        target = Fraction(member.p, member.q)
        signs = _search_signs(target, depth)
        if signs is not None:
            return EvenContinuedFraction(signs=signs, target=target)
    return None


# ---------------------------------------------------------------------------
# Blind enumeration oracle
# ---------------------------------------------------------------------------

class Pm2ValueTable:
    """Exhaustive table of all +-2 continued fraction values up to a depth.

    Built layer by layer in exact integer arithmetic on int64 arrays:
    layer d holds the 2^d values of all sign sequences of length d, in
    reduced form with positive denominator, indexed so that the sign
    choices can be read back off the position.  Independent of the
    pruned search; used as its oracle.
    """

    MAX_DEPTH = 34  # keeps 3^d * 3 comfortably inside int64

    def __init__(self, max_depth: int):
        if not 1 <= max_depth <= self.MAX_DEPTH:
            raise InvalidInputError(f"depth must be in 1..{self.MAX_DEPTH}")
        self.max_depth = max_depth
        self.layers: List[Tuple[np.ndarray, np.ndarray]] = []
        num = np.array([1, -1], dtype=np.int64)
        den = np.array([2, 2], dtype=np.int64)
        self.layers.append((num, den))
        for _ in range(1, max_depth):
            prev_num, prev_den = self.layers[-1]
            # prepend s = +1: value -> 1/(2 + value); denominator stays positive
            plus_num = prev_den
            plus_den = 2 * prev_den + prev_num
            # prepend s = -1: 1/(-2 + value) has negative denominator; normalize
            minus_num = -prev_den
            minus_den = 2 * prev_den - prev_num
            self.layers.append((
                np.concatenate([plus_num, minus_num]),
                np.concatenate([plus_den, minus_den]),
            ))

    def find(self, target: Fraction,
             max_depth: Optional[int] = None) -> Optional[Tuple[int, ...]]:
        """Signs of the shortest expansion with the exact target value, or None."""
        tn, td = target.numerator, target.denominator
        layers = self.layers if max_depth is None else self.layers[:max_depth]
        for depth, (num, den) in enumerate(layers, start=1):
            hits = np.flatnonzero((num == tn) & (den == td))
            if hits.size:
                return self._signs_at(depth, int(hits[0]))
        return None

    def _signs_at(self, depth: int, index: int) -> Tuple[int, ...]:
        signs: List[int] = []
        for d in range(depth, 0, -1):
            half = 1 << (d - 1)
            if index < half:
                signs.append(1)
            else:
                signs.append(-1)
                index -= half
        return tuple(signs)


def blind_pm2_expansion(f: TwoBridgeFraction, max_depth: int,
                        table: Optional[Pm2ValueTable] = None) -> Optional[EvenContinuedFraction]:
    """Oracle counterpart of :func:`find_pm2_expansion`: blind exhaustive enumeration."""
    if f.is_trivial_link:
        return None
    if table is None or table.max_depth < max_depth:
        table = Pm2ValueTable(max_depth)
    for member in sorted(equivalence_class(f)):
        target = Fraction(member.p, member.q)
        signs = table.find(target, max_depth)
        if signs is not None:
            return EvenContinuedFraction(signs=signs, target=target)
    return None


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

class VerdictStatus(str, Enum):
    FIBERED = "FIBERED"
    VIRTUALLY_FIBERED = "VIRTUALLY_FIBERED"
    OUT_OF_SCOPE = "OUT_OF_SCOPE"


@dataclass(frozen=True)
class VirtualFibrationVerdict:
    """Classification outcome for a two-bridge fraction or Montesinos datum."""

    subject: str
    status: VerdictStatus
    expansion: Optional[EvenContinuedFraction] = None
    cover_name: Optional[str] = None
    cover_degree: Optional[int] = None
    certificate: Optional[CoveringCertificate] = None
    reason: Optional[str] = None
    search_depth: Optional[int] = None

    def __post_init__(self) -> None:
        if self.status is VerdictStatus.FIBERED and self.expansion is None:
            raise InvalidInputError("a FIBERED verdict must carry an expansion witness")
        if self.status is VerdictStatus.VIRTUALLY_FIBERED and self.cover_name is None:
            raise InvalidInputError("a VIRTUALLY_FIBERED verdict must name its cover")


def verdict(f: TwoBridgeFraction, max_depth: Optional[int] = None,
            include_certificate: bool = True) -> VirtualFibrationVerdict:
    """Classify a two-bridge fraction.

    FIBERED with an expansion witness when the +-2 search succeeds;
    otherwise VIRTUALLY_FIBERED via the degree-2q great circle link
    cover (with its covering certificate attached when requested).
    The trivial link 1/0 is out of scope.
    """
    if f.is_trivial_link:
        return VirtualFibrationVerdict(
            subject=str(f), status=VerdictStatus.OUT_OF_SCOPE,
            reason="trivial two component link")
    depth = max_depth if max_depth is not None else 2 * f.q
    expansion = find_pm2_expansion(f, depth)
    if expansion is not None:
        return VirtualFibrationVerdict(
            subject=str(f), status=VerdictStatus.FIBERED,
            expansion=expansion, search_depth=depth)
    cert = covering_certificate(f.p, f.q) if include_certificate else None
    return VirtualFibrationVerdict(
        subject=str(f), status=VerdictStatus.VIRTUALLY_FIBERED,
        cover_name=f"D_{{{f.p}/{f.q}}}", cover_degree=2 * f.q,
        certificate=cert, search_depth=depth)
