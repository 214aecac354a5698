"""Construction and set-level verification of the rotation-orbit links D_{p/q}.

D_{p/q} is the q-component great circle link swept out of the real great
circle by the order-q screw isometry phi_{p/q}.  For odd q it is a single
orbit; for even q it is the union of the orbits of the real great circle
and of its pi/q-shifted copy, with the antipodal duplicates merged.  All
component bookkeeping (equality, disjointness, axis indices) runs on the
exact rational axis tags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .angles import RationalAngle
from .errors import InvalidInputError, NotDisjointError, NotInvariantError
from . import geom4
from .geom4 import GreatCircle, Isometry, apply_isometry, great_circle_from_axes

REAL = "REAL"
SHIFTED = "SHIFTED"


@dataclass(frozen=True)
class OrbitLabel:
    """Which generator's orbit a component belongs to, and its index in that orbit."""

    kind: str  # REAL or SHIFTED
    index: int


@dataclass(frozen=True, eq=False)
class GreatCircleLink:
    """A finite set of pairwise disjoint great circles.

    ``provenance`` records the (p, q) that generated the link, when any;
    all components of a generated link carry exact axis tags.
    """

    components: Tuple[GreatCircle, ...]
    provenance: Optional[Tuple[int, int]] = None
    orbit_labels: Optional[Tuple[OrbitLabel, ...]] = None

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if self.orbit_labels is not None:
            object.__setattr__(self, "orbit_labels", tuple(self.orbit_labels))
            if len(self.orbit_labels) != len(comps):
                raise InvalidInputError("one orbit label per component required")
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if geom4.circles_equal(comps[i], comps[j]):
                    raise InvalidInputError(f"components {i} and {j} coincide")
                if geom4.circles_intersect(comps[i], comps[j]):
                    raise NotDisjointError(f"components {i} and {j} intersect")
        if self.provenance is not None and len(comps) != self.provenance[1]:
            raise InvalidInputError("a link generated from (p, q) must have q components")

    def __len__(self) -> int:
        return len(self.components)


def _validate_pq(p: int, q: int) -> Tuple[int, int]:
    if q == 0:
        raise InvalidInputError(
            "p/q = 1/0 is the trivial two component link and is excluded")
    if q < 2:
        raise InvalidInputError(f"q must be at least 2, got {q}")
    if math.gcd(p, q) != 1:
        raise InvalidInputError(f"p and q must be coprime, got p={p}, q={q}")
    return p % q, q


def construct_dpq(p: int, q: int) -> GreatCircleLink:
    """Build the q-component rotation-orbit link for a coprime fraction p/q.

    Odd q: the q distinct circles with axis tags (2k*pi/q, 2kp*pi/q).
    Even q: q/2 circles from the real orbit plus q/2 from the shifted
    orbit with tags ((2k+1)*pi/q, (2k+1)p*pi/q); applying the generator
    q/2 times returns each circle to itself as a set, so each orbit
    contributes q/2 distinct components.
    """
    p, q = _validate_pq(p, q)
    comps: List[GreatCircle] = []
    labels: List[OrbitLabel] = []
    if q % 2 == 1:
        for k in range(q):
            comps.append(great_circle_from_axes(
                RationalAngle(2 * k, q), RationalAngle(2 * k * p, q)))
            labels.append(OrbitLabel(REAL, k))
    else:
        for k in range(q // 2):
            comps.append(great_circle_from_axes(
                RationalAngle(2 * k, q), RationalAngle(2 * k * p, q)))
            labels.append(OrbitLabel(REAL, k))
        for k in range(q // 2):
            comps.append(great_circle_from_axes(
                RationalAngle(2 * k + 1, q), RationalAngle((2 * k + 1) * p, q)))
            labels.append(OrbitLabel(SHIFTED, k))
    return GreatCircleLink(tuple(comps), (p, q), tuple(labels))


# ---------------------------------------------------------------------------
# Axis combinatorics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxisIntersection:
    """Axis crossing data of one component, in units of pi/q modulo 2q."""

    component: int
    z_indices: Tuple[int, int]
    w_indices: Tuple[int, int]


def axis_intersections(link: GreatCircleLink) -> List[AxisIntersection]:
    """Where each component meets the z- and w-axis circles.

    Component with tag (a, b) meets the z-axis circle at angles a and
    a + pi, i.e. indices (k, k + q) in units of pi/q, and similarly on
    the w-axis.  Over the whole link each axis is hit in all 2q indices
    exactly once.
    """
    if link.provenance is None:
        raise InvalidInputError("link has no (p, q) provenance")
    _, q = link.provenance
    out: List[AxisIntersection] = []
    z_seen: set[int] = set()
    w_seen: set[int] = set()
    for i, c in enumerate(link.components):
        if c.axis_tag is None:
            raise InvalidInputError(f"component {i} has no exact axis tag")
        a, b = c.axis_tag
        k = a.index_in_units_of(q)
        l = b.index_in_units_of(q)
        out.append(AxisIntersection(i, (k, (k + q) % (2 * q)), (l, (l + q) % (2 * q))))
        z_seen.update(out[-1].z_indices)
        w_seen.update(out[-1].w_indices)
    if z_seen != set(range(2 * q)) or w_seen != set(range(2 * q)):
        raise NotInvariantError("axis intersections do not cover all 2q points")
    return out


def axis_pairing_holds(link: GreatCircleLink) -> bool:
    """Check the congruence l = p*k (mod 2q) between each component's axis indices."""
    p, q = link.provenance
    for rec in axis_intersections(link):
        k, l = rec.z_indices[0], rec.w_indices[0]
        if (l - p * k) % (2 * q) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Symmetry and linking data
# ---------------------------------------------------------------------------

def verify_invariance(link: GreatCircleLink, iso: Isometry) -> Tuple[int, ...]:
    """The permutation sigma with iso(component_i) = component_{sigma(i)} as sets.

    Raises :class:`NotInvariantError` when some image matches no component.
    """
    comps = link.components
    perm: List[int] = []
    for i, c in enumerate(comps):
        image = apply_isometry(iso, c)
        match = None
        for j, other in enumerate(comps):
            if geom4.circles_equal(image, other):
                match = j
                break
        if match is None:
            raise NotInvariantError(f"not invariant: image of component {i} is not in the link")
        perm.append(match)
    if len(set(perm)) != len(perm):
        raise NotInvariantError("image map is not a permutation")
    return tuple(perm)


def permutation_cycles(perm: Sequence[int]) -> List[Tuple[int, ...]]:
    """Disjoint cycle decomposition, each cycle starting at its smallest element."""
    seen = [False] * len(perm)
    cycles: List[Tuple[int, ...]] = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        cycles.append(tuple(cyc))
    return cycles


def linking_matrix(link: GreatCircleLink) -> np.ndarray:
    """Symmetric matrix of pairwise linking numbers (zero diagonal)."""
    n = len(link)
    comps = link.components
    for i in range(n):
        for j in range(i + 1, n):
            if geom4.circles_intersect(comps[i], comps[j]):
                raise NotDisjointError(f"components {i} and {j} intersect")
    mats = []
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(np.column_stack(
                [comps[i].u, comps[i].v, comps[j].u, comps[j].v]))
            pairs.append((i, j))
    out = np.zeros((n, n), dtype=int)
    if mats:
        dets = np.linalg.det(np.array(mats))
        signs = np.where(dets > 0, 1, -1)
        for (i, j), s in zip(pairs, signs):
            out[i, j] = out[j, i] = int(s)
    return out


def disjointness_report(link: GreatCircleLink) -> Tuple[float, Tuple[int, int]]:
    """Minimal pairwise geodesic distance and the pair attaining it."""
    n = len(link)
    if n < 2:
        return math.pi / 2, (0, 0)
    comps = link.components
    best = math.inf
    best_pair = (0, 1)
    frames = [c.frame_matrix() for c in comps]
    grams = []
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            grams.append(frames[i].T @ frames[j])
            pairs.append((i, j))
    svals = np.linalg.svd(np.array(grams), compute_uv=False)
    theta1 = np.arccos(np.clip(svals[:, 0], 0.0, 1.0))
    for (i, j), th in zip(pairs, theta1):
        if geom4.circles_intersect(comps[i], comps[j]):
            raise NotDisjointError(f"components {i} and {j} intersect")
        if th < best:
            best = float(th)
            best_pair = (i, j)
    return best, best_pair
