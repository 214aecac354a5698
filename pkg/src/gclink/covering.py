"""Covering-space evidence for the rotation-orbit links.

The screw isometry of a coprime fraction acts freely on the sphere, so
the quotient is the lens space L(q, p).  The link is invariant, and the
fundamental-domain wedges around the two axes each contain exactly three
arcs of the link, at heights 0, pi/q and 2pi/q, rotated along the other
axis according to fixed congruences.  Together with the degree-2
branched-cover relation between the lens space and the two-bridge
picture this assembles into a degree-2q covering certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .angles import RationalAngle
from .errors import CertificateError, InvalidInputError
from .geom4 import phi_isometry
from .greatlink import (
    GreatCircleLink,
    OrbitLabel,
    axis_intersections,
    construct_dpq,
    permutation_cycles,
    verify_invariance,
)

Z_WEDGE = "Z"
W_WEDGE = "W"


@dataclass(frozen=True)
class LensSpaceData:
    """The quotient lens space L(q, p)."""

    q: int
    p: int

    def __post_init__(self) -> None:
        if self.q < 1 or math.gcd(self.p, self.q) != 1:
            raise InvalidInputError("lens space parameters must be coprime with q >= 1")

    def name(self) -> str:
        return f"L({self.q},{self.p})"


@dataclass(frozen=True)
class FreeActionWitness:
    """Per-power fixed-point analysis of the screw isometry.

    For each k in 1..q-1 the table records whether the z-plane and
    w-plane rotations of the k-th power are nontrivial; a fixed point on
    the sphere would need one of them trivial, which the coprimality of
    p and q rules out.
    """

    p: int
    q: int
    free: bool
    table: Tuple[Tuple[int, bool, bool], ...]  # (k, z-rotation nontrivial, w-rotation nontrivial)
    fixed_circle: Optional[str] = None


def verify_free_action(p: int, q: int) -> FreeActionWitness:
    """Symbolically check that no proper power of the screw isometry has a fixed point.

    For non-coprime input the witness reports the power that fixes the
    w-axis circle instead of raising.
    """
    if q < 1:
        raise InvalidInputError(f"q must be a positive integer, got {q}")
    table: List[Tuple[int, bool, bool]] = []
    fixed: Optional[str] = None
    free = True
    for k in range(1, q):
        z_moves = k % q != 0
        w_moves = (k * p) % q != 0
        table.append((k, z_moves, w_moves))
        if not (z_moves and w_moves):
            free = False
            if fixed is None:
                axis = "w-axis circle (z = 0)" if not w_moves else "z-axis circle (w = 0)"
                fixed = f"power {k} fixes the {axis}"
    return FreeActionWitness(p=p, q=q, free=free, table=tuple(table), fixed_circle=fixed)


@dataclass(frozen=True)
class WedgeArcReport:
    """Arc pattern of the link inside one fundamental-domain wedge.

    ``arc_levels`` are the axis angles of the three arcs; each
    ``arc_rotations`` entry is the accumulated rotation along the other
    axis (z-wedge arc at level k*pi/q is rotated by k*p*pi/q in the w
    direction; w-wedge arc at level l*pi/q is rotated by x*pi/q with
    p*x = l mod q).  Every rotation is certified modulo pi against the
    exact axis tag of the component carrying the arc.
    """

    wedge: str
    arc_count: int
    arc_levels: Tuple[RationalAngle, ...]
    arc_rotations: Tuple[RationalAngle, ...]
    carrier_components: Tuple[int, ...]
    carrier_orbits: Tuple[OrbitLabel, ...]


def wedge_arc_report(p: int, q: int, wedge: str,
                     link: Optional[GreatCircleLink] = None) -> WedgeArcReport:
    """Count and locate the link arcs in the z- or w-wedge, in exact arithmetic.

    The wedge around an axis spans axis angles [0, 2pi/q] and reaches out
    to |other coordinate| <= sqrt(2)/2, so the arcs in it are exactly the
    arcs through the axis points with index 0, 1 and 2 in units of pi/q.
    """
    if wedge not in (Z_WEDGE, W_WEDGE):
        raise InvalidInputError(f"wedge must be '{Z_WEDGE}' or '{W_WEDGE}'")
    if link is None:
        link = construct_dpq(p, q)
    if link.provenance is None or link.provenance[1] != q or (p - link.provenance[0]) % q != 0:
        raise InvalidInputError("link provenance does not match (p, q)")
    p, q = link.provenance
    crossings = axis_intersections(link)

    by_index = {}
    for rec in crossings:
        indices = rec.z_indices if wedge == Z_WEDGE else rec.w_indices
        for idx in indices:
            by_index[idx] = rec

    levels: List[RationalAngle] = []
    rotations: List[RationalAngle] = []
    carriers: List[int] = []
    orbits: List[OrbitLabel] = []
    pinv = pow(p, -1, q)
    for level in (0, 1, 2):
        rec = by_index[level % (2 * q)]
        comp = link.components[rec.component]
        a_tag, b_tag = comp.axis_tag
        if wedge == Z_WEDGE:
            rotation = RationalAngle(level * p, q)
            certified = rotation.same_line(b_tag)
        else:
            rotation = RationalAngle((pinv * level) % q, q)
            certified = rotation.same_line(a_tag)
        if not certified:
            raise CertificateError(
                f"{wedge}-wedge arc at level {level}*pi/{q} does not match its rotation congruence")
        levels.append(RationalAngle(level, q))
        rotations.append(rotation)
        carriers.append(rec.component)
        orbits.append(link.orbit_labels[rec.component])
    return WedgeArcReport(
        wedge=wedge,
        arc_count=len(levels),
        arc_levels=tuple(levels),
        arc_rotations=tuple(rotations),
        carrier_components=tuple(carriers),
        carrier_orbits=tuple(orbits),
    )


@dataclass(frozen=True)
class CoveringCertificate:
    """Assembled evidence that the link complement covers the two-bridge complement.

    The chain is: sphere minus link, over the lens-space complement of
    the branch preimage (degree q, the free screw action), over the
    two-bridge complement (degree 2, the branched double cover relation,
    recorded structurally).  Total degree 2q.
    """

    source: Tuple[int, int]
    free_action: FreeActionWitness
    invariance_permutation: Tuple[int, ...]
    orbit_structure: str
    axis_pairing_verified: bool
    wedge_reports: Tuple[WedgeArcReport, WedgeArcReport]
    intermediate_quotient: LensSpaceData
    total_degree: int
    branched_step_degree: int = 2


def covering_certificate(p: int, q: int) -> CoveringCertificate:
    """Run all covering sub-checks for a coprime fraction and assemble the certificate.

    Raises :class:`CertificateError` naming the first failing sub-check;
    invalid fractions (q = 0 trivial link, q = 1, shared factors) raise
    :class:`InvalidInputError`.
    """
    if q == 0:
        raise InvalidInputError(
            "p/q = 1/0 is the trivial two component link and is excluded")
    if q == 1:
        raise InvalidInputError("q = 1 gives the unknot; no covering is built")
    if math.gcd(p, q) != 1:
        raise InvalidInputError(f"p and q must be coprime, got p={p}, q={q}")
    p = p % q

    witness = verify_free_action(p, q)
    if not witness.free:
        raise CertificateError(f"free action check failed: {witness.fixed_circle}")

    link = construct_dpq(p, q)
    perm = verify_invariance(link, phi_isometry(p, q))
    cycles = permutation_cycles(perm)
    if q % 2 == 1:
        if len(cycles) != 1 or len(cycles[0]) != q:
            raise CertificateError("orbit structure check failed: expected one q-cycle")
        structure = f"one {q}-cycle"
    else:
        if len(cycles) != 2 or any(len(c) != q // 2 for c in cycles):
            raise CertificateError("orbit structure check failed: expected two (q/2)-cycles")
        for cyc in cycles:
            kinds = {link.orbit_labels[i].kind for i in cyc}
            if len(kinds) != 1:
                raise CertificateError("orbit structure check failed: cycles mix orbits")
        structure = f"two {q // 2}-cycles"

    pairing = True
    for rec in axis_intersections(link):
        k, l = rec.z_indices[0], rec.w_indices[0]
        if (l - p * k) % (2 * q) != 0:
            pairing = False
            break
    if not pairing:
        raise CertificateError("axis pairing congruence l = p*k (mod 2q) failed")

    reports = (wedge_arc_report(p, q, Z_WEDGE, link), wedge_arc_report(p, q, W_WEDGE, link))
    for rep in reports:
        if rep.arc_count != 3:
            raise CertificateError(f"{rep.wedge}-wedge arc count is {rep.arc_count}, expected 3")

    return CoveringCertificate(
        source=(p, q),
        free_action=witness,
        invariance_permutation=perm,
        orbit_structure=structure,
        axis_pairing_verified=True,
        wedge_reports=reports,
        intermediate_quotient=LensSpaceData(q=q, p=p),
        total_degree=2 * q,
    )
