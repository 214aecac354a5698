"""Fibration certificates for great circle link complements.

Move a chosen base component to the standard first-plane circle.  Any
other component then has a transformed frame (A, B); writing its last
two coordinates as complex numbers a, b, the w-coordinate along the
circle is w(t) = a cos t + b sin t, an origin-centered ellipse in C.
The angular speed of arg w(t) is Im(conj(w) w') / |w|^2 and its
numerator Im(conj(a) b) is constant in t, so a single determinant
certifies that the component crosses every half-plane page of the open
book around the base exactly once.  The minimum of |w(t)|^2 has a
closed form from the 2x2 quadratic form, giving the clearance from the
base's polar circle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import CertificateError, InvalidInputError, NotDisjointError
from . import geom4
from .geom4 import GreatCircle, Isometry
from .greatlink import GreatCircleLink

RATE_TOL = 1e-9


@dataclass(frozen=True)
class WindingRecord:
    """Winding data of one non-base component around the base circle."""

    component: int
    winding_rate: float
    winding_sign: int
    clearance: float


@dataclass(frozen=True)
class FibrationCertificate:
    """Evidence that the complement fibers over the circle with disk-with-punctures fibers."""

    base_index: int
    records: Tuple[WindingRecord, ...]
    fiber_punctures: int
    fiber_euler_characteristic: int
    transform: Isometry  # moves the base to standard position; kept for page queries

    def record_for(self, component: int) -> WindingRecord:
        for r in self.records:
            if r.component == component:
                return r
        raise KeyError(component)


def _standardized_w_frame(transform: Isometry, c: GreatCircle) -> Tuple[complex, complex]:
    a_vec = transform.matrix @ c.u
    b_vec = transform.matrix @ c.v
    return complex(a_vec[2], a_vec[3]), complex(b_vec[2], b_vec[3])


def fibration_certificate(link: GreatCircleLink, base_index: int) -> FibrationCertificate:
    """Certify the open book around one component.

    Issues a certificate only when every other component has nonzero
    winding rate and positive clearance; for genuine great circle links
    both always hold.
    """
    comps = link.components
    if not 0 <= base_index < len(comps):
        raise InvalidInputError(f"base index {base_index} out of range")
    base = comps[base_index]
    for i, c in enumerate(comps):
        if i != base_index and (geom4.circles_intersect(base, c) or geom4.circles_equal(base, c)):
            raise NotDisjointError(f"link degenerate: base meets component {i}")
    transform = geom4.move_to_standard(base)
    records: List[WindingRecord] = []
    for i, c in enumerate(comps):
        if i == base_index:
            continue
        a, b = _standardized_w_frame(transform, c)
        rate = (a.conjugate() * b).imag
        mean = (abs(a) ** 2 + abs(b) ** 2) / 2.0
        cross = (a.conjugate() * b).real
        half_diff = (abs(a) ** 2 - abs(b) ** 2) / 2.0
        clearance = mean - math.hypot(half_diff, cross)
        if abs(rate) < RATE_TOL:
            raise CertificateError(
                f"certificate failed: component {i} has winding rate {rate:.3e}")
        if clearance <= 0.0:
            raise CertificateError(
                f"certificate failed: component {i} has nonpositive clearance")
        records.append(WindingRecord(i, rate, 1 if rate > 0 else -1, clearance))
    punctures = len(comps) - 1
    return FibrationCertificate(
        base_index=base_index,
        records=tuple(records),
        fiber_punctures=punctures,
        fiber_euler_characteristic=1 - punctures,
        transform=transform,
    )


def fiber_points(link: GreatCircleLink, base_index: int, theta: float,
                 check_samples: int = 0) -> List[np.ndarray]:
    """The intersection of link-minus-base with the half-plane page at angle theta.

    Points are returned in the standardized coordinates in which the base
    is the first-plane circle, so each point has the form
    (x, y, r cos theta, r sin theta) with r > 0.  The crossing parameter
    of each component is solved in closed form; ``check_samples`` > 0
    additionally verifies uniqueness of the crossing by sampling.
    """
    cert = fibration_certificate(link, base_index)
    out: List[np.ndarray] = []
    for rec in cert.records:
        c = link.components[rec.component]
        a, b = _standardized_w_frame(cert.transform, c)
        rot = cmath.exp(-1j * theta)
        alpha = (rot * a).imag
        beta = (rot * b).imag
        t = math.atan2(-alpha, beta)
        if (rot * (a * math.cos(t) + b * math.sin(t))).real < 0.0:
            t += math.pi
        w = rot * (a * math.cos(t) + b * math.sin(t))
        if abs(w.imag) > 1e-9 or w.real <= 0.0:
            raise CertificateError("closed-form page crossing failed to verify")
        if check_samples:
            ts = 2.0 * np.pi * np.arange(check_samples) / check_samples
            vals = (rot * a) * np.cos(ts) + (rot * b) * np.sin(ts)
            on_ray = (np.diff(np.signbit(vals.imag).astype(int), append=int(
                np.signbit(vals.imag[0]))) != 0) & (vals.real > 0)
            if int(on_ray.sum()) != 1:
                raise CertificateError("sampled page crossing count is not one")
        u_std = cert.transform.matrix @ c.u
        v_std = cert.transform.matrix @ c.v
        out.append(u_std * math.cos(t) + v_std * math.sin(t))
    return out


def all_fibrations(link: GreatCircleLink) -> List[FibrationCertificate]:
    """One certificate per component; a p-component link fibers in p ways."""
    return [fibration_certificate(link, i) for i in range(len(link.components))]


def sampled_winding(link: GreatCircleLink, base_index: int, component: int,
                    samples: int = 1000) -> Tuple[np.ndarray, float]:
    """Sampled angular progress of one component around the base.

    Returns the unwrapped sequence of arg w(t) at ``samples`` points and
    the total signed winding over one full turn; used as a redundant
    numerical cross-check of the closed-form certificate.
    """
    cert = fibration_certificate(link, base_index)
    c = link.components[component]
    a, b = _standardized_w_frame(cert.transform, c)
    ts = 2.0 * np.pi * np.arange(samples + 1) / samples
    w = a * np.cos(ts) + b * np.sin(ts)
    ang = np.unwrap(np.angle(w))
    return ang, float(ang[-1] - ang[0])
