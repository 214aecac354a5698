"""Planar projection of great circle links and SVG rendering.

The scene is produced by stereographic projection from a pole sitting on
the z-axis circle (so that circle leaves the page nearly perpendicularly)
with the page spanned by the w-plane directions: the w-axis circle lands
on the unit circle of the page at depth almost zero and is drawn dotted.
Link components become closed curves in the page with a depth
coordinate; crossings are located by segment intersection, refined by
Newton iteration on the exact curves, and classified over/under by
depth.  The handedness of (page, depth) matches the linking convention
of :mod:`gclink.geom4`, so half the signed crossing count between two
components reproduces their linking number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ProjectionError, InvalidInputError
from .geom4 import GreatCircle
from .greatlink import GreatCircleLink

# Pole angle along the z-axis circle; the offset keeps it away from the
# axis points k*pi/q of the constructed links with small q.
DEFAULT_POLE_ANGLE = math.pi / 24 + 0.0007
MIN_POLE_CLEARANCE = 0.02
DEPTH_RESOLUTION = 1e-6
# The viewing direction is tilted off the projected z-axis line by this
# much.  Exactly down the axis every strand would pass through one
# 2q-fold multiple point at the page origin; the fixed small tilt
# resolves it into transverse double points while keeping the z-axis
# direction nearly out of the page.
VIEW_TILT = 0.021
VIEW_TILT_AZIMUTH = 0.6


@dataclass(frozen=True)
class Crossing:
    """One transverse double point of the page diagram."""

    over_component: int
    under_component: int
    position: Tuple[float, float]
    over_param: float   # curve parameter of the over strand
    under_param: float  # curve parameter of the under strand
    sign: int
    depth_gap: float


@dataclass(frozen=True)
class ProjectionScene:
    """Sampled page curves (x, y, depth) per component plus resolved crossings."""

    curves: Tuple[np.ndarray, ...]      # each (samples, 3)
    crossings: Tuple[Crossing, ...]
    w_axis: np.ndarray                  # dotted guide circle, (samples, 2)
    pole_angle: float
    samples: int

    def crossings_between(self, i: int, j: int) -> List[Crossing]:
        pair = {i, j}
        return [c for c in self.crossings if {c.over_component, c.under_component} == pair]


def _projector(pole_angle: float, latitude: float = 0.0):
    """Exact chart: parameter t on a circle -> (page x, page y, depth).

    Stereographic projection from a pole on the z-axis circle (or lifted
    off it by ``latitude`` when the link blocks every point of that
    circle), with handedness det[pole f1 f2 f3] = -1 (matching the
    linking sign convention), followed by a fixed small rotation of the
    viewing frame in R^3.
    """
    if latitude == 0.0:
        pole = np.array([math.cos(pole_angle), math.sin(pole_angle), 0.0, 0.0])
        f1 = np.array([0.0, 0.0, 1.0, 0.0])
        f2 = np.array([0.0, 0.0, 0.0, 1.0])
        f3 = np.array([math.sin(pole_angle), -math.cos(pole_angle), 0.0, 0.0])
    else:
        from .geom4 import stereographic_basis

        cl, sl = math.cos(latitude), math.sin(latitude)
        pole = np.array([cl * math.cos(pole_angle), cl * math.sin(pole_angle),
                         sl * math.cos(1.7 * pole_angle), sl * math.sin(1.7 * pole_angle)])
        f1, f2, f3 = stereographic_basis(pole)
    # depth direction: nearly the image of the z-axis circle
    d3 = np.array([VIEW_TILT * math.cos(VIEW_TILT_AZIMUTH),
                   VIEW_TILT * math.sin(VIEW_TILT_AZIMUTH), 1.0])
    d3 /= np.linalg.norm(d3)
    d1 = np.array([1.0, 0.0, 0.0]) - d3[0] * d3
    d1 /= np.linalg.norm(d1)
    d2 = np.cross(d3, d1)
    view = np.array([d1, d2, d3])  # rotation of R^3, det +1
    basis = view @ np.array([f1, f2, f3])

    def chart(c: GreatCircle, t):
        g = c.point(t)
        denom = 1.0 - g @ pole
        return (g @ basis.T) / np.expand_dims(denom, -1) if np.ndim(denom) else (g @ basis.T) / denom

    def velocity(c: GreatCircle, t: float) -> np.ndarray:
        g = c.point(t)
        dg = c.tangent(t)
        denom = 1.0 - float(g @ pole)
        return ((dg @ basis.T) * denom + (g @ basis.T) * float(dg @ pole)) / denom ** 2

    return pole, chart, velocity


def _pole_clearance(link: GreatCircleLink, pole: np.ndarray) -> float:
    worst = math.pi
    for c in link.components:
        h = math.hypot(float(pole @ c.u), float(pole @ c.v))
        worst = min(worst, math.acos(min(1.0, h)))
    return worst


def _segment_crossings(pi_xy: np.ndarray, pj_xy: np.ndarray):
    """All transverse intersections between two closed polylines.

    Returns arrays of (segment index + fraction) parameters on each
    polyline.  Half-open segment parameters avoid double counting when a
    crossing falls on a sample point.
    """
    a0 = pi_xy
    a1 = np.roll(pi_xy, -1, axis=0)
    b0 = pj_xy
    b1 = np.roll(pj_xy, -1, axis=0)
    da = a1 - a0
    db = b1 - b0
    denom = da[:, None, 0] * db[None, :, 1] - da[:, None, 1] * db[None, :, 0]
    r0 = b0[None, :, 0] - a0[:, None, 0]
    r1 = b0[None, :, 1] - a0[:, None, 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (r0 * db[None, :, 1] - r1 * db[None, :, 0]) / denom
        t = (r0 * da[:, None, 1] - r1 * da[:, None, 0]) / denom
    hit = (np.abs(denom) > 1e-15) & (s >= 0.0) & (s < 1.0) & (t >= 0.0) & (t < 1.0)
    ii, jj = np.nonzero(hit)
    return ii + s[ii, jj], jj + t[ii, jj]


def _refine_crossing(chart, velocity, ci: GreatCircle, cj: GreatCircle,
                     ti: float, tj: float) -> Tuple[float, float, float]:
    """Newton iteration on the exact curves to pin the page intersection.

    Returns the refined parameters and the remaining page residual.
    """
    res = math.inf
    for _ in range(25):
        pi = chart(ci, ti)
        pj = chart(cj, tj)
        f = pi[:2] - pj[:2]
        res = float(np.hypot(f[0], f[1]))
        if res < 1e-12:
            break
        vi = velocity(ci, ti)[:2]
        vj = velocity(cj, tj)[:2]
        jac = np.column_stack([vi, -vj])
        try:
            step = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            break
        ti -= float(step[0])
        tj -= float(step[1])
    return ti, tj, res


def render_projection(link: GreatCircleLink, samples: int = 400,
                      pole_angle: Optional[float] = None) -> ProjectionScene:
    """Project a link to the page and resolve all crossings.

    The pole is deterministic; when it sits too close to a component it
    is nudged by a fixed offset until clear.  Crossings whose strands
    cannot be separated in depth raise :class:`ProjectionError`.
    """
    if samples < 100:
        raise InvalidInputError("samples must be at least 100 per component")
    angle = DEFAULT_POLE_ANGLE if pole_angle is None else pole_angle
    latitude = 0.0
    for attempt in range(192):
        pole, chart, velocity = _projector(angle, latitude)
        if _pole_clearance(link, pole) >= MIN_POLE_CLEARANCE:
            break
        angle += 0.013717
        if attempt % 64 == 63:  # the whole z-axis circle is blocked; lift off it
            latitude += 0.29
    else:
        raise ProjectionError("could not place the projection pole away from the link")

    ts = 2.0 * np.pi * (np.arange(samples) + 0.5) / samples
    curves = []
    for c in link.components:
        pts = chart(c, ts)
        area = 0.5 * abs(float(np.sum(
            pts[:, 0] * np.roll(pts[:, 1], -1) - np.roll(pts[:, 0], -1) * pts[:, 1])))
        if area < 1e-6:
            raise ProjectionError(
                "a component projects edge-on for this pole; choose another pole angle")
        curves.append(pts)

    crossings: List[Crossing] = []
    n = len(curves)
    step = 2.0 * np.pi / samples
    two_pi = 2.0 * math.pi
    for i in range(n):
        for j in range(i + 1, n):
            si, sj = _segment_crossings(curves[i][:, :2], curves[j][:, :2])
            found: List[Tuple[float, float]] = []
            for fi, fj in zip(si, sj):
                ti0 = (fi + 0.5) * step
                tj0 = (fj + 0.5) * step
                ti, tj, res = _refine_crossing(chart, velocity, link.components[i],
                                               link.components[j], ti0, tj0)
                if res > 1e-9:
                    continue  # chord artifact, no true crossing nearby
                drift = max(abs(ti - ti0), abs(tj - tj0))
                if drift > 4.0 * step:
                    continue  # Newton escaped to a different crossing; it has its own seed
                key = (ti % two_pi, tj % two_pi)
                if any(abs(key[0] - a) < 1e-6 and abs(key[1] - b) < 1e-6 for a, b in found):
                    continue
                found.append(key)
                pi = chart(link.components[i], ti)
                pj = chart(link.components[j], tj)
                gap = float(pi[2] - pj[2])
                if abs(gap) < DEPTH_RESOLUTION:
                    raise ProjectionError(
                        f"unresolved crossing between components {i} and {j} (depth gap {gap:.2e})")
                if gap > 0:
                    over, under = i, j
                    t_over, t_under = float(ti), float(tj)
                    v_over = velocity(link.components[i], ti)[:2]
                    v_under = velocity(link.components[j], tj)[:2]
                    pos = pi
                else:
                    over, under = j, i
                    t_over, t_under = float(tj), float(ti)
                    v_over = velocity(link.components[j], tj)[:2]
                    v_under = velocity(link.components[i], ti)[:2]
                    pos = pj
                cross2 = float(v_over[0] * v_under[1] - v_over[1] * v_under[0])
                crossings.append(Crossing(
                    over_component=over, under_component=under,
                    position=(float(pos[0]), float(pos[1])),
                    over_param=t_over % two_pi,
                    under_param=t_under % two_pi,
                    sign=1 if cross2 > 0 else -1,
                    depth_gap=abs(gap)))
    crossings.sort(key=lambda c: (c.over_component, c.under_component,
                                  round(c.over_param, 9)))

    w_axis_circle = GreatCircle([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0])
    axis_t = np.linspace(0.0, 2.0 * np.pi, 257)
    w_axis = chart(w_axis_circle, axis_t)[:, :2]
    return ProjectionScene(
        curves=tuple(curves), crossings=tuple(crossings),
        w_axis=w_axis, pole_angle=angle, samples=samples)


def scene_linking_sums(scene: ProjectionScene, n_components: int) -> np.ndarray:
    """Half the signed crossing count per component pair (diagram linking numbers)."""
    out = np.zeros((n_components, n_components), dtype=float)
    for c in scene.crossings:
        i, j = c.over_component, c.under_component
        out[i, j] += c.sign
        out[j, i] += c.sign
    return out / 2.0


# ---------------------------------------------------------------------------
# SVG emission
# ---------------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def _visible_runs(samples: int, cuts: Sequence[Tuple[float, float]]):
    """Complement of the cut windows on the circular sample-index line [0, samples)."""
    if not cuts:
        return None
    events = []
    for lo, hi in cuts:
        lo %= samples
        hi %= samples
        if lo <= hi:
            events.append((lo, hi))
        else:
            events.append((lo, samples))
            events.append((0, hi))
    events.sort()
    merged = [list(events[0])]
    for lo, hi in events[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    runs = []
    for idx in range(len(merged)):
        start = merged[idx][1]
        end = merged[(idx + 1) % len(merged)][0] + (samples if idx + 1 == len(merged) else 0)
        if end > start:
            runs.append((start, end))
    return runs


def scene_to_svg(scene: ProjectionScene, width: int = 640, stroke: float = 0.035,
                 gap: float = 0.09) -> str:
    """Deterministic SVG 1.1 text for a projection scene.

    Each link component becomes one path element; under-strands are
    interrupted by a gap of page radius ``gap`` around each crossing.
    The w-axis guide circle is drawn dotted.
    """
    pts_all = np.vstack([c[:, :2] for c in scene.curves] + [scene.w_axis])
    lo = pts_all.min(axis=0) - 0.3
    hi = pts_all.max(axis=0) + 0.3
    span = float(max(hi - lo))
    scale = width / span

    def sx(x: float) -> str:
        return f"{(x - lo[0]) * scale:.2f}"

    def sy(y: float) -> str:
        return f"{(hi[1] - y) * scale:.2f}"

    height = int(round((hi[1] - lo[1]) * scale))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    axis_d = "M " + " L ".join(f"{sx(x)} {sy(y)}" for x, y in scene.w_axis)
    out.append(f'<path d="{axis_d}" fill="none" stroke="#888888" '
               f'stroke-width="{stroke * scale * 0.6:.2f}" stroke-dasharray="6 6" '
               'class="w-axis"/>')

    n = len(scene.curves)
    samples = scene.samples
    step = 2.0 * math.pi / samples
    for i, curve in enumerate(scene.curves):
        cuts = []
        for c in scene.crossings:
            if c.under_component != i:
                continue
            idx = (c.under_param / step) - 0.5  # sample-index position of the crossing
            k = int(math.floor(idx)) % samples
            seg_len = float(np.hypot(*(curve[(k + 1) % samples, :2] - curve[k, :2])))
            half = gap / max(seg_len, 1e-9)
            cuts.append((idx - half, idx + half))
        color = _PALETTE[i % len(_PALETTE)]
        runs = _visible_runs(samples, cuts)
        sw = f"{stroke * scale:.2f}"
        if runs is None:
            d = "M " + " L ".join(
                f"{sx(x)} {sy(y)}" for x, y in curve[:, :2]) + " Z"
            out.append(f'<path d="{d}" fill="none" stroke="{color}" '
                       f'stroke-width="{sw}" class="component" data-index="{i}"/>')
        else:
            parts = []
            for start, end in runs:
                first = int(math.ceil(start))
                last = int(math.floor(end))
                pts = [_curve_point(curve, samples, start)]
                pts += [curve[k % samples, :2] for k in range(first, last + 1)]
                pts.append(_curve_point(curve, samples, end))
                parts.append("M " + " L ".join(f"{sx(x)} {sy(y)}" for x, y in pts))
            out.append(f'<path d="{" ".join(parts)}" fill="none" stroke="{color}" '
                       f'stroke-width="{sw}" stroke-linecap="round" '
                       f'class="component" data-index="{i}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _curve_point(curve: np.ndarray, samples: int, idx: float) -> np.ndarray:
    k = int(math.floor(idx)) % samples
    frac = idx - math.floor(idx)
    return curve[k, :2] * (1.0 - frac) + curve[(k + 1) % samples, :2] * frac
