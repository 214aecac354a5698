"""Self-contained certificate documents and their independent recheck.

A certificate document carries everything needed to re-verify the
claimed geometry without rebuilding it: component frames (as decimal
strings round-tripping exactly), exact axis tags, the covering
evidence, all fibration certificates, the linking matrix, the axis
pairing table and the classification verdict.  ``recheck_document``
replays every numeric assertion from the serialized frames alone.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from .angles import RationalAngle
from .errors import InvalidInputError
from .geom4 import GreatCircle, move_to_standard
from .greatlink import GreatCircleLink, construct_dpq, disjointness_report, linking_matrix
from .covering import CoveringCertificate, covering_certificate
from .fibration import FibrationCertificate, all_fibrations
from .twobridge import (
    EvenContinuedFraction,
    TwoBridgeFraction,
    VerdictStatus,
    VirtualFibrationVerdict,
    equivalence_class,
    verdict as twobridge_verdict,
)

SCHEMA = "gclink.certificate/1"


def fmt(x: float) -> str:
    """Decimal string with 17 significant digits; round-trips float64 exactly."""
    return format(float(x), ".17g")


def _frame_json(c: GreatCircle) -> Dict[str, Any]:
    entry: Dict[str, Any] = {
        "u": [fmt(x) for x in c.u],
        "v": [fmt(x) for x in c.v],
    }
    if c.axis_tag is not None:
        a, b = c.axis_tag
        entry["axis_tag"] = {"z": a.json_pair(), "w": b.json_pair()}
    return entry


def _link_json(link: GreatCircleLink) -> Dict[str, Any]:
    comps = []
    for i, c in enumerate(link.components):
        entry = {"index": i}
        if link.orbit_labels is not None:
            entry["orbit"] = link.orbit_labels[i].kind
            entry["orbit_index"] = link.orbit_labels[i].index
        entry.update(_frame_json(c))
        comps.append(entry)
    out: Dict[str, Any] = {"component_count": len(link.components)}
    if link.provenance is not None:
        out["provenance"] = {"p": link.provenance[0], "q": link.provenance[1]}
    out["components"] = comps
    return out


def _covering_json(cert: CoveringCertificate) -> Dict[str, Any]:
    witness = cert.free_action
    return {
        "source": {"p": cert.source[0], "q": cert.source[1]},
        "free_action": {
            "free": witness.free,
            "table": [[k, bool(z), bool(w)] for k, z, w in witness.table],
            "fixed_circle": witness.fixed_circle,
        },
        "invariance_permutation": list(cert.invariance_permutation),
        "orbit_structure": cert.orbit_structure,
        "axis_pairing_verified": cert.axis_pairing_verified,
        "wedges": [
            {
                "wedge": rep.wedge,
                "arc_count": rep.arc_count,
                "levels": [a.json_pair() for a in rep.arc_levels],
                "rotations": [a.json_pair() for a in rep.arc_rotations],
                "carriers": list(rep.carrier_components),
                "carrier_orbits": [lab.kind for lab in rep.carrier_orbits],
            }
            for rep in cert.wedge_reports
        ],
        "intermediate_quotient": {
            "name": cert.intermediate_quotient.name(),
            "q": cert.intermediate_quotient.q,
            "p": cert.intermediate_quotient.p,
        },
        "branched_step_degree": cert.branched_step_degree,
        "total_degree": cert.total_degree,
    }


def _fibration_json(cert: FibrationCertificate) -> Dict[str, Any]:
    return {
        "base_index": cert.base_index,
        "records": [
            {
                "component": r.component,
                "winding_rate": fmt(r.winding_rate),
                "winding_sign": r.winding_sign,
                "clearance": fmt(r.clearance),
            }
            for r in cert.records
        ],
        "fiber_punctures": cert.fiber_punctures,
        "fiber_euler_characteristic": cert.fiber_euler_characteristic,
    }


def _verdict_json(v: VirtualFibrationVerdict) -> Dict[str, Any]:
    out: Dict[str, Any] = {"subject": v.subject, "status": v.status.value}
    if v.expansion is not None:
        val = v.expansion.value()
        out["expansion"] = {
            "signs": list(v.expansion.signs),
            "target": f"{v.expansion.target.numerator}/{v.expansion.target.denominator}"
            if v.expansion.target is not None else f"{val.numerator}/{val.denominator}",
            "display": str(v.expansion),
        }
    if v.cover_name is not None:
        out["cover"] = v.cover_name
    if v.cover_degree is not None:
        out["cover_degree"] = v.cover_degree
    if v.reason is not None:
        out["reason"] = v.reason
    if v.search_depth is not None:
        out["search_depth"] = v.search_depth
    return out


def build_certificate_document(p: int, q: int, max_depth: Optional[int] = None,
                               tolerance: float = 1e-9) -> Dict[str, Any]:
    """Run the full pipeline for a coprime fraction and assemble the document."""
    timings: Dict[str, str] = {}
    t_total = time.perf_counter()

    t0 = time.perf_counter()
    fraction = TwoBridgeFraction(p, q)
    link = construct_dpq(fraction.p, fraction.q)
    timings["construct"] = fmt(time.perf_counter() - t0)

    t0 = time.perf_counter()
    covering = covering_certificate(fraction.p, fraction.q)
    timings["covering"] = fmt(time.perf_counter() - t0)

    t0 = time.perf_counter()
    fibrations = all_fibrations(link)
    timings["fibrations"] = fmt(time.perf_counter() - t0)

    t0 = time.perf_counter()
    lk = linking_matrix(link)
    min_dist, min_pair = disjointness_report(link)
    timings["linking"] = fmt(time.perf_counter() - t0)

    t0 = time.perf_counter()
    v = twobridge_verdict(fraction, max_depth=max_depth, include_certificate=False)
    timings["verdict"] = fmt(time.perf_counter() - t0)

    pairing = []
    for i, c in enumerate(link.components):
        a, b = c.axis_tag
        pairing.append({
            "component": i,
            "z_index": a.index_in_units_of(fraction.q),
            "w_index": b.index_in_units_of(fraction.q),
        })

    doc: Dict[str, Any] = {
        "schema": SCHEMA,
        "tool": {"name": "gclink", "version": _package_version()},
        "tolerance": fmt(tolerance),
        "input": {"fraction": str(fraction), "p": fraction.p, "q": fraction.q},
        "link": _link_json(link),
        "axis_pairing": {
            "modulus": 2 * fraction.q,
            "entries": pairing,
            "congruence": "w_index = p * z_index (mod 2q)",
        },
        "linking_matrix": [[int(x) for x in row] for row in lk],
        "min_pairwise_distance": {"value": fmt(min_dist), "pair": list(min_pair)},
        "covering": _covering_json(covering),
        "fibrations": [_fibration_json(f) for f in fibrations],
        "verdict": _verdict_json(v),
    }
    timings["total"] = fmt(time.perf_counter() - t_total)
    doc["timings"] = timings
    return doc


def _package_version() -> str:
    from . import __version__

    return __version__


def document_to_json(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Independent recheck
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


class _Recheck:
    def __init__(self, doc: Dict[str, Any], tolerance: Optional[float]):
        self.doc = doc
        self.tol = float(doc.get("tolerance", "1e-9")) if tolerance is None else tolerance
        self.results: List[CheckResult] = []

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.results.append(CheckResult(name, bool(ok), detail))
        return bool(ok)

    # -- pieces ------------------------------------------------------------

    def load_link(self) -> Optional[List[GreatCircle]]:
        comps = []
        try:
            for entry in self.doc["link"]["components"]:
                u = np.array([float(x) for x in entry["u"]])
                v = np.array([float(x) for x in entry["v"]])
                tag = None
                if "axis_tag" in entry:
                    tag = (RationalAngle(*entry["axis_tag"]["z"]),
                           RationalAngle(*entry["axis_tag"]["w"]))
                comps.append(GreatCircle(u, v, tag))
        except (KeyError, ValueError, InvalidInputError) as exc:
            self.add("frames-parse", False, str(exc))
            return None
        self.add("frames-parse", True, f"{len(comps)} frames loaded")
        return comps

    def run(self) -> List[CheckResult]:
        doc = self.doc
        self.add("schema", doc.get("schema") == SCHEMA, str(doc.get("schema")))
        p = int(doc["input"]["p"])
        q = int(doc["input"]["q"])
        self.add("input-coprime", q >= 2 and math.gcd(p, q) == 1 and 0 < p < q, f"{p}/{q}")

        comps = self.load_link()
        if comps is None:
            return self.results
        n = len(comps)
        self.add("component-count", n == q, f"{n} components for q={q}")
        prov = self.doc["link"].get("provenance")
        self.add("link-provenance", prov == {"p": p, "q": q}, str(prov))

        # frame orthonormality already enforced at GreatCircle construction;
        # re-measure residuals explicitly against the document tolerance
        worst = 0.0
        for c in comps:
            worst = max(worst,
                        abs(float(c.u @ c.u) - 1.0),
                        abs(float(c.v @ c.v) - 1.0),
                        abs(float(c.u @ c.v)))
        self.add("frames-orthonormal", worst <= self.tol, f"max residual {worst:.3e}")

        # axis tags versus frames
        tag_res = 0.0
        for c in comps:
            a, b = c.axis_tag
            tag_res = max(tag_res, float(np.max(np.abs(
                c.u - np.array([a.cos(), a.sin(), 0.0, 0.0])))))
            tag_res = max(tag_res, float(np.max(np.abs(
                c.v - np.array([0.0, 0.0, b.cos(), b.sin()])))))
        self.add("tags-match-frames", tag_res <= max(self.tol, 1e-12),
                 f"max residual {tag_res:.3e}")

        # axis pairing table
        ok = True
        z_seen, w_seen = set(), set()
        entries = doc["axis_pairing"]["entries"]
        for entry, c in zip(entries, comps):
            a, b = c.axis_tag
            k = a.index_in_units_of(q)
            l = b.index_in_units_of(q)
            ok &= entry["z_index"] == k and entry["w_index"] == l
            ok &= (l - p * k) % (2 * q) == 0
            z_seen.update({k, (k + q) % (2 * q)})
            w_seen.update({l, (l + q) % (2 * q)})
        ok &= z_seen == set(range(2 * q)) and w_seen == set(range(2 * q))
        self.add("axis-pairing", ok and len(entries) == n,
                 "l = p*k (mod 2q) and full axis coverage")

        # pairwise geometry from frames
        lk_doc = np.array(doc["linking_matrix"], dtype=int)
        ok_lk = lk_doc.shape == (n, n) and np.array_equal(lk_doc, lk_doc.T)
        min_dist = math.inf
        ok_disjoint = True
        for i in range(n):
            for j in range(i + 1, n):
                g = np.array([[comps[i].u @ comps[j].u, comps[i].u @ comps[j].v],
                              [comps[i].v @ comps[j].u, comps[i].v @ comps[j].v]])
                s = np.clip(np.linalg.svd(g, compute_uv=False), 0.0, 1.0)
                theta1 = float(np.arccos(s[0]))
                min_dist = min(min_dist, theta1)
                if theta1 <= self.tol:
                    ok_disjoint = False
                det = float(np.linalg.det(np.column_stack(
                    [comps[i].u, comps[i].v, comps[j].u, comps[j].v])))
                if int(np.sign(det)) != lk_doc[i, j] or abs(lk_doc[i, j]) != 1:
                    ok_lk = False
        self.add("pairwise-disjoint", ok_disjoint, f"min distance {min_dist:.6f}")
        self.add("linking-matrix", ok_lk, "determinant signs match, all unit magnitude")
        rep = float(doc["min_pairwise_distance"]["value"])
        self.add("min-distance-reported", abs(rep - min_dist) <= max(self.tol, 1e-12),
                 f"reported {rep:.6f} vs recomputed {min_dist:.6f}")

        self._check_covering(p, q, comps)
        self._check_fibrations(p, q, comps, lk_doc)
        self._check_verdict(p, q)
        return self.results

    def _check_covering(self, p: int, q: int, comps: List[GreatCircle]) -> None:
        cov = self.doc["covering"]
        ok = cov["source"] == {"p": p, "q": q}
        ok &= cov["total_degree"] == 2 * q and cov["branched_step_degree"] == 2
        ok &= cov["intermediate_quotient"]["q"] == q and cov["intermediate_quotient"]["p"] == p
        self.add("covering-degrees", ok, f"degree {cov['total_degree']} over L({q},{p})")

        table = cov["free_action"]["table"]
        ok = cov["free_action"]["free"] and len(table) == q - 1
        for k, z_moves, w_moves in table:
            ok &= z_moves == (k % q != 0) and w_moves == ((k * p) % q != 0)
            ok &= z_moves and w_moves
        self.add("covering-free-action", ok, "no proper power has a fixed point")

        # invariance permutation replayed on the exact tags
        perm = list(cov["invariance_permutation"])
        tags = {}
        for i, c in enumerate(comps):
            a, b = c.axis_tag
            tags[(a, b)] = i
        shift_a, shift_b = RationalAngle(2, q), RationalAngle(2 * p, q)
        ok = sorted(perm) == list(range(len(comps)))
        for i, c in enumerate(comps):
            a, b = c.axis_tag
            image = None
            for (a2, b2), j in tags.items():
                if (a + shift_a).same_line(a2) and (b + shift_b).same_line(b2):
                    image = j
                    break
            ok &= image is not None and perm[i] == image
        self.add("covering-invariance", ok, "tag rotation reproduces the permutation")

        cycles_expected = f"one {q}-cycle" if q % 2 else f"two {q // 2}-cycles"
        self.add("covering-orbit-structure", cov["orbit_structure"] == cycles_expected,
                 cov["orbit_structure"])

        ok = True
        pinv = pow(p, -1, q)
        for wedge in cov["wedges"]:
            ok &= wedge["arc_count"] == 3 and len(wedge["levels"]) == 3
            for slot, (level, rotation) in enumerate(zip(wedge["levels"], wedge["rotations"])):
                lvl = RationalAngle(*level)
                rot = RationalAngle(*rotation)
                ok &= lvl == RationalAngle(slot, q)
                if wedge["wedge"] == "Z":
                    ok &= rot == RationalAngle(slot * p, q)
                else:
                    ok &= rot == RationalAngle((pinv * slot) % q, q)
                carrier = comps[wedge["carriers"][slot]]
                a, b = carrier.axis_tag
                axis_tag = a if wedge["wedge"] == "Z" else b
                other_tag = b if wedge["wedge"] == "Z" else a
                ok &= axis_tag.same_line(lvl) and other_tag.same_line(rot)
        self.add("covering-wedges", ok, "three arcs per wedge at levels {0, pi/q, 2pi/q}")

    def _check_fibrations(self, p: int, q: int, comps: List[GreatCircle],
                          lk_doc: np.ndarray) -> None:
        fibs = self.doc["fibrations"]
        ok_counts = len(fibs) == len(comps)
        ok_values = True
        detail = ""
        for fib in fibs:
            base = int(fib["base_index"])
            transform = move_to_standard(comps[base])
            ok_counts &= fib["fiber_punctures"] == len(comps) - 1
            ok_counts &= fib["fiber_euler_characteristic"] == 1 - (len(comps) - 1)
            recorded = {int(r["component"]): r for r in fib["records"]}
            ok_counts &= sorted(recorded) == [i for i in range(len(comps)) if i != base]
            for i, c in enumerate(comps):
                if i == base:
                    continue
                au = transform.matrix @ c.u
                bv = transform.matrix @ c.v
                a = complex(au[2], au[3])
                b = complex(bv[2], bv[3])
                rate = (a.conjugate() * b).imag
                mean = (abs(a) ** 2 + abs(b) ** 2) / 2.0
                clearance = mean - math.hypot((abs(a) ** 2 - abs(b) ** 2) / 2.0,
                                              (a.conjugate() * b).real)
                rec = recorded[i]
                if abs(rate - float(rec["winding_rate"])) > self.tol:
                    ok_values = False
                    detail = f"rate mismatch at base {base} comp {i}"
                if abs(clearance - float(rec["clearance"])) > self.tol:
                    ok_values = False
                    detail = f"clearance mismatch at base {base} comp {i}"
                sign = 1 if rate > 0 else -1
                if sign != int(rec["winding_sign"]) or sign != lk_doc[base, i]:
                    ok_values = False
                    detail = f"sign mismatch at base {base} comp {i}"
                if not (rate != 0.0 and clearance > 0.0):
                    ok_values = False
                    detail = f"degenerate record at base {base} comp {i}"
        self.add("fibrations-complete", ok_counts,
                 f"{len(fibs)} certificates, fibers are (q-1)-punctured disks")
        self.add("fibrations-recomputed", ok_values, detail or "rates, signs and clearances match")

    def _check_verdict(self, p: int, q: int) -> None:
        v = self.doc["verdict"]
        status = v["status"]
        if status == VerdictStatus.FIBERED.value:
            signs = v["expansion"]["signs"]
            value = EvenContinuedFraction(tuple(signs)).value()
            tgt = v["expansion"]["target"].split("/")
            target = Fraction(int(tgt[0]), int(tgt[1]))
            members = equivalence_class(TwoBridgeFraction(p, q))
            ok = value == target and any(
                Fraction(m.p, m.q) == target for m in members)
            self.add("verdict-expansion", ok,
                     f"expansion evaluates to {value} in the Schubert class")
        elif status == VerdictStatus.VIRTUALLY_FIBERED.value:
            ok = v.get("cover_degree") == 2 * q and v.get("cover") == f"D_{{{p}/{q}}}"
            self.add("verdict-cover", ok, f"cover degree {v.get('cover_degree')}")
        else:
            self.add("verdict-status", False, f"unexpected status {status}")


def recheck_document(doc: Dict[str, Any], tolerance: Optional[float] = None) -> List[CheckResult]:
    """Re-verify every assertion of a certificate document from its own data."""
    return _Recheck(doc, tolerance).run()


def recheck_ok(results: List[CheckResult]) -> bool:
    return all(r.ok for r in results)
