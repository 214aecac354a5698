"""Command-line front end.

Exit code contract: 0 = certified / query answered, 1 = a check was
falsified (failed certification, failed recheck, unresolvable
projection), 2 = invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .errors import CertificateError, InvalidInputError, NotDisjointError, ProjectionError
from .certificate import (
    build_certificate_document,
    document_to_json,
    recheck_document,
    recheck_ok,
)
from .greatlink import construct_dpq
from .montesinos import MontesinosLink, classify
from .montesinos import verdict as montesinos_verdict
from .projection import render_projection, scene_to_svg
from .twobridge import TwoBridgeFraction, equivalence_class, schubert_equivalent
from .twobridge import verdict as twobridge_verdict

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_INVALID = 2


def _parse_fraction(text: str) -> TwoBridgeFraction:
    return TwoBridgeFraction.parse(text)


def _emit_verdict(v, json_path: Optional[str]) -> None:
    from .certificate import _verdict_json  # shared serialization

    print(f"{v.subject}: {v.status.value}")
    if v.expansion is not None:
        print(f"  expansion: {v.expansion} = {v.expansion.value()}")
    if v.cover_name is not None:
        print(f"  cover: {v.cover_name}" +
              (f" (degree {v.cover_degree})" if v.cover_degree else ""))
    if v.reason is not None:
        print(f"  reason: {v.reason}")
    if json_path:
        payload = _verdict_json(v)
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def cmd_certify(args: argparse.Namespace) -> int:
    fraction = _parse_fraction(args.fraction)
    if fraction.is_trivial_link:
        print("error: p/q = 1/0 is the trivial two component link and is excluded",
              file=sys.stderr)
        return EXIT_INVALID
    doc = build_certificate_document(fraction.p, fraction.q,
                                     max_depth=args.max_depth,
                                     tolerance=args.tolerance)
    text = document_to_json(doc)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
        q = fraction.q
        print(f"certified {fraction}: {q} components, covering degree {2 * q}, "
              f"verdict {doc['verdict']['status']}")
        print(f"wrote {args.json}")
    else:
        sys.stdout.write(text)
    results = recheck_document(doc)
    if not recheck_ok(results):
        for r in results:
            if not r.ok:
                print(f"falsified: {r.name}: {r.detail}", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_recheck(args: argparse.Namespace) -> int:
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_INVALID
    results = recheck_document(doc, tolerance=args.tolerance)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    if recheck_ok(results):
        print(f"all {len(results)} checks passed")
        return EXIT_OK
    print(f"{sum(not r.ok for r in results)} of {len(results)} checks failed",
          file=sys.stderr)
    return EXIT_FALSIFIED


def cmd_twobridge(args: argparse.Namespace) -> int:
    fraction = _parse_fraction(args.fraction)
    v = twobridge_verdict(fraction, max_depth=args.max_depth, include_certificate=False)
    _emit_verdict(v, args.json)
    return EXIT_OK


def cmd_montesinos(args: argparse.Namespace) -> int:
    link = MontesinosLink.parse(args.tangle, e0=args.e0)
    cls = classify(link)
    print(f"{link}: base {cls.base}, Euler number {cls.euler_number}, "
          f"{cls.geometry_verdict.value}")
    v = montesinos_verdict(link)
    _emit_verdict(v, args.json)
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace) -> int:
    f1 = _parse_fraction(args.fraction1)
    f2 = _parse_fraction(args.fraction2)
    if f1.is_trivial_link or f2.is_trivial_link:
        equivalent = schubert_equivalent(f1, f2)
        print("equivalent" if equivalent else "inequivalent")
        return EXIT_OK
    equivalent = schubert_equivalent(f1, f2)
    cls = ", ".join(str(f) for f in sorted(equivalence_class(f1)))
    print("equivalent" if equivalent else "inequivalent")
    print(f"  class of {f1}: {{{cls}}}")
    if not equivalent:
        cls2 = ", ".join(str(f) for f in sorted(equivalence_class(f2)))
        print(f"  class of {f2}: {{{cls2}}}")
    return EXIT_OK


def cmd_project(args: argparse.Namespace) -> int:
    fraction = _parse_fraction(args.fraction)
    if fraction.is_trivial_link:
        print("error: p/q = 1/0 is the trivial two component link and is excluded",
              file=sys.stderr)
        return EXIT_INVALID
    link = construct_dpq(fraction.p, fraction.q)
    scene = render_projection(link, samples=args.samples)
    svg = scene_to_svg(scene)
    out = args.svg or f"d{fraction.p}_{fraction.q}.svg"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {out}: {len(scene.curves)} components, {len(scene.crossings)} crossings")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gclink",
        description="Great circle links covering two-bridge knot and link complements: "
                    "certificates, classification and projection.")
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="build and verify the full certificate for p/q")
    cert.add_argument("fraction", help="two-bridge fraction, e.g. 2/5")
    cert.add_argument("--json", metavar="PATH", help="write the certificate document here")
    cert.add_argument("--max-depth", type=int, default=None,
                      help="search depth cap for the fiberedness expansion (default 2q)")
    cert.add_argument("--tolerance", type=float, default=1e-9,
                      help="numeric tolerance for the verification gates (default 1e-9)")
    cert.set_defaults(func=cmd_certify)

    rec = sub.add_parser("recheck", help="independently re-verify a certificate document")
    rec.add_argument("path", help="certificate JSON written by 'certify'")
    rec.add_argument("--tolerance", type=float, default=None,
                     help="override the tolerance recorded in the document")
    rec.set_defaults(func=cmd_recheck)

    tb = sub.add_parser("twobridge", help="classify a two-bridge fraction")
    tb.add_argument("fraction")
    tb.add_argument("--json", metavar="PATH")
    tb.add_argument("--max-depth", type=int, default=None)
    tb.set_defaults(func=cmd_twobridge)

    mo = sub.add_parser("montesinos", help="classify Montesinos data")
    mo.add_argument("-t", "--tangle", action="append", required=True,
                    metavar="B/A", help="rational tangle beta/alpha (repeatable)")
    mo.add_argument("-e", "--e0", type=int, default=0, help="integral twist (default 0)")
    mo.add_argument("--json", metavar="PATH")
    mo.set_defaults(func=cmd_montesinos)

    eq = sub.add_parser("equiv", help="test Schubert equivalence of two fractions")
    eq.add_argument("fraction1")
    eq.add_argument("fraction2")
    eq.set_defaults(func=cmd_equiv)

    proj = sub.add_parser("project", help="render the planar projection as SVG")
    proj.add_argument("fraction")
    proj.add_argument("--svg", metavar="PATH", help="output file (default d<p>_<q>.svg)")
    proj.add_argument("--samples", type=int, default=400,
                      help="samples per component (default 400, minimum 100)")
    proj.set_defaults(func=cmd_project)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    threads = os.environ.get("GCLINK_THREADS")
    if threads:
        try:
            import numba

            numba.set_num_threads(max(1, int(threads)))
        except (ImportError, ValueError):
            pass
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CertificateError, NotDisjointError, ProjectionError) as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
