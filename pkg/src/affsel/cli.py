"""Command-line front end.

One JSON document goes to stdout per invocation; diagnostics go to stderr.
Exit codes: 0 computed, 1 input error, 2 domain / not-interior error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import serialize as ser
from .errors import AffselError, DomainError, InputError
from .examples import default_hahn_banach_spec, hahn_banach, olsen, random_convex_graph
from .lp import verify_certificate
from .multifunction import (
    GraphMultifunction,
    audit_convexity,
    audit_intersection,
    distinct_domain_vertices,
    sample_graph,
)
from .selection import (
    global_selection,
    interval_selection_1d,
    local_selection,
    sandwich,
    verify_selection,
)


def _default_seed() -> int:
    raw = os.environ.get("AFFSEL_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"AFFSEL_SEED: expected an integer, got {raw!r}") from None


def _load(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path or '<stdin>'}: invalid JSON ({exc.msg})") from None


def _graph(doc) -> GraphMultifunction:
    inst = ser.parse_instance(doc)
    if not isinstance(inst, GraphMultifunction):
        raise InputError("kind: this command needs a 'graph' instance")
    return inst


def _parse_point(text: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",")]
    return tuple(ser.decode_rational(p, f"--point[{i}]") for i, p in enumerate(parts))


def audit_points(G: GraphMultifunction) -> list:
    """Distinct domain vertices followed by their pairwise midpoints."""
    verts = distinct_domain_vertices(G)
    pts = list(verts)
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            pts.append(tuple((x + y) / 2 for x, y in zip(verts[a], verts[b])))
    return list(dict.fromkeys(pts))


def cmd_audit(args) -> dict:
    inst = ser.parse_instance(_load(args.file))
    if isinstance(inst, GraphMultifunction):
        inst = sample_graph(inst, audit_points(inst))
    return {
        "inner_approximation": inst.inner_approximation,
        "convexity": ser.audit_doc(audit_convexity(inst)),
        "intersection": ser.audit_doc(audit_intersection(inst)),
    }


def cmd_select_global(args) -> dict:
    G = _graph(_load(args.file))
    out = global_selection(G, seed=args.seed)
    verified = verify_certificate(out.lp, out.certificate) if out.certificate else None
    return ser.selection_outcome_doc(out, verified)


def cmd_select_local(args) -> dict:
    G = _graph(_load(args.file))
    x0 = _parse_point(args.point)
    return ser.local_selection_doc(local_selection(G, x0, seed=args.seed))


def cmd_sandwich(args) -> dict:
    doc = _load(args.file)
    if isinstance(doc, dict) and doc.get("kind") == "sampled":
        out = interval_selection_1d(ser.parse_instance(doc))
    else:
        out = sandwich(*ser.parse_sandwich(doc))
    verified = verify_certificate(out.lp, out.certificate) if out.certificate else None
    return ser.selection_outcome_doc(out, verified)


def cmd_example(args) -> dict:
    if args.name == "olsen":
        inst = olsen()
    elif args.name == "hahn-banach":
        inst = hahn_banach(default_hahn_banach_spec())
    else:
        vertices = args.vertices if args.vertices is not None else args.n + args.m + 2
        inst = random_convex_graph(args.n, args.m, vertices, args.seed)
    doc = ser.instance_doc(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(ser.to_wire(doc)) + "\n")
    return doc


def cmd_verify(args) -> dict:
    G = _graph(_load(args.file))
    f = ser.parse_map(_load(args.map))
    return ser.selection_check_doc(verify_selection(G, f, args.trials, args.seed))


class _Parser(argparse.ArgumentParser):
    # Usage errors are input errors (exit 1); exit 2 is reserved for domain errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="affsel", description="Affine selections of convex multifunctions."
    )
    parser.add_argument(
        "--pretty", action="store_true", help="indent output and add approximate decimals"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(p):
        p.add_argument("file", nargs="?", help="instance JSON (default: stdin)")
        return p

    p = with_file(sub.add_parser("audit", help="convexity and intersection audits"))
    p.set_defaults(func=cmd_audit)

    p = with_file(sub.add_parser("select-global", help="decide a global affine selection"))
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_select_global)

    p = with_file(sub.add_parser("select-local", help="local affine selection at a point"))
    p.add_argument("--point", required=True, help="comma-separated rationals, e.g. 0,1/2")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_select_local)

    p = with_file(sub.add_parser("sandwich", help="affine function between lower and upper data"))
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("example", help="write a built-in instance")
    p.add_argument("name", choices=["olsen", "hahn-banach", "random"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--vertices", type=int, default=None)
    p.add_argument("--out", help="also write the document to this file")
    p.set_defaults(func=cmd_example)

    p = with_file(sub.add_parser("verify", help="spot-check a map against a graph"))
    p.add_argument("--map", required=True, help="map JSON, or any result document with a 'map'")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        doc = args.func(args)
    except DomainError as exc:
        print(f"affsel: {exc}", file=sys.stderr)
        return 2
    except AffselError as exc:
        print(f"affsel: {exc}", file=sys.stderr)
        return 1
    wire = ser.to_wire(doc)
    if args.pretty:
        wire = {"result": wire, "approximate_decimals": ser.to_approx(doc)}
        text = json.dumps(wire, indent=2)
    else:
        text = json.dumps(wire)
    sys.stdout.write(text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
