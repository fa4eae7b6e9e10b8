"""JSON wire format.

Rationals travel as bare integers when the denominator is 1 and as
``"p/q"`` strings otherwise.  Document builders return trees with
:class:`~fractions.Fraction` leaves; :func:`to_wire` makes them JSON-safe.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from .errors import InputError
from .lp import LpOutcome
from .multifunction import AuditReport, GraphMultifunction, SampledMultifunction
from .polytope import AffineMap, VPolytope
from .selection import LocalSelection, SelectionCheck, SelectionOutcome

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def encode_rational(q: Fraction) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decode_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        if "/" in value and int(value.split("/")[1]) == 0:
            raise InputError(f"{where}: zero denominator in {value!r}")
        return Fraction(value.strip())
    raise InputError(f"{where}: malformed rational {value!r} (use an integer or 'p/q')")


def decode_vector(value: Any, where: str, length: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of rationals")
    if length is not None and len(value) != length:
        raise InputError(f"{where}: expected {length} entries, got {len(value)}")
    return tuple(decode_rational(v, f"{where}[{i}]") for i, v in enumerate(value))


def to_wire(tree: Any) -> Any:
    if isinstance(tree, Fraction):
        return encode_rational(tree)
    if isinstance(tree, dict):
        return {k: to_wire(v) for k, v in tree.items()}
    if isinstance(tree, (list, tuple)):
        return [to_wire(v) for v in tree]
    return tree


def to_approx(tree: Any) -> Any:
    if isinstance(tree, Fraction):
        return float(tree)
    if isinstance(tree, dict):
        return {k: to_approx(v) for k, v in tree.items()}
    if isinstance(tree, (list, tuple)):
        return [to_approx(v) for v in tree]
    return tree


# -- instances ---------------------------------------------------------------


def instance_doc(inst: GraphMultifunction | SampledMultifunction) -> dict:
    if isinstance(inst, GraphMultifunction):
        return {
            "kind": "graph",
            "n": inst.n,
            "m": inst.m,
            "graph_vertices": [list(v) for v in inst.graph.vertices],
        }
    doc = {
        "kind": "sampled",
        "n": inst.n,
        "m": inst.m,
        "samples": [
            {"point": list(p), "value": [list(v) for v in val.vertices]}
            for p, val in inst.samples
        ],
    }
    if inst.inner_approximation:
        doc["inner_approximation"] = True
    return doc


def _dim(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise InputError(f"{key}: expected a positive integer, got {v!r}")
    return v


def parse_instance(doc: Any) -> GraphMultifunction | SampledMultifunction:
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object")
    kind = doc.get("kind")
    n, m = _dim(doc, "n"), _dim(doc, "m")
    if kind == "graph":
        verts = doc.get("graph_vertices")
        if not isinstance(verts, list) or not verts:
            raise InputError("graph_vertices: expected a nonempty list")
        vs = [decode_vector(v, f"graph_vertices[{i}]", n + m) for i, v in enumerate(verts)]
        return GraphMultifunction.from_vertices(n, m, vs)
    if kind == "sampled":
        samples = doc.get("samples")
        if not isinstance(samples, list) or not samples:
            raise InputError("samples: expected a nonempty list")
        out = []
        for i, s in enumerate(samples):
            if not isinstance(s, dict):
                raise InputError(f"samples[{i}]: expected an object")
            p = decode_vector(s.get("point"), f"samples[{i}].point", n)
            value = s.get("value")
            if not isinstance(value, list) or not value:
                raise InputError(f"samples[{i}].value: expected a nonempty list of vertices")
            verts = [decode_vector(v, f"samples[{i}].value[{j}]", m) for j, v in enumerate(value)]
            out.append((p, VPolytope(m, tuple(verts))))
        inner = doc.get("inner_approximation", False)
        if not isinstance(inner, bool):
            raise InputError("inner_approximation: expected true or false")
        return SampledMultifunction(n, m, tuple(out), inner)
    raise InputError(f"kind: expected 'graph' or 'sampled', got {kind!r}")


def sandwich_doc(lower, upper) -> dict:
    n = len(lower[0][0])
    return {
        "kind": "sandwich",
        "n": n,
        "lower": [{"point": list(p), "value": Fraction(v)} for p, v in lower],
        "upper": [{"point": list(p), "value": Fraction(v)} for p, v in upper],
    }


def parse_sandwich(doc: Any):
    if not isinstance(doc, dict) or doc.get("kind") != "sandwich":
        raise InputError("kind: expected 'sandwich'")
    n = _dim(doc, "n")
    sides = []
    for key in ("lower", "upper"):
        data = doc.get(key)
        if not isinstance(data, list) or not data:
            raise InputError(f"{key}: expected a nonempty list")
        side = []
        for i, d in enumerate(data):
            if not isinstance(d, dict):
                raise InputError(f"{key}[{i}]: expected an object")
            side.append(
                (
                    decode_vector(d.get("point"), f"{key}[{i}].point", n),
                    decode_rational(d.get("value"), f"{key}[{i}].value"),
                )
            )
        sides.append(side)
    return sides[0], sides[1]


def map_doc(f: AffineMap) -> dict:
    return {"n": f.n, "m": f.m, "matrix": [list(r) for r in f.matrix], "offset": list(f.offset)}


def parse_map(doc: Any) -> AffineMap:
    if isinstance(doc, dict) and isinstance(doc.get("map"), dict):
        doc = doc["map"]
    if not isinstance(doc, dict):
        raise InputError("map: expected a JSON object")
    n, m = _dim(doc, "n"), _dim(doc, "m")
    matrix = doc.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != m:
        raise InputError(f"matrix: expected {m} rows")
    rows = tuple(decode_vector(r, f"matrix[{i}]", n) for i, r in enumerate(matrix))
    return AffineMap(n, m, rows, decode_vector(doc.get("offset"), "offset", m))


# -- results -----------------------------------------------------------------


def lp_outcome_doc(out: LpOutcome, verified: bool) -> dict:
    doc: dict = {"status": out.status}
    if out.farkas is not None:
        doc["farkas"] = list(out.farkas)
    if out.solution is not None:
        doc["solution"] = list(out.solution)
    if out.optimum is not None:
        doc["optimum"] = out.optimum
    doc["verified"] = verified
    return doc


def selection_outcome_doc(o: SelectionOutcome, verified: bool | None = None) -> dict:
    doc: dict = {"status": o.status, "map": map_doc(o.map) if o.map else None}
    if o.certificate is not None:
        doc["certificate"] = lp_outcome_doc(o.certificate, bool(verified))
        doc["certificate"]["constraints"] = len(o.lp.constraints)
    doc["spot_checks"] = [
        {"point": list(c.point), "value": list(c.value), "member": c.member}
        for c in o.verification
    ]
    if o.intersection_audit is not None:
        doc["intersection_audit"] = audit_doc(o.intersection_audit)
    return doc


def local_selection_doc(s: LocalSelection) -> dict:
    return {
        "status": "found",
        "center": list(s.center),
        "simplex": [list(v) for v in s.simplex.vertices],
        "values": [list(v) for v in s.values],
        "map": map_doc(s.map),
        "shrink_exponent": s.shrink_exponent,
        "spot_checks": len(s.verification),
        "spot_check_failures": sum(not c.member for c in s.verification),
    }


def audit_doc(r: AuditReport) -> dict:
    return {
        "kind": r.kind,
        "checked_triples": r.checked_triples,
        "passed": r.passed,
        "violations": [
            {"i": v.i, "j": v.j, "k": v.k, "t": v.t, "witness": list(v.witness)}
            for v in r.violations
        ],
    }


def selection_check_doc(c: SelectionCheck) -> dict:
    return {
        "trials": c.trials,
        "passed": c.passed,
        "failures": [{"point": list(p), "value": list(v)} for p, v in c.failures],
    }
