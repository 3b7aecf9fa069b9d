"""Shared JSON object formats and DOT export.

Preorders travel as ``{"type": "preorder", "elements": [...], "le": [[a, b], ...]}``;
the reader applies reflexive-transitive closure, so generators suffice.
Maps carry their endpoints inline or as a path relative to the referencing
file.  Spaces use the same shape as preorders under ``"type": "space"``.
Families are either a bare JSON array of maps or an object with
``members`` and optional ``links``.
"""

from __future__ import annotations

import json
import os

from .errors import FormatError
from .lifting import GeneratorFamily
from .order import FinPreorder, MonotoneMap, _bits, closure
from .topology import FiniteSpace


def _expect(cond, message):
    if not cond:
        raise FormatError(message)


def preorder_from_obj(obj):
    _expect(isinstance(obj, dict), "preorder must be a JSON object")
    _expect(obj.get("type") in ("preorder", "space"), "expected a preorder object")
    elements = obj.get("elements")
    _expect(
        isinstance(elements, list) and all(isinstance(e, str) for e in elements),
        "elements must be a list of strings",
    )
    _expect(len(set(elements)) == len(elements), "element names must be distinct")
    index = {e: i for i, e in enumerate(elements)}
    le = obj.get("le", [])
    _expect(isinstance(le, list), "le must be a list of pairs")
    pairs = []
    for entry in le:
        _expect(
            isinstance(entry, list) and len(entry) == 2,
            "each le entry must be a two-element list",
        )
        a, b = entry
        _expect(a in index and b in index, f"unknown element in le pair {entry}")
        pairs.append((index[a], index[b]))
    closed = closure(len(elements), pairs)
    return FinPreorder(closed.n, closed.up, elements)


def preorder_to_obj(P, type_name="preorder"):
    return {
        "type": type_name,
        "elements": [P.label(i) for i in range(P.n)],
        "le": [[P.label(i), P.label(j)] for i, j in P.pairs()],
    }


def space_from_obj(obj):
    _expect(obj.get("type") == "space", "expected a space object")
    return FiniteSpace(preorder_from_obj({**obj, "type": "preorder"}))


def space_to_obj(X):
    return preorder_to_obj(X.points, "space")


def _resolve_endpoint(value, base_dir):
    if isinstance(value, str):
        doc = load_document(os.path.join(base_dir, value))
        if isinstance(doc, FiniteSpace):
            return doc.points
        _expect(isinstance(doc, FinPreorder), f"{value} does not hold a preorder")
        return doc
    if isinstance(value, dict) and value.get("type") == "space":
        return space_from_obj(value).points
    return preorder_from_obj(value)


def map_from_obj(obj, base_dir="."):
    _expect(isinstance(obj, dict), "map must be a JSON object")
    _expect(obj.get("type") == "map", "expected a map object")
    src = _resolve_endpoint(obj.get("source"), base_dir)
    tgt = _resolve_endpoint(obj.get("target"), base_dir)
    assign_obj = obj.get("assign")
    _expect(isinstance(assign_obj, dict), "assign must be an object")
    src_index = {src.label(i): i for i in range(src.n)}
    tgt_index = {tgt.label(i): i for i in range(tgt.n)}
    assign = [None] * src.n
    for a, b in assign_obj.items():
        _expect(a in src_index, f"unknown source element {a!r}")
        _expect(b in tgt_index, f"unknown target element {b!r}")
        assign[src_index[a]] = tgt_index[b]
    _expect(None not in assign, "assign must cover every source element")
    return MonotoneMap(src, tgt, assign)


def map_to_obj(f):
    return {
        "type": "map",
        "source": preorder_to_obj(f.src),
        "target": preorder_to_obj(f.tgt),
        "assign": {f.src.label(i): f.tgt.label(v) for i, v in enumerate(f.assign)},
    }


def family_from_obj(obj, base_dir="."):
    if isinstance(obj, list):
        return GeneratorFamily([map_from_obj(m, base_dir) for m in obj])
    _expect(isinstance(obj, dict), "family must be an array or object")
    _expect(obj.get("type") == "family", "expected a family object")
    members = [map_from_obj(m, base_dir) for m in obj.get("members", [])]
    links = []
    for link in obj.get("links", []):
        _expect(isinstance(link, dict), "each link must be an object")
        src = link.get("from")
        tgt = link.get("to")
        _expect(
            isinstance(src, int) and isinstance(tgt, int), "link endpoints are indices"
        )
        _expect(0 <= src < len(members) and 0 <= tgt < len(members), "link index range")
        u = _named_assign(link.get("u"), members[src].src, members[tgt].src)
        v = _named_assign(link.get("v"), members[src].tgt, members[tgt].tgt)
        links.append((src, tgt, u, v))
    return GeneratorFamily(members, links)


def _named_assign(obj, src, tgt):
    _expect(isinstance(obj, dict), "link legs must be name-to-name objects")
    src_index = {src.label(i): i for i in range(src.n)}
    tgt_index = {tgt.label(i): i for i in range(tgt.n)}
    assign = [None] * src.n
    for a, b in obj.items():
        _expect(a in src_index and b in tgt_index, f"unknown element in link {obj}")
        assign[src_index[a]] = tgt_index[b]
    _expect(None not in assign, "link leg must cover every element")
    return MonotoneMap(src, tgt, assign)


def factorisation_to_obj(fact):
    """The CLI shape for a factorisation: middle object plus both legs."""
    A, B = fact.f.src, fact.f.tgt
    labels = []
    for m, b in fact.pairs:
        members = ",".join(A.label(i) for i in _bits(m))
        labels.append(f"({{{members}}},{B.label(b)})")
    K = FinPreorder(fact.K.n, fact.K.up, labels)
    lam = MonotoneMap(A, K, fact.lam.assign)
    rho = MonotoneMap(K, B, fact.rho.assign)
    return {
        "K": preorder_to_obj(K),
        "lambda": map_to_obj(lam),
        "rho": map_to_obj(rho),
    }


def load_document(path):
    """Read one JSON file into the value its ``type`` field names."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    base_dir = os.path.dirname(os.path.abspath(path))
    return document_from_obj(obj, base_dir)


def document_from_obj(obj, base_dir="."):
    if isinstance(obj, list):
        return family_from_obj(obj, base_dir)
    _expect(isinstance(obj, dict), "document must be a JSON object or array")
    kind = obj.get("type")
    if kind == "preorder":
        return preorder_from_obj(obj)
    if kind == "space":
        return space_from_obj(obj)
    if kind == "map":
        return map_from_obj(obj, base_dir)
    if kind == "family":
        return family_from_obj(obj, base_dir)
    raise FormatError(f"unknown document type {kind!r}")


def dumps(obj):
    """Deterministic JSON text: fixed key order, two-space indent."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def hasse_dot(P):
    """DOT source for the Hasse diagram of the poset reflection.

    One node per equivalence class, labeled by its member list; edges are
    the cover relation of the quotient.
    """
    Q, cls = P.quotient()
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for c, mask in enumerate(cls):
        label = ",".join(P.label(i) for i in _bits(mask))
        lines.append(f'  n{c} [label="{label}"];')
    for a in range(Q.n):
        for b in _bits(Q.up[a]):
            if a == b:
                continue
            strictly_between = any(
                x != a and x != b and (Q.up[a] >> x) & (Q.up[x] >> b) & 1
                for x in range(Q.n)
            )
            if not strictly_between:
                lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
