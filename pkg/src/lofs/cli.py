"""Command-line front end.

Exit codes: 0 success or predicate true, 1 predicate false or suite
failure, 2 usage or I/O error, 3 invalid object (schema or invariant
violation).  Output is deterministic for fixed inputs and flags;
diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import sys

from . import formats, suite
from .errors import (
    FormatError,
    IndexOutOfRange,
    InvariantViolation,
    LofsError,
    NotAPoset,
    ShapeMismatch,
    SizeLimitExceeded,
)
from .factorisation import factorise, fibrant_replacement
from .kan import kan_injective, classify_injectives
from .lifting import kz_orthogonal, lifting_structure
from .order import (
    FinPreorder,
    MonotoneMap,
    _bits,
    enumerate_preorders,
    is_complete_lattice,
    is_full,
    is_order_embedding,
    is_poset,
    sup_mask,
)
from .topology import (
    FiniteSpace,
    f_lower_star,
    filter_space,
    filter_unit,
    is_continuous_lattice,
    is_top_coalgebra,
)

_INVALID = (FormatError, InvariantViolation, IndexOutOfRange)
_OPERATIONAL = (SizeLimitExceeded, ShapeMismatch, NotAPoset)


def _load(path, want=None):
    doc = formats.load_document(path)
    if want is not None and not isinstance(doc, want):
        raise FormatError(f"{path}: expected {want.__name__}, got {type(doc).__name__}")
    return doc


def _load_preorder(path):
    doc = formats.load_document(path)
    if isinstance(doc, FiniteSpace):
        return doc.points
    if not isinstance(doc, FinPreorder):
        raise FormatError(f"{path}: expected a preorder or space")
    return doc


def _emit(text):
    sys.stdout.write(text)


def _names(P, mask):
    return [P.label(i) for i in _bits(mask)]


def _complete_lattice_witness(P):
    """Smallest subset without a least upper bound, by size then mask."""
    for size in range(P.n + 1):
        for mask in range(1 << P.n):
            if mask.bit_count() == size and sup_mask(P, mask) is None:
                return {"subset-without-sup": _names(P, mask)}
    return None


def _fullness_witness(f):
    for a in range(f.src.n):
        for b in range(f.src.n):
            if f.tgt.leq(f.assign[a], f.assign[b]) and not f.src.leq(a, b):
                return {
                    "images-related": [f.src.label(a), f.src.label(b)],
                    "sources-unrelated": True,
                }
    return None


_CHECKS = {
    "poset": (FinPreorder, is_poset),
    "complete-lattice": (FinPreorder, is_complete_lattice),
    "continuous-lattice": (FinPreorder, is_continuous_lattice),
    "full": (MonotoneMap, is_full),
    "order-embedding": (MonotoneMap, is_order_embedding),
    "top-coalgebra": (MonotoneMap, is_top_coalgebra),
}


def _cmd_validate(args):
    for path in args.files:
        formats.load_document(path)
    _emit(formats.dumps({"valid": args.files}))
    return 0


def _cmd_check(args):
    want, predicate = _CHECKS[args.predicate]
    if want is FinPreorder:
        value = _load_preorder(args.file)
    else:
        value = _load(args.file, MonotoneMap)
    result = bool(predicate(value))
    payload = {"predicate": args.predicate, "result": result}
    if args.witness and not result:
        if args.predicate == "complete-lattice":
            payload["witness"] = _complete_lattice_witness(value)
        elif args.predicate in ("full", "order-embedding"):
            payload["witness"] = _fullness_witness(value)
        elif args.predicate == "top-coalgebra":
            payload["witness"] = _fullness_witness(f_lower_star(value))
        elif args.predicate == "poset":
            for i in range(value.n):
                for j in range(i + 1, value.n):
                    if value.equiv(i, j):
                        payload["witness"] = {
                            "equivalent-pair": [value.label(i), value.label(j)]
                        }
                        break
                if "witness" in payload:
                    break
        elif args.predicate == "continuous-lattice":
            payload["witness"] = _complete_lattice_witness(value)
    _emit(formats.dumps(payload))
    return 0 if result else 1


def _cmd_factor(args):
    f = _load(args.file, MonotoneMap)
    fact = factorise(f, args.max_carrier)
    obj = formats.factorisation_to_obj(fact)
    if args.format == "dot":
        _emit(formats.hasse_dot(formats.preorder_from_obj(obj["K"])))
    else:
        _emit(formats.dumps(obj))
    return 0


def _cmd_fibrant(args):
    A = _load_preorder(args.file)
    _, lam, iso = fibrant_replacement(A, args.max_carrier)
    point = FinPreorder(1, (1,), ("pt",))
    fact = factorise(MonotoneMap(A, point, [0] * A.n), args.max_carrier)
    obj = formats.factorisation_to_obj(fact)
    if args.format == "dot":
        _emit(formats.hasse_dot(formats.preorder_from_obj(obj["K"])))
        return 0
    payload = {
        "object": obj["K"],
        "unit": obj["lambda"],
        "downset-iso": {"assign": list(iso.assign)},
    }
    _emit(formats.dumps(payload))
    return 0


def _cmd_lift(args):
    family = formats.load_document(args.family)
    from .lifting import GeneratorFamily

    if not isinstance(family, GeneratorFamily):
        raise FormatError(f"{args.family}: expected a generator family")
    g = _load(args.map, MonotoneMap)
    st = lifting_structure(family, g, args.max_carrier)
    payload = {"exists": st is not None}
    if st is not None:
        payload["canonical"] = st.canonical
        if args.witness:
            payload["fillers"] = [
                {
                    "member": idx,
                    "h": list(h),
                    "k": list(k),
                    "diagonal": list(d.assign),
                }
                for (idx, h, k), d in sorted(st.fillers.items())
            ]
    _emit(formats.dumps(payload))
    return 0 if st is not None else 1


def _cmd_kz(args):
    j = _load(args.j, MonotoneMap)
    g = _load(args.g, MonotoneMap)
    w = kz_orthogonal(j, g, args.max_carrier)
    payload = {"exists": w is not None}
    if w is not None:
        payload["exact"] = w.exact
        payload["section"] = list(w.left_adjoint.assign)
    _emit(formats.dumps(payload))
    return 0 if w is not None else 1


def _cmd_kan_injective(args):
    A = _load_preorder(args.object)
    family = formats.load_document(args.family)
    result = kan_injective(A, family, args.max_carrier)
    _emit(formats.dumps({"kan-injective": result}))
    return 0 if result else 1


def _cmd_classify(args):
    rows = classify_injectives(
        args.max_size,
        generator_size=args.generator_size,
        posets_only=args.posets_only,
    )
    payload = [
        {
            "preorder": formats.preorder_to_obj(A),
            "kan-injective": injective,
            "complete-lattice": complete,
        }
        for A, injective, complete in rows
    ]
    _emit(formats.dumps(payload))
    return 0 if all(r["kan-injective"] == r["complete-lattice"] for r in payload) else 1


def _cmd_filter_space(args):
    X = _load(args.file, FiniteSpace)
    fs = filter_space(X, args.max_carrier)
    opens = fs.opens
    labels = [
        "{" + ",".join(_names(X.points, opens[fs.generators[i]])) + "}^"
        for i in range(fs.filters.n)
    ]
    filters = FinPreorder(fs.filters.n, fs.filters.up, labels)
    if args.format == "dot":
        _emit(formats.hasse_dot(filters))
        return 0
    unit = filter_unit(X, fs)
    payload = {
        "filters": formats.preorder_to_obj(filters),
        "unit": {
            X.points.label(x): labels[unit.assign[x]] for x in range(X.points.n)
        },
    }
    _emit(formats.dumps(payload))
    return 0


def _cmd_enumerate(args):
    items = enumerate_preorders(
        args.size,
        up_to_iso=not args.labeled,
        posets_only=args.posets_only,
        bound=args.max_size,
    )
    if args.format == "dot":
        _emit("".join(formats.hasse_dot(P) for P in items))
        return 0
    payload = [formats.preorder_to_obj(P) for P in items]
    _emit(formats.dumps({"count": len(items), "preorders": payload}))
    return 0


def _cmd_dot(args):
    P = _load_preorder(args.file)
    _emit(formats.hasse_dot(P))
    return 0


def _cmd_suite(args):
    names = set(args.criteria.split(",")) if args.criteria else None
    ok = suite.run_suite(names=names, emit=lambda line: _emit(line + "\n"))
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lofs",
        description="Finite order-theoretic factorisations, lifting operations and topology.",
    )
    parser.add_argument("--max-carrier", type=int, default=4096, metavar="N",
                        help="bound on intermediate carriers (default 4096)")
    parser.add_argument("--max-size", type=int, default=5, metavar="N",
                        help="bound on enumerated object size (default 5)")
    parser.add_argument("--witness", action="store_true",
                        help="report a minimal counterexample on predicate failure")
    parser.add_argument("--format", choices=["json", "dot"], default="json",
                        help="output format where both make sense (default json)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse files and check invariants")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("check", help="evaluate a predicate on one object")
    p.add_argument("predicate", choices=sorted(_CHECKS))
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("factor", help="factor a map through its pair preorder")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_factor)

    p = sub.add_parser("fibrant", help="fibrant replacement of a preorder")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_fibrant)

    p = sub.add_parser("lift", help="search a lifting structure for a family")
    p.add_argument("family")
    p.add_argument("map")
    p.set_defaults(fn=_cmd_lift)

    p = sub.add_parser("kz", help="KZ-lifting operation between two maps")
    p.add_argument("j")
    p.add_argument("g")
    p.set_defaults(fn=_cmd_kz)

    p = sub.add_parser("kan-injective", help="Kan injectivity of an object")
    p.add_argument("object")
    p.add_argument("family")
    p.set_defaults(fn=_cmd_kan_injective)

    p = sub.add_parser("classify", help="Kan injectives vs complete lattices")
    p.add_argument("--max-size", dest="max_size", type=int, default=4)
    p.add_argument("--generator-size", type=int, default=None)
    p.add_argument("--posets-only", action="store_true")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("filter-space", help="the space of filters of a finite space")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_filter_space)

    p = sub.add_parser("enumerate", help="enumerate preorders of one size")
    p.add_argument("size", type=int)
    p.add_argument("--posets-only", action="store_true")
    p.add_argument("--labeled", action="store_true")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("dot", help="Hasse diagram of the poset reflection")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_dot)

    p = sub.add_parser("suite", help="run the acceptance battery")
    p.add_argument("--criteria", default=None, metavar="LIST",
                   help="comma-separated criterion numbers to run")
    p.set_defaults(fn=_cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _INVALID as exc:
        print(f"lofs: invalid object: {exc}", file=sys.stderr)
        return 3
    except _OPERATIONAL as exc:
        print(f"lofs: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lofs: {exc}", file=sys.stderr)
        return 2
    except LofsError as exc:  # pragma: no cover - safety net
        print(f"lofs: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
