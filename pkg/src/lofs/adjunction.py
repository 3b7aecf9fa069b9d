"""Adjoint computation, RALI/LARI detection, comma objects and collages.

Adjoints of monotone maps are found by the pointwise-minimum formula,
which is its own certificate: the search either returns a witness whose
inequalities hold by construction or proves absence by exhibiting an
element with no minimum.
"""

from __future__ import annotations

from .errors import InvariantViolation, SizeLimitExceeded
from .order import (
    DEFAULT_MAX_CARRIER,
    FinPreorder,
    MonotoneMap,
    _bits,
    compose,
    identity,
    two_cell,
)


class RaliWitness:
    """A left adjoint section: f ∘ left_adjoint = id and left_adjoint ∘ f <= id.

    Validation reads the section equation up to pointwise equivalence so
    the comparison maps of KZ-lifting operations over genuine preorders
    fit; ``exact`` reports whether it holds on the nose, which it always
    does when the codomain is a poset.
    """

    __slots__ = ("f", "left_adjoint", "exact")

    def __init__(self, f, left_adjoint):
        section = compose(left_adjoint, f)
        ident = identity(f.tgt)
        if not (two_cell(section, ident) and two_cell(ident, section)):
            raise InvariantViolation("left adjoint is not a section of f")
        if not two_cell(compose(f, left_adjoint), identity(f.src)):
            raise InvariantViolation("counit inequality fails")
        self.f = f
        self.left_adjoint = left_adjoint
        self.exact = section.assign == ident.assign

    def __repr__(self):
        return f"RaliWitness(section={list(self.left_adjoint.assign)})"


class LariWitness:
    """A right adjoint retraction: right_adjoint ∘ f = id and f ∘ right_adjoint <= id."""

    __slots__ = ("f", "right_adjoint", "exact")

    def __init__(self, f, right_adjoint):
        retraction = compose(f, right_adjoint)
        ident = identity(f.src)
        if not (two_cell(retraction, ident) and two_cell(ident, retraction)):
            raise InvariantViolation("right adjoint is not a retraction of f")
        if not two_cell(compose(right_adjoint, f), identity(f.tgt)):
            raise InvariantViolation("counit inequality fails")
        self.f = f
        self.right_adjoint = right_adjoint
        self.exact = retraction.assign == ident.assign

    def __repr__(self):
        return f"LariWitness(retraction={list(self.right_adjoint.assign)})"


class CommaObject:
    """Pairs (a, b) with f(a) <= b, ordered componentwise."""

    __slots__ = ("f", "carrier", "proj_a", "proj_b", "pairs")

    def __init__(self, f, carrier, proj_a, proj_b, pairs):
        self.f = f
        self.carrier = carrier
        self.proj_a = proj_a
        self.proj_b = proj_b
        self.pairs = pairs


class Collage:
    """The disjoint union A ⊔ B with cross relation ι_B(b) <= ι_A(a) iff b <= f(a)."""

    __slots__ = ("f", "carrier", "copr_a", "copr_b")

    def __init__(self, f, carrier, copr_a, copr_b):
        self.f = f
        self.carrier = carrier
        self.copr_a = copr_a
        self.copr_b = copr_b


def find_left_adjoint(f):
    """The left adjoint of f, or None.

    g(b) is a minimum of {a : b <= f(a)}, picked at the least index among
    equivalent minima; when src/tgt are posets the result is unique.
    """
    A, B = f.src, f.tgt
    assign = []
    for b in range(B.n):
        candidates = 0
        for a in range(A.n):
            if (B.up[b] >> f.assign[a]) & 1:
                candidates |= 1 << a
        best = None
        for a in _bits(candidates):
            if not (candidates & ~A.up[a]):
                best = a
                break
        if best is None:
            return None
        assign.append(best)
    return MonotoneMap(B, A, assign)


def find_right_adjoint(f):
    """Dual of :func:`find_left_adjoint`: g(b) a maximum of {a : f(a) <= b}."""
    A, B = f.src, f.tgt
    assign = []
    for b in range(B.n):
        candidates = 0
        for a in range(A.n):
            if (B.up[f.assign[a]] >> b) & 1:
                candidates |= 1 << a
        best = None
        for a in _bits(candidates):
            if not (candidates & ~A.down[a]):
                best = a
                break
        if best is None:
            return None
        assign.append(best)
    return MonotoneMap(B, A, assign)


def _section_choices(f, exact):
    """Per-element choices for a left adjoint section of f.

    For each b the candidates are the minima of {a : b <= f(a)} that f
    sends back to b: on the nose when ``exact``, up to equivalence
    otherwise.  Any witness must take values there, and all members of
    one candidate set are pairwise equivalent, which is what makes RALI
    witnesses unique on posets and unique up to pointwise equivalence on
    preorders.
    """
    A, B = f.src, f.tgt
    choices = []
    for b in range(B.n):
        above = 0
        for a in range(A.n):
            if (B.up[b] >> f.assign[a]) & 1:
                above |= 1 << a
        minima = [a for a in _bits(above) if not (above & ~A.up[a])]
        if exact:
            fitting = [a for a in minima if f.assign[a] == b]
        else:
            fitting = [a for a in minima if B.equiv(f.assign[a], b)]
        for x in fitting:
            for y in fitting:
                if not A.equiv(x, y):  # pragma: no cover - impossible for minima
                    raise InvariantViolation("inequivalent minima found")
        choices.append(fitting)
    return choices


def find_rali(f, exact=True):
    """A RALI witness on f, or None.

    The section is assembled pointwise from minima; monotonicity is
    automatic because minima over shrinking sets only grow.  With
    ``exact=False`` the section equation is only required up to pointwise
    equivalence, the right notion for comparison maps between preorder
    hom-objects; the two coincide when the codomain is a poset.
    """
    choices = _section_choices(f, exact)
    if any(not c for c in choices):
        return None
    return RaliWitness(f, MonotoneMap(f.tgt, f.src, [c[0] for c in choices]))


def find_lari(f):
    """A LARI witness on f, or None.

    Any right adjoint must send b to a maximum of {a : f(a) <= b}, and
    the strict retraction pins its value on the image of f.
    """
    A, B = f.src, f.tgt
    forced = {}
    for a in range(A.n):
        b = f.assign[a]
        if forced.setdefault(b, a) != a:
            return None
    assign = []
    for b in range(B.n):
        below = 0
        for a in range(A.n):
            if (B.up[f.assign[a]] >> b) & 1:
                below |= 1 << a
        maxima = [a for a in _bits(below) if not (below & ~A.down[a])]
        if b in forced:
            if forced[b] not in maxima:
                return None
            assign.append(forced[b])
        else:
            if not maxima:
                return None
            assign.append(maxima[0])
    return LariWitness(f, MonotoneMap(B, A, assign))


def comma(f, max_carrier=DEFAULT_MAX_CARRIER):
    """The lax limit of f: pairs (a, b) with f(a) <= b."""
    A, B = f.src, f.tgt
    if A.n * B.n > max_carrier:
        raise SizeLimitExceeded("comma carrier exceeds the bound")
    pairs = [
        (a, b) for a in range(A.n) for b in range(B.n) if (B.up[f.assign[a]] >> b) & 1
    ]
    rows = []
    for a, b in pairs:
        r = 0
        for idx, (a2, b2) in enumerate(pairs):
            if (A.up[a] >> a2) & (B.up[b] >> b2) & 1:
                r |= 1 << idx
        rows.append(r)
    carrier = FinPreorder(len(pairs), rows)
    proj_a = MonotoneMap(carrier, A, [a for a, _ in pairs])
    proj_b = MonotoneMap(carrier, B, [b for _, b in pairs])
    return CommaObject(f, carrier, proj_a, proj_b, tuple(pairs))


def collage(f):
    """The lax colimit of f on A ⊔ B; A sits at indices 0..|A|-1."""
    A, B = f.src, f.tgt
    n = A.n + B.n
    rows = []
    for a in range(A.n):
        rows.append(A.up[a])  # no relations from A into B
    for b in range(B.n):
        row = B.up[b] << A.n
        for a in range(A.n):
            if (B.up[b] >> f.assign[a]) & 1:
                row |= 1 << a
        rows.append(row)
    carrier = FinPreorder(n, rows)
    copr_a = MonotoneMap(A, carrier, range(A.n))
    copr_b = MonotoneMap(B, carrier, (A.n + b for b in range(B.n)))
    return Collage(f, carrier, copr_a, copr_b)


def laxlimit_awfs(f, max_carrier=DEFAULT_MAX_CARRIER):
    """Factor f through its lax limit: (left, right) with right ∘ left = f.

    The left part sends a to (a, f(a)) and always carries a LARI witness
    whose retraction is the first projection.
    """
    cm = comma(f, max_carrier)
    index = {p: i for i, p in enumerate(cm.pairs)}
    left = MonotoneMap(f.src, cm.carrier, [index[(a, f.assign[a])] for a in range(f.src.n)])
    return left, cm.proj_b


def laxcolimit_awfs(f):
    """Factor f through its lax colimit: (left, right) with right ∘ left = f.

    The right part always carries a RALI witness whose section is the
    B-coprojection.
    """
    col = collage(f)
    right = MonotoneMap(
        col.carrier,
        f.tgt,
        list(f.assign) + list(range(f.tgt.n)),
    )
    return col.copr_a, right
