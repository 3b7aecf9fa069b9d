"""Lifting structures for generator families and KZ-lifting operations.

A lifting structure on g chooses, for every generator j and every
commuting square from j to g, a diagonal filler; the choices must be
monotone in the square and natural across the family's links.  Since the
hom objects here are preorders, generator families carry no composition
data: links are plain squares between members.
"""

from __future__ import annotations

from .adjunction import find_rali
from .errors import InvariantViolation, ShapeMismatch
from .order import (
    DEFAULT_MAX_CARRIER,
    MonotoneMap,
    Square,
    _pointwise_leq,
    compose,
    monotone_assignments,
    squares,
    sq_hom_poset,
)


class GeneratorFamily:
    """A finite family of maps with optional commuting links between them.

    A link (src, tgt, u, v) is a square from member ``src`` to member
    ``tgt``: members[tgt] ∘ u = v ∘ members[src].
    """

    __slots__ = ("members", "links")

    def __init__(self, members, links=()):
        members = tuple(members)
        links = tuple(links)
        for src, tgt, u, v in links:
            if not (0 <= src < len(members) and 0 <= tgt < len(members)):
                raise ShapeMismatch("link references a missing member")
            Square(members[src], members[tgt], u, v)  # validates commutation
        self.members = members
        self.links = links

    def __add__(self, other):
        shift = len(self.members)
        shifted = tuple(
            (src + shift, tgt + shift, u, v) for src, tgt, u, v in other.links
        )
        return GeneratorFamily(self.members + other.members, self.links + shifted)

    def __len__(self):
        return len(self.members)


class LiftingStructure:
    """A coherent choice of fillers for one map against a family.

    ``fillers[(i, h, k)]`` is the chosen diagonal for the square
    (h, k) : members[i] -> g, keyed by assignment vectors.  ``canonical``
    records whether every square had a least filler; when False some
    choices were lexicographic-first among incomparable fillers.
    """

    __slots__ = ("g", "family", "fillers", "canonical")

    def __init__(self, g, family, fillers, canonical):
        self.g = g
        self.family = family
        self.fillers = fillers
        self.canonical = canonical

    def filler(self, member_idx, h, k):
        return self.fillers[(member_idx, h.assign, k.assign)]


def canonical_map(j, g, max_carrier=DEFAULT_MAX_CARRIER):
    """The comparison d ↦ (d ∘ j, g ∘ d) into the square preorder.

    Its source is ``hom_poset(cod j, dom g)`` and its target
    ``sq_hom_poset(j, g)``, both in canonical element order.
    """
    from .order import hom_poset

    hom = hom_poset(j.tgt, g.src, max_carrier)
    sqp = sq_hom_poset(j, g, max_carrier)
    sqs = squares(j, g, max_carrier)
    index = {(s.h.assign, s.k.assign): i for i, s in enumerate(sqs)}
    assigns = monotone_assignments(j.tgt, g.src, max_carrier)
    out = []
    for d in assigns:
        h = tuple(d[v] for v in j.assign)
        k = tuple(g.assign[v] for v in d)
        out.append(index[(h, k)])
    return MonotoneMap(hom, sqp, out)


def square_fillers(sq, max_carrier=DEFAULT_MAX_CARRIER, up_to_equiv=False):
    """All diagonals d with d ∘ j = h and g ∘ d = k, lexicographic.

    With ``up_to_equiv`` the two equations are read up to pointwise
    equivalence, the enriched notion matching KZ-lifting witnesses; the
    readings agree over posets.
    """
    C, D = sq.g.src, sq.g.tgt
    out = []
    for d in monotone_assignments(sq.j.tgt, C, max_carrier):
        if up_to_equiv:
            fits = all(
                C.equiv(d[sq.j.assign[x]], sq.h.assign[x])
                for x in range(sq.j.src.n)
            ) and all(
                D.equiv(sq.g.assign[v], sq.k.assign[y]) for y, v in enumerate(d)
            )
        else:
            fits = all(
                d[sq.j.assign[x]] == sq.h.assign[x] for x in range(sq.j.src.n)
            ) and all(sq.g.assign[v] == sq.k.assign[y] for y, v in enumerate(d))
        if fits:
            out.append(MonotoneMap(sq.j.tgt, C, d))
    return out


def has_lifting(j, g, max_carrier=DEFAULT_MAX_CARRIER):
    """Every commuting square from j to g admits at least one filler.

    Fillers are taken up to pointwise equivalence so that KZ-orthogonality
    always implies this predicate; over posets that is the strict notion.
    """
    return all(
        square_fillers(s, max_carrier, up_to_equiv=True)
        for s in squares(j, g, max_carrier)
    )


def _least(maps, tgt):
    for d in maps:
        if all(_pointwise_leq(tgt, d.assign, e.assign) for e in maps):
            return d
    return None


def lifting_structure(family, g, max_carrier=DEFAULT_MAX_CARRIER):
    """A coherent lifting structure on g, or None.

    Fillers are chosen square by square: the least filler when one
    exists, else the lexicographic-first (recorded by the ``canonical``
    flag).  The selection is then validated against the monotonicity and
    link-naturality invariants; KZ situations never hit the flag and
    always validate.
    """
    fillers = {}
    canonical = True
    for idx, j in enumerate(family.members):
        for sq in squares(j, g, max_carrier):
            cands = square_fillers(sq, max_carrier)
            if not cands:
                return None
            best = _least(cands, g.src)
            if best is None:
                canonical = False
                best = cands[0]
            fillers[(idx, sq.h.assign, sq.k.assign)] = best
    out = LiftingStructure(g, family, fillers, canonical)
    if not _coherent(out, max_carrier):
        return None
    return out


def _coherent(structure, max_carrier):
    g, family = structure.g, structure.family
    # monotone in the square, member by member
    for idx, j in enumerate(family.members):
        sqs = squares(j, g, max_carrier)
        for a in sqs:
            da = structure.filler(idx, a.h, a.k)
            for b in sqs:
                if _pointwise_leq(g.src, a.h.assign, b.h.assign) and _pointwise_leq(
                    g.tgt, a.k.assign, b.k.assign
                ):
                    if not _pointwise_leq(
                        g.src, da.assign, structure.filler(idx, b.h, b.k).assign
                    ):
                        return False
    # natural across links
    for src, tgt, u, v in family.links:
        jt = family.members[tgt]
        for sq in squares(jt, g, max_carrier):
            left = structure.filler(src, compose(u, sq.h), compose(v, sq.k))
            right = compose(v, structure.filler(tgt, sq.h, sq.k))
            if left.assign != right.assign:
                return False
    return True


def kz_orthogonal(j, g, max_carrier=DEFAULT_MAX_CARRIER):
    """The RALI witness on the comparison map, or None.

    When it exists, the section picks the least filler of each square;
    any two witnesses agree up to pointwise equivalence.  The section
    equation is read up to equivalence of the square preorder, which is
    on-the-nose whenever that preorder is a poset.
    """
    return find_rali(canonical_map(j, g, max_carrier), exact=False)


def compose_structures(sf, sg, max_carrier=DEFAULT_MAX_CARRIER):
    """Compose lifting structures along composable underlying maps.

    The composite filler for (h, k) against g ∘ f fills g on
    (f ∘ h, k) first and then fills f on (h, that filler).
    """
    if sf.family is not sg.family and sf.family.members != sg.family.members:
        raise ShapeMismatch("structures are over different families")
    f, g = sf.g, sg.g
    if f.tgt != g.src:
        raise ShapeMismatch("underlying maps do not compose")
    gf = compose(f, g)
    fillers = {}
    for idx, j in enumerate(sf.family.members):
        for sq in squares(j, gf, max_carrier):
            dg = sg.filler(idx, compose(sq.h, f), sq.k)
            df = sf.filler(idx, sq.h, dg)
            fillers[(idx, sq.h.assign, sq.k.assign)] = df
    out = LiftingStructure(gf, sf.family, fillers, sf.canonical and sg.canonical)
    if not _coherent(out, max_carrier):
        raise InvariantViolation("composite lifting structure is incoherent")
    return out


def coproduct_family_check(fam1, fam2, g, max_carrier=DEFAULT_MAX_CARRIER):
    """Structures for a coproduct family are pairs of structures.

    True iff a structure for fam1 + fam2 exists exactly when structures
    for both parts exist, and in that case the combined fillers restrict
    to the two component structures.
    """
    both = lifting_structure(fam1 + fam2, g, max_carrier)
    s1 = lifting_structure(fam1, g, max_carrier)
    s2 = lifting_structure(fam2, g, max_carrier)
    if (both is not None) != (s1 is not None and s2 is not None):
        return False
    if both is None:
        return True
    shift = len(fam1.members)
    for (idx, h, k), d in both.fillers.items():
        if idx < shift:
            if s1.fillers[(idx, h, k)].assign != d.assign:
                return False
        elif s2.fillers[(idx - shift, h, k)].assign != d.assign:
            return False
    return True
