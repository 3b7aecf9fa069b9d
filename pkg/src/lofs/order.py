"""Finite preorders, monotone maps, squares, and the enumeration engine.

Elements are always the indices ``0..n-1``.  The relation is stored as
bitset rows: ``up[i]`` is the mask of ``{j : i <= j}``, which makes
reflexive-transitive closure, down-closure and pointwise comparison
word-parallel.  Labels are presentation-only; equality and hashing ignore
them.  All values are immutable after construction and every operation is
a pure function, so shared values are safe to use concurrently.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import (
    IndexOutOfRange,
    InvariantViolation,
    ShapeMismatch,
    SizeLimitExceeded,
)

DEFAULT_MAX_CARRIER = 4096
DEFAULT_ENUM_BOUND = 5


def _bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinPreorder:
    """A finite set with a reflexive-transitive relation.

    Doubles as a finite Alexandrov space: the opens are exactly the
    up-closed subsets of the relation.
    """

    __slots__ = ("n", "up", "down", "labels", "_hash")

    def __init__(self, n, up, labels=None):
        up = tuple(up)
        if n < 0 or len(up) != n:
            raise InvariantViolation(f"need {n} relation rows, got {len(up)}")
        full = (1 << n) - 1
        for i, row in enumerate(up):
            if row & ~full:
                raise InvariantViolation(f"row {i} mentions elements >= {n}")
            if not (row >> i) & 1:
                raise InvariantViolation(f"relation is not reflexive at {i}")
        for i in range(n):
            row = up[i]
            for j in _bits(row):
                if up[j] & ~row:
                    raise InvariantViolation(
                        f"relation is not transitive through ({i},{j})"
                    )
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise InvariantViolation("labels must be n distinct strings")
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        self.n = n
        self.up = up
        self.down = tuple(down)
        self.labels = labels
        self._hash = hash((n, up))

    def leq(self, i, j):
        return bool((self.up[i] >> j) & 1)

    def equiv(self, i, j):
        return bool((self.up[i] >> j) & (self.up[j] >> i) & 1)

    def class_mask(self, i):
        """Bitmask of the equivalence class of ``i``."""
        return self.up[i] & self.down[i]

    def classes(self):
        """Equivalence-class masks, ordered by least member."""
        seen = 0
        out = []
        for i in range(self.n):
            if not (seen >> i) & 1:
                c = self.class_mask(i)
                out.append(c)
                seen |= c
        return out

    @property
    def is_poset(self):
        return all(self.class_mask(i) == 1 << i for i in range(self.n))

    def label(self, i):
        if self.labels is not None:
            return self.labels[i]
        return f"x{i}"

    def pairs(self):
        """All non-reflexive related pairs (i, j) with i <= j."""
        return [(i, j) for i in range(self.n) for j in _bits(self.up[i]) if i != j]

    def restrict(self, mask):
        """Induced sub-preorder on the elements of ``mask`` (ascending)."""
        elems = list(_bits(mask))
        pos = {e: p for p, e in enumerate(elems)}
        rows = []
        for e in elems:
            r = 0
            for j in _bits(self.up[e] & mask):
                r |= 1 << pos[j]
            rows.append(r)
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[e] for e in elems)
        return FinPreorder(len(elems), rows, labels)

    def quotient(self):
        """Poset reflection: (quotient poset, class masks)."""
        cls = self.classes()
        reps = [next(_bits(c)) for c in cls]
        k = len(cls)
        rows = []
        for a in range(k):
            r = 0
            for b in range(k):
                if self.leq(reps[a], reps[b]):
                    r |= 1 << b
            rows.append(r)
        return FinPreorder(k, rows), cls

    def __eq__(self, other):
        return (
            isinstance(other, FinPreorder)
            and self.n == other.n
            and self.up == other.up
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinPreorder({self.n}, {self.pairs()!r})"


class MonotoneMap:
    """An order-preserving function between two finite preorders."""

    __slots__ = ("src", "tgt", "assign", "_hash")

    def __init__(self, src, tgt, assign):
        assign = tuple(assign)
        if len(assign) != src.n:
            raise InvariantViolation(
                f"assignment has {len(assign)} entries for {src.n} elements"
            )
        for i, v in enumerate(assign):
            if not 0 <= v < tgt.n:
                raise IndexOutOfRange(f"assign[{i}]={v} outside 0..{tgt.n - 1}")
        for i in range(src.n):
            for j in _bits(src.up[i]):
                if not (tgt.up[assign[i]] >> assign[j]) & 1:
                    raise InvariantViolation(
                        f"not monotone: {i}<={j} but images are unrelated"
                    )
        self.src = src
        self.tgt = tgt
        self.assign = assign
        self._hash = hash((src, tgt, assign))

    def __call__(self, i):
        return self.assign[i]

    def image_mask(self, mask):
        """Push a source bitmask forward along the map."""
        out = 0
        for i in _bits(mask):
            out |= 1 << self.assign[i]
        return out

    def is_injective(self):
        return len(set(self.assign)) == self.src.n

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneMap)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.assign == other.assign
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MonotoneMap({list(self.assign)})"


def identity(X):
    return MonotoneMap(X, X, range(X.n))


def compose(f, g):
    """The composite g∘f (f first); domains must match."""
    if f.tgt != g.src:
        raise ShapeMismatch("compose: f.tgt differs from g.src")
    return MonotoneMap(f.src, g.tgt, (g.assign[v] for v in f.assign))


def constant(X, Y, y):
    return MonotoneMap(X, Y, [y] * X.n)


def two_cell(f, g):
    """Whether the 2-cell f => g exists, i.e. f <= g pointwise."""
    if f.src != g.src or f.tgt != g.tgt:
        raise ShapeMismatch("two_cell: maps are not parallel")
    return all((f.tgt.up[a] >> b) & 1 for a, b in zip(f.assign, g.assign))


def maps_equivalent(f, g):
    """Pointwise equivalence of parallel maps (2-cells both ways)."""
    return two_cell(f, g) and two_cell(g, f)


class TwoCell:
    """An inequality lower <= upper between parallel maps."""

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper):
        if not two_cell(lower, upper):
            raise InvariantViolation("no 2-cell: lower is not pointwise below upper")
        self.lower = lower
        self.upper = upper


class Square:
    """A commutative square (h, k) : j -> g in the arrow category."""

    __slots__ = ("j", "g", "h", "k")

    def __init__(self, j, g, h, k):
        if h.src != j.src or h.tgt != g.src or k.src != j.tgt or k.tgt != g.tgt:
            raise ShapeMismatch("square sides do not line up")
        if compose(h, g).assign != compose(j, k).assign:
            raise InvariantViolation("square does not commute")
        self.j = j
        self.g = g
        self.h = h
        self.k = k

    def __eq__(self, other):
        return (
            isinstance(other, Square)
            and self.j == other.j
            and self.g == other.g
            and self.h == other.h
            and self.k == other.k
        )

    def __hash__(self):
        return hash((self.j, self.g, self.h, self.k))

    def __repr__(self):
        return f"Square(h={list(self.h.assign)}, k={list(self.k.assign)})"


class DownSet:
    """A down-closed subset of a finite preorder."""

    __slots__ = ("carrier", "mask")

    def __init__(self, carrier, mask):
        if mask & ~((1 << carrier.n) - 1):
            raise IndexOutOfRange("down-set mentions elements outside the carrier")
        if not is_down_closed(carrier, mask):
            raise InvariantViolation("subset is not down-closed")
        self.carrier = carrier
        self.mask = mask

    @property
    def members(self):
        return tuple(bool((self.mask >> i) & 1) for i in range(self.carrier.n))

    def __eq__(self, other):
        return (
            isinstance(other, DownSet)
            and self.carrier == other.carrier
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.carrier, self.mask))

    def __repr__(self):
        return f"DownSet({sorted(_bits(self.mask))})"


# ---------------------------------------------------------------------------
# construction


def closure(n, pairs):
    """Smallest reflexive-transitive relation on 0..n-1 containing ``pairs``."""
    rows = [1 << i for i in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"pair ({a},{b}) outside 0..{n - 1}")
        rows[a] |= 1 << b
    for k in range(n):
        rk = rows[k]
        for i in range(n):
            if (rows[i] >> k) & 1:
                rows[i] |= rk
    return FinPreorder(n, rows)


def chain(n):
    return FinPreorder(n, (((1 << n) - 1) >> i << i for i in range(n)))


def antichain(n):
    return FinPreorder(n, (1 << i for i in range(n)))


def indiscrete(n):
    """n pairwise-equivalent elements (the codiscrete preorder)."""
    return FinPreorder(n, ((1 << n) - 1 for _ in range(n)))


def diamond():
    """Four-element lattice: bottom, two incomparable middles, top."""
    return closure(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def vee():
    """Two incomparable points under a common top (no bottom)."""
    return closure(3, [(0, 2), (1, 2)])


# ---------------------------------------------------------------------------
# predicates


def is_poset(X):
    """Antisymmetry of the relation."""
    return X.is_poset


def is_full(f):
    """f(a) <= f(a') implies a <= a' (order is reflected, not just preserved)."""
    X, Y = f.src, f.tgt
    for a in range(X.n):
        fa = f.assign[a]
        for b in range(X.n):
            if (Y.up[fa] >> f.assign[b]) & 1 and not (X.up[a] >> b) & 1:
                return False
    return True


def is_order_embedding(f):
    """Full and injective on equivalence classes.

    Class-injectivity is already forced by fullness; it is checked anyway
    so the predicate reads as its definition.
    """
    if not is_full(f):
        return False
    X, Y = f.src, f.tgt
    for a in range(X.n):
        for b in range(X.n):
            if Y.equiv(f.assign[a], f.assign[b]) and not X.equiv(a, b):
                return False
    return True


def sup_mask(X, mask):
    """A least upper bound of the subset ``mask`` up to equivalence.

    Returns the least index among equivalent candidates, or None when the
    subset has no least upper bound.
    """
    ub = (1 << X.n) - 1
    for i in _bits(mask):
        ub &= X.up[i]
    for u in _bits(ub):
        if not (ub & ~X.up[u]):
            return u
    return None


def inf_mask(X, mask):
    """Dual of :func:`sup_mask`: a greatest lower bound up to equivalence."""
    lb = (1 << X.n) - 1
    for i in _bits(mask):
        lb &= X.down[i]
    for u in _bits(lb):
        if not (lb & ~X.down[u]):
            return u
    return None


@lru_cache(maxsize=None)
def _sup_table(X):
    """sup_mask for every subset; only sensible for small carriers."""
    return tuple(sup_mask(X, m) for m in range(1 << X.n))


def is_complete_lattice(X):
    """Every subset (including the empty one) has a sup up to equivalence.

    For finite carriers this reduces to a bottom plus binary sups.
    """
    if X.n == 0:
        return False
    if sup_mask(X, 0) is None:
        return False
    for i in range(X.n):
        for j in range(i + 1, X.n):
            if sup_mask(X, (1 << i) | (1 << j)) is None:
                return False
    return True


def is_complete_lattice_strict(X):
    """The poset variant: sups exist and their witnesses are unique."""
    return X.is_poset and is_complete_lattice(X)


def is_down_closed(X, mask):
    for j in _bits(mask):
        if X.down[j] & ~mask:
            return False
    return True


def down_closure(X, mask):
    out = 0
    for j in _bits(mask):
        out |= X.down[j]
    return out


def up_closure(X, mask):
    out = 0
    for j in _bits(mask):
        out |= X.up[j]
    return out


def down_set_masks(X, max_carrier=DEFAULT_MAX_CARRIER):
    """All down-closed subsets of X as bitmasks, ascending.

    Enumerates order ideals of the poset reflection and expands classes,
    so the cost is O(result * classes) rather than 2^n.
    """
    Q, cls = X.quotient()
    k = Q.n
    # process classes in a linear extension of the quotient
    topo = sorted(range(k), key=lambda c: (Q.down[c].bit_count(), c))
    ideals = [0]
    for c in topo:
        below = Q.down[c] & ~(1 << c)
        grown = [m | (1 << c) for m in ideals if not (below & ~m)]
        ideals += grown
        if len(ideals) > max_carrier:
            raise SizeLimitExceeded(
                f"more than {max_carrier} down-sets on a {X.n}-element preorder"
            )
    out = []
    for m in ideals:
        mask = 0
        for c in _bits(m):
            mask |= cls[c]
        out.append(mask)
    out.sort()
    return tuple(out)


# ---------------------------------------------------------------------------
# hom objects


def monotone_assignments(X, Y, max_carrier=DEFAULT_MAX_CARRIER):
    """All monotone assignment vectors X -> Y, lexicographic.

    The raw candidate space |Y|^|X| is bounded by ``max_carrier`` before
    enumeration starts.
    """
    if X.n == 0:
        return [()]
    if Y.n == 0:
        return []
    if Y.n ** X.n > max_carrier:
        raise SizeLimitExceeded(
            f"{Y.n}^{X.n} candidate maps exceed the bound {max_carrier}"
        )
    n = X.n
    full = (1 << Y.n) - 1
    out = []
    assign = [0] * n

    def rec(i):
        if i == n:
            out.append(tuple(assign))
            return
        allowed = full
        for j in range(i):
            if (X.up[j] >> i) & 1:
                allowed &= Y.up[assign[j]]
            if (X.up[i] >> j) & 1:
                allowed &= Y.down[assign[j]]
            if not allowed:
                return
        for v in _bits(allowed):
            assign[i] = v
            rec(i + 1)

    rec(0)
    return out


def hom_maps(X, Y, max_carrier=DEFAULT_MAX_CARRIER):
    return [MonotoneMap(X, Y, a) for a in monotone_assignments(X, Y, max_carrier)]


def _pointwise_leq(Y, a, b):
    return all((Y.up[x] >> y) & 1 for x, y in zip(a, b))


def hom_poset(X, Y, max_carrier=DEFAULT_MAX_CARRIER):
    """The preorder of all monotone maps X -> Y under the pointwise order.

    Element i is ``monotone_assignments(X, Y)[i]``; the enumeration order
    (lexicographic on assignment vectors) is the canonical one.
    """
    assigns = monotone_assignments(X, Y, max_carrier)
    m = len(assigns)
    rows = []
    for a in assigns:
        r = 0
        for jdx, b in enumerate(assigns):
            if _pointwise_leq(Y, a, b):
                r |= 1 << jdx
        rows.append(r)
    return FinPreorder(m, rows)


def squares(j, g, max_carrier=DEFAULT_MAX_CARRIER):
    """All commuting squares (h, k) : j -> g, lexicographic on (h, k)."""
    hs = monotone_assignments(j.src, g.src, max_carrier)
    ks = monotone_assignments(j.tgt, g.tgt, max_carrier)
    if len(hs) * len(ks) > 64 * max_carrier:
        raise SizeLimitExceeded("square search space exceeds the bound")
    out = []
    for h in hs:
        gh = tuple(g.assign[v] for v in h)
        for k in ks:
            if gh == tuple(k[v] for v in j.assign):
                out.append(
                    Square(
                        j,
                        g,
                        MonotoneMap(j.src, g.src, h),
                        MonotoneMap(j.tgt, g.tgt, k),
                    )
                )
    if len(out) > max_carrier:
        raise SizeLimitExceeded("more commuting squares than the bound allows")
    return out


def sq_hom_poset(j, g, max_carrier=DEFAULT_MAX_CARRIER):
    """The preorder of commuting squares j -> g, ordered componentwise."""
    sqs = squares(j, g, max_carrier)
    rows = []
    for s in sqs:
        r = 0
        for idx, t in enumerate(sqs):
            if _pointwise_leq(g.src, s.h.assign, t.h.assign) and _pointwise_leq(
                g.tgt, s.k.assign, t.k.assign
            ):
                r |= 1 << idx
        rows.append(r)
    return FinPreorder(len(sqs), rows)


# ---------------------------------------------------------------------------
# enumeration and isomorphism


@lru_cache(maxsize=None)
def _refinement(X):
    """Iterated degree refinement; an isomorphism-invariant color per element."""
    n = X.n
    inv = [(X.up[i].bit_count(), X.down[i].bit_count()) for i in range(n)]
    for _ in range(2):
        nxt = []
        for i in range(n):
            ups = tuple(sorted(inv[j] for j in _bits(X.up[i])))
            dns = tuple(sorted(inv[j] for j in _bits(X.down[i])))
            nxt.append((inv[i], ups, dns))
        codes = {v: c for c, v in enumerate(sorted(set(nxt)))}
        inv = [codes[v] for v in nxt]
    return tuple(inv)


_PERM_LIMIT = 40320  # 8!


@lru_cache(maxsize=None)
def _canonical(X):
    """Minimal relabeling of X compatible with the refinement classes.

    Returns (canonical rows, all relabelings old->new achieving them).
    Any isomorphism preserves refinement colors, so the minimum over
    color-respecting permutations is a true canonical form.
    """
    n = X.n
    inv = _refinement(X)
    by_color = {}
    for i in range(n):
        by_color.setdefault(inv[i], []).append(i)
    blocks = [tuple(by_color[c]) for c in sorted(by_color)]
    total = 1
    for b in blocks:
        for t in range(2, len(b) + 1):
            total *= t
        if total > _PERM_LIMIT:
            raise SizeLimitExceeded("too many candidate relabelings")
    best_rows = None
    best_perms = []
    for combo in itertools.product(*(itertools.permutations(b) for b in blocks)):
        seq = [e for block in combo for e in block]  # new index -> old element
        new_of_old = [0] * n
        for new, old in enumerate(seq):
            new_of_old[old] = new
        rows = []
        for new in range(n):
            r = 0
            for j in _bits(X.up[seq[new]]):
                r |= 1 << new_of_old[j]
            rows.append(r)
        rows = tuple(rows)
        if best_rows is None or rows < best_rows:
            best_rows = rows
            best_perms = [tuple(new_of_old)]
        elif rows == best_rows:
            best_perms.append(tuple(new_of_old))
    return best_rows, tuple(best_perms)


def canonical_key(X):
    return (X.n, _canonical(X)[0])


def canonical_form(X):
    return FinPreorder(X.n, _canonical(X)[0])


def is_isomorphic(X, Y):
    """Brute force over bijections, pruned by refinement colors."""
    if X.n != Y.n:
        return False
    n = X.n
    inv_x, inv_y = _refinement(X), _refinement(Y)
    if sorted(inv_x) != sorted(inv_y):
        return False
    cands = [[j for j in range(n) if inv_y[j] == inv_x[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(cands[i]))
    assign = {}

    def rec(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in cands[i]:
            if j in assign.values():
                continue
            ok = True
            for i2, j2 in assign.items():
                if X.leq(i, i2) != Y.leq(j, j2) or X.leq(i2, i) != Y.leq(j2, j):
                    ok = False
                    break
            if ok:
                assign[i] = j
                if rec(pos + 1):
                    return True
                del assign[i]
        return False

    return rec(0)


def arrow_canonical_key(f):
    """Canonical key of a map up to separate relabeling of src and tgt."""
    kx, perms_x = _canonical(f.src)
    ky, perms_y = _canonical(f.tgt)
    best = None
    for px in perms_x:
        for py in perms_y:
            relabeled = [0] * f.src.n
            for old, new in enumerate(px):
                relabeled[new] = py[f.assign[old]]
            t = tuple(relabeled)
            if best is None or t < best:
                best = t
    return (f.src.n, kx, f.tgt.n, ky, best)


def _labeled_preorders(n, posets_only):
    if n == 0:
        yield FinPreorder(0, ())
        return
    row_choices = []
    for i in range(n):
        rest = [1 << j for j in range(n) if j != i]
        opts = []
        for picks in itertools.product([0, 1], repeat=n - 1):
            row = 1 << i
            for bit, on in zip(rest, picks):
                if on:
                    row |= bit
            opts.append(row)
        opts.sort()
        row_choices.append(opts)
    for rows in itertools.product(*row_choices):
        ok = True
        for i in range(n):
            row = rows[i]
            m = row
            while m:
                j = (m & -m).bit_length() - 1
                if rows[j] & ~row:
                    ok = False
                    break
                m &= m - 1
            if not ok:
                break
        if not ok:
            continue
        if posets_only and any(
            (rows[i] >> j) & (rows[j] >> i) & 1
            for i in range(n)
            for j in range(i + 1, n)
        ):
            continue
        yield FinPreorder(n, rows)


@lru_cache(maxsize=None)
def enumerate_preorders(n, up_to_iso=True, posets_only=False, bound=DEFAULT_ENUM_BOUND):
    """All preorders on n elements, optionally one per isomorphism class.

    Output order is deterministic: ascending canonical key.
    """
    if n > bound:
        raise SizeLimitExceeded(f"enumeration bound is {bound}, got n={n}")
    found = list(_labeled_preorders(n, posets_only))
    if not up_to_iso:
        found.sort(key=lambda p: p.up)
        return tuple(found)
    reps = {}
    for p in found:
        key = canonical_key(p)
        if key not in reps:
            reps[key] = canonical_form(p)
    return tuple(reps[k] for k in sorted(reps))
