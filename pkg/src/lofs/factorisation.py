"""The upper-bound factorisation of a monotone map and its (co)monad.

A map ``f : A -> B`` factors through the preorder of pairs ``(φ, b)``
where ``φ`` is a down-set of ``A`` and ``b`` an upper bound of ``f[φ]``,
ordered componentwise.  The left part ``a ↦ (↓a, f(a))`` is always full;
the right part is the second projection.  Coalgebras for the left part
are exactly the full maps, algebras for the right part over the point
are exactly the complete lattices, and the canonical diagonal built from
a coalgebra and an algebra is the least filler of its square.

Witness equations are stated up to pointwise equivalence; on posets they
hold on the nose.
"""

from __future__ import annotations

from .adjunction import find_left_adjoint, find_right_adjoint
from .errors import AdjointMissing, InvariantViolation, ShapeMismatch, SizeLimitExceeded
from .order import (
    DEFAULT_MAX_CARRIER,
    FinPreorder,
    MonotoneMap,
    _bits,
    chain,
    compose,
    down_closure,
    down_set_masks,
    identity,
    is_full,
    maps_equivalent,
)
from .downsets import downsets


class FactorisationData:
    """The factorisation triple of one map.

    ``pairs[i]`` is the pair (down-set mask over dom f, codomain index)
    that carrier element ``i`` stands for, listed ascending.
    """

    __slots__ = ("f", "K", "lam", "rho", "pairs", "_index")

    def __init__(self, f, K, lam, rho, pairs):
        self.f = f
        self.K = K
        self.lam = lam
        self.rho = rho
        self.pairs = pairs
        self._index = {p: i for i, p in enumerate(pairs)}

    def index(self, mask, b):
        return self._index[(mask, b)]

    def __repr__(self):
        return f"FactorisationData(|K|={self.K.n})"


class CoalgebraWitness:
    """A section s of the right part with s ∘ f equal to the left part."""

    __slots__ = ("fact", "s")

    def __init__(self, fact, s):
        if compose(s, fact.rho).assign != tuple(range(fact.f.tgt.n)):
            raise InvariantViolation("s is not a section of the right part")
        if compose(fact.f, s).assign != fact.lam.assign:
            raise InvariantViolation("s does not extend the left part")
        self.fact = fact
        self.s = s

    @property
    def f(self):
        return self.fact.f


class AlgebraWitness:
    """A retraction p of the left part with g ∘ p equal to the right part.

    Equations hold up to pointwise equivalence (strictly on posets); the
    multiplication law is verified separately where carriers permit.
    """

    __slots__ = ("fact", "p")

    def __init__(self, fact, p):
        g = fact.f
        if not maps_equivalent(compose(fact.lam, p), identity(g.src)):
            raise InvariantViolation("p is not a retraction of the left part")
        if not maps_equivalent(compose(p, g), fact.rho):
            raise InvariantViolation("g ∘ p differs from the right part")
        self.fact = fact
        self.p = p

    @property
    def g(self):
        return self.fact.f


def _upper_bound_table(f):
    """pre[b] = mask of {a : f(a) <= b}; membership is mask ⊆ pre[b]."""
    A, B = f.src, f.tgt
    pre = []
    for b in range(B.n):
        m = 0
        for a in range(A.n):
            if (B.up[f.assign[a]] >> b) & 1:
                m |= 1 << a
        pre.append(m)
    return pre


def factorise(f, max_carrier=DEFAULT_MAX_CARRIER):
    """Factor f as (right part) ∘ (left part) through the pair preorder."""
    A, B = f.src, f.tgt
    masks = down_set_masks(A, max_carrier)
    pre = _upper_bound_table(f)
    pairs = [(m, b) for m in masks for b in range(B.n) if not (m & ~pre[b])]
    if len(pairs) > max_carrier:
        raise SizeLimitExceeded("factorisation carrier exceeds the bound")
    rows = []
    for m, b in pairs:
        r = 0
        up_b = B.up[b]
        for idx, (m2, b2) in enumerate(pairs):
            if not (m & ~m2) and (up_b >> b2) & 1:
                r |= 1 << idx
        rows.append(r)
    K = FinPreorder(len(pairs), rows)
    index = {p: i for i, p in enumerate(pairs)}
    lam = MonotoneMap(A, K, [index[(A.down[a], f.assign[a])] for a in range(A.n)])
    rho = MonotoneMap(K, B, [b for _, b in pairs])
    return FactorisationData(f, K, lam, rho, tuple(pairs))


def _k_action(source, target, h, k):
    """Carrier map (φ, b) ↦ (down-closure of h[φ], k(b)).

    Lands in the target carrier whenever the square commutes up to
    pointwise equivalence.
    """
    assign = []
    for m, b in source.pairs:
        image = down_closure(h.tgt, h.image_mask(m))
        try:
            assign.append(target.index(image, k.assign[b]))
        except KeyError:
            raise InvariantViolation("functor action leaves the carrier") from None
    return MonotoneMap(source.K, target.K, assign)


def k_on_square(sq, source=None, target=None, max_carrier=DEFAULT_MAX_CARRIER):
    """Functor action on a commuting square (h, k) : f -> g.

    Sends (φ, b) to (down-closure of h[φ], k(b)); natural on both sides
    and functorial in the square.
    """
    source = source or factorise(sq.j, max_carrier)
    target = target or factorise(sq.g, max_carrier)
    if source.f != sq.j or target.f != sq.g:
        raise ShapeMismatch("square does not match the given factorisations")
    return _k_action(source, target, sq.h, sq.k)


def mult(f, max_carrier=DEFAULT_MAX_CARRIER):
    """The multiplication component on f: K(right part) -> Kf.

    Defined by the left adjoint of the unit component of the right-part
    factorisation, which exists by lax idempotency.  The closed form
    (union of all first components, same bound) is asserted equivalent to
    the computed adjoint and returned, being the representative that also
    satisfies the naturality square on the nose.
    """
    Ff = factorise(f, max_carrier)
    Frho = factorise(Ff.rho, max_carrier)
    adjoint = find_left_adjoint(Frho.lam)
    if adjoint is None:
        raise AdjointMissing("multiplication adjoint missing: this is a bug")
    assign = []
    for i, (m2, b) in enumerate(Frho.pairs):
        union = 0
        for kidx in _bits(m2):
            union |= Ff.pairs[kidx][0]
        target = Ff.index(union, b)
        if not Ff.K.equiv(adjoint.assign[i], target):
            raise AdjointMissing("multiplication differs from its closed form")
        assign.append(target)
    return MonotoneMap(Frho.K, Ff.K, assign)


def comult(f, max_carrier=DEFAULT_MAX_CARRIER):
    """The comultiplication component on f: Kf -> K(left part).

    Defined dually by the right adjoint of the counit component of the
    left-part factorisation; the closed form (φ, b) ↦ (φ, (φ, b)) is
    asserted equivalent to it and returned.
    """
    Ff = factorise(f, max_carrier)
    Flam = factorise(Ff.lam, max_carrier)
    adjoint = find_right_adjoint(Flam.rho)
    if adjoint is None:
        raise AdjointMissing("comultiplication adjoint missing: this is a bug")
    assign = []
    for i, (m, b) in enumerate(Ff.pairs):
        target = Flam.index(m, i)
        if not Flam.K.equiv(adjoint.assign[i], target):
            raise AdjointMissing("comultiplication differs from its closed form")
        assign.append(target)
    return MonotoneMap(Ff.K, Flam.K, assign)


def coalgebra_structure(f, max_carrier=DEFAULT_MAX_CARRIER):
    """The coalgebra witness on f, or None.

    A witness forces fullness (apply the section to a pair with related
    images), and for full maps the section b ↦ ({a : f(a) <= b}, b) is
    one, so existence reduces to :func:`lofs.order.is_full`.
    """
    if not is_full(f):
        return None
    fact = factorise(f, max_carrier)
    pre = _upper_bound_table(f)
    s = MonotoneMap(
        f.tgt, fact.K, [fact.index(pre[b], b) for b in range(f.tgt.n)]
    )
    return CoalgebraWitness(fact, s)


def algebra_structure(g, max_carrier=DEFAULT_MAX_CARRIER, check_multiplication=None):
    """The algebra witness on g, or None.

    The structure map, when it exists, is the left adjoint of the left
    part (algebra structure is adjoint to the unit for a lax idempotent
    monad), so the adjoint search decides existence; the candidate is then
    validated against the witness equations.  The multiplication law is
    checked elementwise whenever the double factorisation fits the
    carrier bound, or always when ``check_multiplication`` is True.
    """
    fact = factorise(g, max_carrier)
    p = find_left_adjoint(fact.lam)
    if p is None:
        return None
    if not maps_equivalent(compose(p, g), fact.rho):
        return None
    witness = AlgebraWitness(fact, p)
    if check_multiplication is None:
        try:
            _check_multiplication_law(witness, max_carrier)
        except SizeLimitExceeded:
            pass
    elif check_multiplication:
        _check_multiplication_law(witness, max_carrier)
    return witness


def _check_multiplication_law(witness, max_carrier=DEFAULT_MAX_CARRIER):
    """p ∘ (multiplication) = p ∘ K(p, id) elementwise, up to equivalence.

    The square (p, id) only commutes up to equivalence on preorders, so
    the functor action is applied directly.
    """
    fact = witness.fact
    g = fact.f
    pi = mult(g, max_carrier)
    Frho = factorise(fact.rho, max_carrier)
    kp = _k_action(Frho, fact, witness.p, identity(g.tgt))
    lhs = compose(pi, witness.p)
    rhs = compose(kp, witness.p)
    if not maps_equivalent(lhs, rhs):
        raise InvariantViolation("multiplication law fails for the algebra")


def canonical_diag(sq, s, p):
    """The diagonal p ∘ K(h, k) ∘ s for a square from a coalgebra to an algebra.

    Fills the square (up to pointwise equivalence over genuine preorders)
    and is least: every filler sits pointwise above it.
    """
    if s.fact.f != sq.j or p.fact.f != sq.g:
        raise ShapeMismatch("witnesses do not match the square")
    middle = k_on_square(sq, source=s.fact, target=p.fact)
    return compose(compose(s.s, middle), p.p)


def fibrant_replacement(A, max_carrier=DEFAULT_MAX_CARRIER):
    """Factor A -> point and exhibit the middle object as the down-set lattice.

    Returns (carrier, left part, iso) where iso is an order-isomorphism
    onto ``downsets(A).carrier`` carrying the left part to the principal
    down-set unit.
    """
    point = chain(1)
    bang = MonotoneMap(A, point, [0] * A.n)
    fact = factorise(bang, max_carrier)
    dl = downsets(A, max_carrier)
    iso = MonotoneMap(fact.K, dl.carrier, [dl.index(m) for m, _ in fact.pairs])
    return fact.K, fact.lam, iso
