from lofs.downsets import (
    algebra_structure,
    apply_to_map,
    check_lax_idempotent_P,
    downsets,
    mult,
    unit,
)
from lofs.order import (
    antichain,
    chain,
    compose,
    diamond,
    enumerate_preorders,
    identity,
    indiscrete,
    is_complete_lattice,
    is_full,
    is_isomorphic,
    sup_mask,
)


def reps(max_size):
    return [p for n in range(max_size + 1) for p in enumerate_preorders(n)]


class TestCompletion:
    def test_chain(self):
        assert is_isomorphic(downsets(chain(2)).carrier, chain(3))

    def test_antichain(self):
        assert is_isomorphic(downsets(antichain(2)).carrier, diamond())

    def test_empty(self):
        assert is_isomorphic(downsets(chain(0)).carrier, chain(1))

    def test_always_complete(self):
        for X in reps(4):
            assert is_complete_lattice(downsets(X).carrier)


class TestUnit:
    def test_principal_downsets(self):
        dl = downsets(chain(2))
        u = unit(chain(2), dl)
        assert dl.masks[u(1)] == 0b11
        dl = downsets(antichain(2))
        u = unit(antichain(2), dl)
        assert dl.masks[u(0)] == 0b01

    def test_unit_full_up_to_size_5(self):
        for X in reps(5):
            assert is_full(unit(X))

    def test_functor_of_unit_full(self):
        for X in reps(3):
            dl = downsets(X)
            u = unit(X, dl)
            assert is_full(apply_to_map(u, dl, downsets(dl.carrier)))


class TestMonadLaws:
    def test_examples(self):
        dl = downsets(chain(2))
        m = mult(chain(2))
        dl2 = downsets(dl.carrier)
        # empty family of down-sets unions to the empty down-set
        assert dl.masks[m(dl2.index(0))] == 0

    def test_laws_up_to_size_3(self):
        for X in reps(3):
            dl = downsets(X)
            dl2 = downsets(dl.carrier)
            u = unit(X, dl)
            m = mult(X)
            assert compose(unit(dl.carrier, dl2), m) == identity(dl.carrier)
            assert compose(apply_to_map(u, dl, dl2), m) == identity(dl.carrier)
            dl3 = downsets(dl2.carrier)
            assert compose(apply_to_map(m, dl3, dl2), m) == compose(
                mult(dl.carrier), m
            )


class TestAlgebras:
    def test_examples(self):
        alpha = algebra_structure(diamond())
        dl = downsets(diamond())
        assert alpha is not None
        for i, mask in enumerate(dl.masks):
            assert alpha(i) == sup_mask(diamond(), mask)
        assert algebra_structure(antichain(2)) is None
        assert algebra_structure(chain(1)) is not None

    def test_exists_iff_complete_up_to_size_4(self):
        for X in reps(4):
            assert (algebra_structure(X) is not None) == is_complete_lattice(X)

    def test_laws_up_to_equivalence(self):
        for X in [diamond(), chain(3), indiscrete(2)]:
            alpha = algebra_structure(X)
            dl = downsets(X)
            u = unit(X, dl)
            for x in range(X.n):
                assert X.equiv(alpha(u(x)), x)
            dl2 = downsets(dl.carrier)
            lhs = compose(apply_to_map(alpha, dl2, dl), alpha)
            rhs = compose(mult(X), alpha)
            for i in range(dl2.carrier.n):
                assert X.equiv(lhs(i), rhs(i))


class TestLaxIdempotency:
    def test_examples(self):
        assert check_lax_idempotent_P(antichain(2))
        assert check_lax_idempotent_P(chain(3))
        assert check_lax_idempotent_P(chain(0))

    def test_all_up_to_size_4(self):
        for X in reps(4):
            assert check_lax_idempotent_P(X)
