import pytest

from lofs.errors import ShapeMismatch
from lofs.kan import (
    all_embeddings,
    chain_stage_report,
    classify_injectives,
    kan_injective,
    lan_extension,
)
from lofs.lifting import GeneratorFamily, kz_orthogonal
from lofs.order import (
    MonotoneMap,
    antichain,
    chain,
    diamond,
    enumerate_preorders,
    hom_maps,
    identity,
    is_complete_lattice,
    monotone_assignments,
    two_cell,
)

ONE = chain(1)
DIA = diamond()
J_EMB = MonotoneMap(antichain(2), DIA, [1, 2])


class TestLanExtension:
    def test_along_identity(self):
        f = MonotoneMap(antichain(2), chain(2), [0, 1])
        w = lan_extension(identity(antichain(2)), f)
        assert w.ext == f

    def test_into_chain(self):
        f = MonotoneMap(antichain(2), chain(2), [0, 1])
        w = lan_extension(J_EMB, f)
        assert w is not None
        assert w.ext.assign[0] == 0 and w.ext.assign[3] == 1

    def test_no_extension_into_antichain(self):
        f = identity(antichain(2))
        assert lan_extension(J_EMB, f) is None

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            lan_extension(J_EMB, MonotoneMap(chain(2), chain(2), [0, 1]))

    def test_fast_path_matches_bruteforce(self):
        pool = [p for n in range(3) for p in enumerate_preorders(n)]
        for A in pool:
            for X in pool[:8]:
                for Y in pool[:8]:
                    for ja in monotone_assignments(X, Y):
                        j = MonotoneMap(X, Y, ja)
                        for f in hom_maps(X, A):
                            fast = lan_extension(j, f)
                            brute = lan_extension(j, f, brute_force=True)
                            assert (fast is None) == (brute is None)
                            if fast is not None:
                                assert all(
                                    A.equiv(x, y)
                                    for x, y in zip(fast.ext.assign, brute.ext.assign)
                                )

    def test_minimum_unique_up_to_equivalence(self):
        j = J_EMB
        for f in hom_maps(antichain(2), DIA):
            w = lan_extension(j, f)
            if w is None:
                continue
            candidates = [
                g
                for g in hom_maps(DIA, DIA)
                if all(
                    DIA.leq(f.assign[x], g.assign[j.assign[x]]) for x in range(2)
                )
            ]
            minima = [
                g for g in candidates if all(two_cell(g, h) for h in candidates)
            ]
            for m in minima:
                assert all(DIA.equiv(a, b) for a, b in zip(m.assign, w.ext.assign))


class TestKanInjectivity:
    def test_lattice_is_injective(self):
        assert kan_injective(DIA, all_embeddings(3))

    def test_antichain_is_not(self):
        assert not kan_injective(antichain(2), all_embeddings(3))

    def test_identity_generators_accept_everything(self):
        fam = GeneratorFamily([identity(antichain(2)), identity(chain(3))])
        for n in range(4):
            for A in enumerate_preorders(n):
                assert kan_injective(A, fam)

    def test_agrees_with_kz_route(self):
        pool = [p for n in range(4) for p in enumerate_preorders(n)]
        generators = all_embeddings(2)
        for A in pool:
            bang = MonotoneMap(A, ONE, [0] * A.n)
            for j in generators:
                assert kan_injective(A, [j]) == (kz_orthogonal(j, bang) is not None)


class TestClassification:
    def test_size_two_rows(self):
        rows = classify_injectives(2, generator_size=2)
        by_witness = {(A.n, A.up): (inj, comp) for A, inj, comp in rows}
        assert all(inj == comp for inj, comp in by_witness.values())
        # of the three two-element classes only the chain and the
        # two-element equivalence are complete
        two = [(inj, comp) for (n, _), (inj, comp) in by_witness.items() if n == 2]
        assert sorted(two) == [(False, False), (True, True), (True, True)]

    def test_diamond_and_antichain_rows(self):
        rows = classify_injectives(4, generator_size=3)
        for A, inj, comp in rows:
            assert inj == comp
            if A == DIA:
                assert inj
            if A == antichain(2):
                assert not inj


class TestChainStages:
    def test_report(self):
        ok, detail = chain_stage_report(6)
        assert ok
        assert "not finitely representable" in detail

    def test_stages_are_lattices(self):
        for m in range(7):
            assert is_complete_lattice(chain(m + 1))
