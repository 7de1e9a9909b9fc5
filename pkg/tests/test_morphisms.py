import numpy as np
import pytest
from hypothesis import given

import oracles as O
from conftest import fsss, lattices, seeds
from tenselat.errors import CarrierMismatch, CarrierTooLarge, NotJoinPreserving
from tenselat.morphisms import (
    FSupLattice,
    JoinHom,
    enumerate_join_homs,
    enumerate_join_homs_bruteforce,
    identity,
    is_f_homomorphism,
    is_in_E_leq,
    is_join_hom,
    is_lax_morphism,
    is_order_embedding,
    join_hom_witness,
    make_fss,
)
from tenselat.order import chain, power_lattice, validate_lattice
from tenselat.random_instances import random_lattice


def values(homs, L):
    return ["".join(L.label(v) for v in h.values) for h in homs]


class TestFrozenCounts:
    """Counts computed once by the all-maps oracle and frozen here."""

    def test_diamond_to_two_chain(self, H5, L2):
        homs = enumerate_join_homs(H5.lattice, L2)
        # over 0 a b c 1; not the eight 0,1-preserving monotone maps
        assert values(homs, L2) == ["00000", "00111", "01011", "01101", "01111"]

    @pytest.mark.parametrize(
        "src,dst,count",
        [("M3", "M3", 50), ("sq", "c3", 9), ("N5", "N5", 43), ("c3", "sq", 9), ("sq", "sq", 16), ("N5", "M3", 41)],
    )
    def test_counts(self, H5, square, pentagon, src, dst, count):
        named = {"M3": H5.lattice, "sq": square, "N5": pentagon, "c3": chain(3)}
        assert len(enumerate_join_homs(named[src], named[dst])) == count


@given(lattices(max_size=5), lattices(max_size=5))
def test_enumeration_matches_all_maps_oracle(G, L):
    fast = [h.values for h in enumerate_join_homs(G, L)]
    assert fast == sorted(O.all_join_homs(G, L))


@given(lattices(max_size=4), lattices(max_size=4))
def test_bruteforce_route_agrees(G, L):
    assert enumerate_join_homs(G, L) == enumerate_join_homs_bruteforce(G, L)


def test_enumeration_limit(H5):
    with pytest.raises(CarrierTooLarge):
        enumerate_join_homs(H5.lattice, H5.lattice, limit=10)


class TestJoinWitness:
    def test_bottom_witness(self, L2):
        assert join_hom_witness(lambda x: 1, L2, L2) == ()

    def test_atom_moved_breaks_joins(self, square):
        """On the square, sending the atom p onto q breaks p v q = 1."""
        p, q = square.element("p"), square.element("q")
        table = {x: x for x in square.elements}
        table[p] = q
        w = join_hom_witness(table.__getitem__, square, square)
        assert w is not None
        assert {square.label(x) for x in w} == {"p", "q"}
        with pytest.raises(NotJoinPreserving) as exc:
            make_fss(square, table)
        assert set(exc.value.witness) == {"p", "q"}

    def test_atom_raised_to_top_is_fine(self, square):
        """Raising one atom to the top keeps joins (every join with p is p or 1)."""
        table = {x: x for x in square.elements}
        table[square.element("p")] = square.top
        assert join_hom_witness(table.__getitem__, square, square) is None

    @given(seeds)
    def test_generator_route_equals_all_pairs(self, seed):
        """The (x, generator) shortcut decides exactly what all pairs decide."""
        rng = np.random.default_rng(seed)
        G = power_lattice(random_lattice(rng, 4), range(2))
        L = random_lattice(rng, 4)
        els = G.elements
        for _ in range(5):
            table = {x: L.elements[int(rng.integers(L.size))] for x in els}
            table[G.bottom] = L.bottom
            if rng.random() < 0.5:
                # make it join-preserving by construction on half the draws
                h = enumerate_join_homs(G, L, limit=10**6)
                table = dict(zip(els, h[int(rng.integers(len(h)))].values))
            full = join_hom_witness(table.__getitem__, G, L, all_pairs=True) is None
            gens = join_hom_witness(table.__getitem__, G, L, all_pairs=False) is None
            assert full == gens == O.preserves_joins(table, G, L)


@given(fsss())
def test_F_is_join_preserving(H):
    assert is_join_hom(H.F, H.lattice, H.lattice)


@given(fsss())
def test_residual_is_upper_adjoint(H):
    L = H.lattice
    for x in L.elements:
        for y in L.elements:
            assert L.leq(H.F(x), y) == L.leq(x, H.residual(y))


class TestMorphismClasses:
    def test_identity_is_everything(self, H5):
        i = identity(H5.lattice)
        assert is_lax_morphism(i, H5, H5)
        assert is_f_homomorphism(i, H5, H5)
        assert is_order_embedding(i)
        assert is_in_E_leq(i, H5, H5)

    def test_lax_not_homomorphism(self):
        """``F2(f(a)) <= f(F1(a))`` strictly: zero operator on the target."""
        c = chain(2)
        H1 = FSupLattice(c, {0: 0, 1: 1})
        H2 = FSupLattice(c, {0: 0, 1: 0})
        f = identity(c)
        assert is_lax_morphism(f, H1, H2)
        assert not is_f_homomorphism(f, H1, H2)
        # F2(f(1)) = 0 <= f(0) but F1(1) = 1 is not <= 0
        assert not is_in_E_leq(f, H1, H2)

    def test_not_lax(self):
        c = chain(2)
        H1 = FSupLattice(c, {0: 0, 1: 0})
        H2 = FSupLattice(c, {0: 0, 1: 1})
        assert not is_lax_morphism(identity(c), H1, H2)

    def test_embedding_of_chain_into_square(self, square):
        c = chain(2)
        f = JoinHom.from_table(c, square, [square.bottom, square.element("p")])
        assert is_order_embedding(f)
        g = JoinHom.from_table(c, square, [square.bottom, square.bottom])
        assert not is_order_embedding(g)

    def test_carrier_mismatch(self, H5, L2):
        f = enumerate_join_homs(H5.lattice, L2)[0]
        with pytest.raises(CarrierMismatch):
            is_lax_morphism(f, H5, H5)

    @given(fsss(max_size=5))
    def test_hom_implies_lax_and_embedding_hom_in_E(self, H):
        for f in enumerate_join_homs(H.lattice, H.lattice, limit=10**5):
            if is_f_homomorphism(f, H, H):
                assert is_lax_morphism(f, H, H)
                if is_order_embedding(f):
                    assert is_in_E_leq(f, H, H)


def test_joinhom_equality_and_label(L2):
    G = validate_lattice(["0", "1"], [("0", "1")])
    a = JoinHom.from_table(G, L2, [0, 1])
    b = JoinHom(G, L2, lambda x: x)
    assert a == b and hash(a) == hash(b)
    assert a.label() == "<0,1>"
    assert (a @ b).values == (0, 1)
