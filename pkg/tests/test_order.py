import numpy as np
import pytest
from hypothesis import given

import oracles as O
from conftest import lattices
from tenselat.errors import CarrierTooLarge, CycleError, DuplicateLabel, NoBottom, NoJoin, UnknownLabel
from tenselat.order import (
    DEFAULT_MAX_CARRIER,
    FiniteLattice,
    as_finite,
    chain,
    max_carrier,
    power_lattice,
    validate_lattice,
)


class TestValidate:
    def test_diamond(self, H5):
        G = H5.lattice
        assert G.size == 5
        a, b = G.element("a"), G.element("b")
        assert G.label(G.join(a, b)) == "1"
        assert G.label(G.meet(a, b)) == "0"
        assert G.label(G.bottom) == "0" and G.label(G.top) == "1"

    def test_order_is_transitive_closure(self):
        L = validate_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
        assert L.leq(L.element("0"), L.element("1"))

    def test_cycle(self):
        with pytest.raises(CycleError):
            validate_lattice(["a", "b"], [("a", "b"), ("b", "a")])

    def test_no_bottom(self):
        with pytest.raises(NoBottom):
            validate_lattice(["a", "b", "1"], [("a", "1"), ("b", "1")])

    def test_no_join(self):
        # two maximal elements above a bottom
        with pytest.raises(NoJoin):
            validate_lattice(["0", "a", "b"], [("0", "a"), ("0", "b")])

    def test_no_join_with_two_minimal_upper_bounds(self):
        labels = ["0", "a", "b", "c", "d", "1"]
        pairs = [("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("c", "1"), ("d", "1")]
        with pytest.raises(NoJoin):
            validate_lattice(labels, pairs)

    def test_bad_labels(self):
        with pytest.raises(DuplicateLabel):
            validate_lattice(["a", "a"], [])
        with pytest.raises(UnknownLabel):
            validate_lattice(["a"], [("a", "zz")])

    def test_singleton(self):
        L = validate_lattice(["*"], [])
        assert L.bottom == L.top


@given(lattices())
def test_join_meet_match_bruteforce(L):
    for x in L.elements:
        for y in L.elements:
            assert L.join(x, y) == O.lub(L, x, y)
            assert L.meet(x, y) == O.glb(L, x, y)
    assert L.bottom == O.bottom(L) and L.top == O.top(L)


@given(lattices())
def test_join_irreducibles_generate(L):
    """Every element is the join of the irreducibles below it."""
    ji = L.join_irreducibles
    for x in L.elements:
        assert L.join_all(j for j in ji if L.leq(j, x)) == x
    assert L.bottom not in ji


@given(lattices(max_size=4))
def test_power_lattice_pointwise(L):
    P = power_lattice(L, ["u", "v"])
    assert P.size == L.size ** 2
    for x in P.elements:
        for y in P.elements:
            assert P.join(x, y) == tuple(O.lub(L, a, b) for a, b in zip(x, y))
            assert P.leq(x, y) == all(L.leq(a, b) for a, b in zip(x, y))


def test_power_lattice_as_finite_agrees(square):
    P = power_lattice(square, range(2))
    F = as_finite(P)
    assert isinstance(F, FiniteLattice)
    els = P.elements
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            assert els[F.join(i, j)] == P.join(x, y)
            assert els[F.meet(i, j)] == P.meet(x, y)
    assert np.array_equal(F.leq_matrix, P.leq_matrix)


def test_chain():
    c = chain(4)
    assert [c.label(x) for x in c.elements] == ["0", "1", "2", "3"]
    assert c.join_irreducibles == (1, 2, 3)


def test_power_generators_are_points(H5):
    G = H5.lattice
    P = power_lattice(G, ["s", "t"])
    gens = P.join_generators
    assert len(gens) == 2 * len(G.join_irreducibles)
    for x in P.elements:
        assert P.join_all(g for g in gens if P.leq(g, x)) == x


def test_carrier_cap_env(monkeypatch):
    assert max_carrier() == DEFAULT_MAX_CARRIER
    monkeypatch.setenv("TENSELAT_MAX_CARRIER", "10")
    assert max_carrier() == 10
    P = power_lattice(chain(2), range(4))  # 16 > 10
    assert not P.enumerable
    with pytest.raises(CarrierTooLarge):
        P.elements


def test_lazy_power_still_computes():
    P = power_lattice(chain(3), range(20))  # 3**20 elements, never listed
    x = tuple([1] * 20)
    y = tuple([2] + [0] * 19)
    assert P.join(x, y) == tuple([2] + [1] * 19)
    assert P.leq(P.bottom, x) and not P.leq(x, y)
    assert x in P and (5,) not in P
