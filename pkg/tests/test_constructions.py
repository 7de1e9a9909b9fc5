import numpy as np
import pytest
from hypothesis import given

import oracles as O
from conftest import frames, fsss, lattices, seeds
from tenselat.constructions import (
    HomFrame,
    LazyHomFrame,
    backward_powerset,
    forward_powerset,
    frame_operator,
    hom_frame,
    hom_relation_matrix,
    indicator,
    indicator_eq,
    tensor,
    tensor_pair_hypothesis,
    tensor_pairs,
)
from tenselat.frames import Frame
from tenselat.morphisms import FSupLattice, enumerate_join_homs, is_join_hom, join_hom_witness
from tenselat.order import power_lattice
from tenselat.random_instances import random_frame, random_frame_hom, random_fss, random_lattice


class TestFrameOperator:
    @given(lattices(max_size=4), frames())
    def test_matches_definition(self, L, J):
        LJ = frame_operator(L, J)
        for x in LJ.lattice.elements:
            assert LJ.F(x) == O.frame_operator_value(L, J.nodes, J.related, x)

    @given(lattices(max_size=4), frames())
    def test_residual_is_upper_adjoint(self, L, J):
        LJ = frame_operator(L, J)
        P = LJ.lattice
        for x in P.elements:
            for y in P.elements:
                assert P.leq(LJ.F(x), y) == P.leq(x, LJ.residual(y))

    @given(lattices(max_size=4), frames())
    def test_join_check_routes_agree(self, L, J):
        LJ = frame_operator(L, J, check=False)
        P = LJ.lattice
        full = join_hom_witness(LJ.F, P, P, all_pairs=True)
        gens = join_hom_witness(LJ.F, P, P, all_pairs=False)
        assert full is None and gens is None

    def test_worked_power(self, H5, J3):
        LJ = frame_operator(H5.lattice, J3)
        G = H5.lattice
        x = tuple(G.element(s) for s in "ab0")
        assert "".join(G.label(v) for v in LJ.F(x)) == "ba0"

    def test_cached(self, L2, J3):
        assert frame_operator(L2, J3) is frame_operator(L2, J3)


class TestIndicators:
    def test_worked(self, H5, J3):
        G = H5.lattice
        b = G.element("b")
        assert [G.label(v) for v in indicator(G, J3, b, "f2")] == ["0", "b", "0"]
        assert [G.label(v) for v in indicator_eq(G, J3, b, "f2")] == ["b", "0", "0"]
        assert [G.label(v) for v in indicator(G, J3, b, "f4")] == ["0", "0", "b"]

    def test_unknown_node(self, H5, J3):
        from tenselat.errors import UnknownNode

        with pytest.raises(UnknownNode):
            indicator(H5.lattice, J3, H5.lattice.bottom, "zz")


@given(seeds)
def test_forward_backward_galois(seed):
    """``t→(x) <= y  iff  x <= L^t(y)``."""
    rng = np.random.default_rng(seed)
    L = random_lattice(rng, 4)
    t = random_frame_hom(rng, random_frame(rng, 3), max_nodes=3)
    fwd = forward_powerset(t, L)
    bwd = backward_powerset(L, t)
    P1, P2 = fwd.source, fwd.target
    assert is_join_hom(fwd, P1, P2) and is_join_hom(bwd, P2, P1)
    for x in P1.elements:
        for y in P2.elements:
            assert P2.leq(fwd(x), y) == P1.leq(x, bwd(y))


class TestTensor:
    FROZEN = ["000", "00a", "001", "aa0", "aaa", "aa1", "bc0", "bca", "bc1",
              "cb0", "cba", "cb1", "110", "11a", "111"]

    def test_worked_fixpoints(self, H5, J3):
        T = tensor(J3, H5)
        G = H5.lattice
        labels = sorted("".join(G.label(v) for v in a) for a in T.elements)
        assert labels == sorted(self.FROZEN)
        # 15 (x, i) combinations; x = 0 gives the trivial pair at every node
        assert len(T.pairs) == 13

    def test_worked_matches_oracle(self, H5, J3):
        T = tensor(J3, H5)
        assert sorted(T.elements) == O.tensor_fixpoints(J3.nodes, J3.related, H5.lattice, H5.F)

    def test_loop_on_square_identity(self, square, loop_frame):
        H = FSupLattice(square, {x: x for x in square.elements})
        assert len(tensor(loop_frame, H).elements) == 4

    @given(fsss(max_size=5), frames(max_nodes=3))
    def test_routes_agree_with_oracle(self, H, J):
        a = tensor(J, H, "pairs")
        b = tensor(J, H, "propagate")
        assert a.elements == b.elements
        for x in a.base.elements:
            assert a.nucleus(x) == b.nucleus(x)
        assert sorted(a.elements) == O.tensor_fixpoints(J.nodes, J.related, H.lattice, H.F)

    def test_unit_lands_in_tensor(self, H5, J3):
        T = tensor(J3, H5)
        G = H5.lattice
        for x in G.elements:
            for i in J3.nodes:
                assert T.unit(x, i) in T

    def test_bad_route(self, H5, J3):
        with pytest.raises(ValueError):
            tensor(J3, H5, "sideways")

    def test_pairs_are_deduplicated(self, H5, J3):
        X = tensor_pairs(J3, H5)
        assert len(X) == len(set(X))

    def test_pair_hypothesis_on_worked_example(self, H5, J3):
        assert all(tensor_pair_hypothesis(J3, H5).values())


class TestHomFrame:
    def test_worked_relation(self, H5, L2):
        J = hom_frame(H5, L2)
        assert isinstance(J, HomFrame)
        pos = [(int(a), int(b)) for a, b in zip(*np.nonzero(J.matrix))]
        assert pos == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 3), (3, 0), (3, 2),
                       (4, 0), (4, 1), (4, 2), (4, 3), (4, 4)]

    @given(fsss(max_size=5), lattices(max_size=4))
    def test_relation_matches_oracle(self, H, L):
        homs = enumerate_join_homs(H.lattice, L)
        R = hom_relation_matrix(H, L, homs)
        dicts = [dict(zip(H.lattice.elements, h.values)) for h in homs]
        assert {(int(a), int(b)) for a, b in zip(*np.nonzero(R))} == O.hom_relation(H.lattice, L, H.F, dicts)

    @given(fsss(max_size=5), lattices(max_size=4))
    def test_lazy_relation_agrees(self, H, L):
        J = HomFrame(H, L)
        lazy = LazyHomFrame(H, L)
        for a in J.nodes:
            assert a in lazy
            for b in J.nodes:
                assert lazy.related(a, b) == J.related(a, b)

    @pytest.mark.parametrize("n", [1, 2])
    def test_power_count_prediction(self, square, L2, n):
        B = square
        P = power_lattice(B, range(n))
        assert len(enumerate_join_homs(P, L2)) == len(enumerate_join_homs(B, L2)) ** n

    def test_auto_lazy_above_limit(self, H5):
        P = power_lattice(H5.lattice, range(3))
        H = FSupLattice.trivial(P)
        # |Hom(M3, M3)| = 50, so 50**3 homs are never listed
        assert isinstance(hom_frame(H, H5.lattice), LazyHomFrame)

    def test_forced_lazy(self, H5, L2):
        assert isinstance(hom_frame(H5, L2, lazy=True), LazyHomFrame)
