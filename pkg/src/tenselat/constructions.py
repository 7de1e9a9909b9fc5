"""The three constructions and their actions on morphisms.

* ``frame_operator(L, J)``: ``L^J``, the power ``L^T`` with
  ``F^J(x)(i) = ⋁{x(k) | i S k}``.
* ``tensor(J, H)``: ``J⊗H``, the quotient of ``G^T`` that identifies
  ``x_{iS} ∨ F(x)_{i=}`` with ``F(x)_{i=}`` for every ``x`` and node ``i``.
* ``hom_frame(H, L)``: ``J[H,L]``, the join-homomorphisms ``G -> L`` related by
  ``α S β  iff  β(x) <= α(F(x)) for all x``.

Tensor closures are computed one of two ways. The literal way builds the pair set
``[J,H]`` and iterates the pair prenucleus. For lattices too large to list,
the equivalent propagation rule is used: identifying those pairs forces
``F♯(a(i)) <= a(k)`` whenever ``i S k``, where ``F♯`` is the upper adjoint of
``F``. The two routes are cross-checked in the tests wherever both can run.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property, lru_cache
from typing import Hashable

import numpy as np

from .errors import CarrierMismatch, CarrierTooLarge, NotJoinPreserving
from .frames import Frame, FrameHom
from .morphisms import FSupLattice, JoinHom, enumerate_join_homs, join_hom_witness
from .nuclei import Nucleus, PairPrenucleus, QuotientLattice, factor_through, nucleus_closure
from .order import PowerLattice, SupLattice, as_finite, max_carrier, power_lattice


# ---------------------------------------------------------------------------
# L^J


class FrameOperatorLattice(FSupLattice):
    """``L^T`` with the operator ``F^J`` induced by the frame ``J``."""

    def __init__(self, L: SupLattice, J: Frame):
        self.base = L
        self.frame = J
        P = power_lattice(L, J.nodes)
        M = J.matrix
        self._succ = [tuple(np.flatnonzero(M[p]).tolist()) for p in range(len(J.nodes))]
        self._pred = [tuple(np.flatnonzero(M[:, p]).tolist()) for p in range(len(J.nodes))]
        succ = self._succ

        def FJ(x):
            return tuple(L.join_all(x[q] for q in qs) for qs in succ)

        super().__init__(P, JoinHom(P, P, FJ, name="F^J"), name=f"{L!r}^J")

    def residual(self, y):
        """``F♯(y)(k) = ⋀{y(i) | i S k}``."""
        L = self.base
        return tuple(L.meet_all(y[p] for p in ps) for ps in self._pred)

    def __eq__(self, other):
        return isinstance(other, FrameOperatorLattice) and self.base == other.base and self.frame == other.frame

    def __hash__(self):
        return hash((self.base, self.frame))


@lru_cache(maxsize=512)
def frame_operator(L: SupLattice, J: Frame, *, check: bool = True) -> FrameOperatorLattice:
    """``L^J``; when enumerable, join preservation of ``F^J`` is verified
    on pairs ``(x, g)`` with ``g`` a join generator.

    Cached, so repeated calls return the same object (tensors built over it
    are cached on that object).
    """
    out = FrameOperatorLattice(L, J)
    if check and out.lattice.enumerable:
        # (x, generator) pairs suffice; the all-pairs route is cross-checked in tests
        w = join_hom_witness(out.F, out.lattice, out.lattice, all_pairs=False)
        if w is not None:  # pragma: no cover - would falsify the construction
            raise NotJoinPreserving(w)
    return out


def indicator(L: SupLattice, J: Frame, x, i) -> tuple:
    """``x_{iS}``: ``x`` at every ``k`` with ``i S k``, bottom elsewhere."""
    J.position(i)
    L.check(x)
    b = L.bottom
    return tuple(x if J.related(i, k) else b for k in J.nodes)


def indicator_eq(L: SupLattice, J: Frame, x, i) -> tuple:
    """``x_{i=}``: ``x`` at ``i``, bottom elsewhere."""
    J.position(i)
    L.check(x)
    b = L.bottom
    return tuple(x if k == i else b for k in J.nodes)


def hom_power_map(f: JoinHom, J: Frame) -> JoinHom:
    """``f^J(x)(i) = f(x(i))``, a map ``L1^J -> L2^J``."""
    P1 = power_lattice(f.source, J.nodes)
    P2 = power_lattice(f.target, J.nodes)
    return JoinHom(P1, P2, lambda x: tuple(f(v) for v in x), name=f"{f.name or 'f'}^J")


def backward_powerset(L: SupLattice, t: FrameHom) -> JoinHom:
    """``L^t(x)(i) = x(t(i))``, a map ``L^{T2} -> L^{T1}``."""
    P1 = power_lattice(L, t.source.nodes)
    P2 = power_lattice(L, t.target.nodes)
    idx = [t.target.position(t(i)) for i in t.source.nodes]
    return JoinHom(P2, P1, lambda x: tuple(x[p] for p in idx), name="L^t")


def forward_powerset(t: FrameHom, L: SupLattice) -> JoinHom:
    """``t→(x)(k) = ⋁{x(i) | t(i) = k}``, a map ``L^{T1} -> L^{T2}``."""
    P1 = power_lattice(L, t.source.nodes)
    P2 = power_lattice(L, t.target.nodes)
    fibres = [[p for p, i in enumerate(t.source.nodes) if t(i) == k] for k in t.target.nodes]
    return JoinHom(P1, P2, lambda x: tuple(L.join_all(x[p] for p in ps) for ps in fibres), name="t→")


# ---------------------------------------------------------------------------
# J⊗H


def tensor_pairs(J: Frame, H: FSupLattice) -> list[tuple]:
    """``[J,H] = {(x_{iS} ∨ F(x)_{i=}, F(x)_{i=}) | x ∈ G, i ∈ T}`` (x-major order)."""
    G = H.lattice
    P = power_lattice(G, J.nodes)
    out = []
    for x in G.elements:
        Fx = H.F(x)
        for i in J.nodes:
            e = indicator_eq(G, J, Fx, i)
            out.append((P.join(indicator(G, J, x, i), e), e))
    return list(dict.fromkeys(out))


def tensor_pair_hypothesis(J: Frame, H: FSupLattice) -> dict:
    """How ``[J,H]`` behaves with respect to the operator ``F^J`` on ``G^T``.

    ``J⊗H`` itself is a quotient of ``G^T`` as a plain sup-semilattice (the
    identity operator, for which any pair set is trivially closed). This
    report records, for the other reading, whether ``[J,H]`` is closed under
    ``F^J × F^J`` and whether ``j[J,H]`` and its closure are lax for ``F^J``.
    Needs ``G^T`` listable.
    """
    GJ = frame_operator(H.lattice, J)
    j = PairPrenucleus(GJ, tensor_pairs(J, H))
    return {
        "closed_under_FJ": j.hypothesis_holds,
        "prenucleus_lax_under_FJ": j.lax,
        "closure_lax_under_FJ": nucleus_closure(j).lax,
    }


class PropagationNucleus(Nucleus):
    """Closure of ``j[J,H]`` by propagation along the frame.

    ``a`` is closed iff ``F♯(a(i)) <= a(k)`` for all ``i S k``; the closure
    raises successors of changed nodes until no constraint is violated.
    """

    def __init__(self, J: Frame, H: FSupLattice):
        G = H.lattice
        P = power_lattice(G, J.nodes)
        M = J.matrix
        succ = [tuple(np.flatnonzero(M[p]).tolist()) for p in range(len(J.nodes))]
        res = H.residual

        bot = G.bottom
        quiet_bottom = res(bot) == bot

        def close(a):
            vals = list(a)
            if quiet_bottom:
                # a bottom node forces nothing until it changes
                seeds = [p for p, v in enumerate(vals) if v != bot]
            else:
                seeds = range(len(vals))
            queue = deque(seeds)
            queued = [False] * len(vals)
            for p in queue:
                queued[p] = True
            while queue:
                p = queue.popleft()
                queued[p] = False
                if not succ[p]:
                    continue
                r = res(vals[p])
                for q in succ[p]:
                    nv = G.join(vals[q], r)
                    if nv != vals[q]:
                        vals[q] = nv
                        if not queued[q]:
                            queued[q] = True
                            queue.append(q)
            return tuple(vals)

        super().__init__(FSupLattice.trivial(P), close, name="n(j[J,H])")


class TensorLattice(QuotientLattice):
    """``J⊗H``: fixpoints of ``n(j[J,H])`` on ``G^T``.

    ``route`` is ``"pairs"`` (literal pair set, needs ``G`` listable) or
    ``"propagate"`` (closed form, works lazily).
    """

    def __init__(self, J: Frame, H: FSupLattice, route: str = "auto"):
        G = H.lattice
        P = power_lattice(G, J.nodes)
        if route == "auto":
            route = "pairs" if P.enumerable else "propagate"
        self.frame = J
        self.fss = H
        self.route = route
        if route == "pairs":
            self.pairs = tensor_pairs(J, H)
            self.prenucleus = PairPrenucleus(FSupLattice.trivial(P), self.pairs, name="j[J,H]")
            n = nucleus_closure(self.prenucleus)
        elif route == "propagate":
            self.pairs = None
            self.prenucleus = None
            n = PropagationNucleus(J, H)
        else:
            raise ValueError(f"unknown route {route!r}")
        super().__init__(P, n, name="J⊗H")

    def __eq__(self, other):
        return isinstance(other, TensorLattice) and self.frame == other.frame and self.fss is other.fss

    def __hash__(self):
        return hash((self.frame, id(self.fss)))

    def __repr__(self):
        return f"Tensor({self.frame!r}, {self.fss!r})"

    def unit(self, x, i):
        """The class of ``x_{i=}``."""
        return self.nucleus(indicator_eq(self.fss.lattice, self.frame, x, i))


def tensor(J: Frame, H: FSupLattice, route: str = "auto") -> TensorLattice:
    """``J⊗H`` (cached per frame and F-sup-semilattice object)."""
    cache = H.__dict__.setdefault("_tensor_cache", {})
    key = (J, route)
    if key not in cache:
        cache[key] = TensorLattice(J, H, route)
    return cache[key]


def tensor_map_frame(t: FrameHom, H: FSupLattice, *, route: str = "auto") -> JoinHom:
    """``t⊗H``: the map with ``(t⊗H) ∘ n1 = n2 ∘ t→``, built by factorisation."""
    T1 = tensor(t.source, H, route)
    T2 = tensor(t.target, H, route)
    fwd = forward_powerset(t, H.lattice)
    g = JoinHom(T1.base, T2, lambda a: T2.nucleus(fwd(a)))
    out = factor_through(T1.nucleus, g, T1.pairs or (), carrier=T1)
    out.name = "t⊗H"
    return out


def tensor_map_fss(J: Frame, f: JoinHom, H1: FSupLattice, H2: FSupLattice, *, route: str = "auto") -> JoinHom:
    """``J⊗f``: the map with ``(J⊗f) ∘ n1 = n2 ∘ f^J``, built by factorisation."""
    if f.source != H1.lattice or f.target != H2.lattice:
        raise CarrierMismatch("f does not go from H1 to H2")
    T1 = tensor(J, H1, route)
    T2 = tensor(J, H2, route)
    fJ = hom_power_map(f, J)
    g = JoinHom(T1.base, T2, lambda a: T2.nucleus(fJ(a)))
    out = factor_through(T1.nucleus, g, T1.pairs or (), carrier=T1)
    out.name = "J⊗f"
    return out


# ---------------------------------------------------------------------------
# J[H,L]


def _hom_label(h: JoinHom) -> str:
    return h.name or h.label()


def hom_relation_matrix(H: FSupLattice, L: SupLattice, homs) -> np.ndarray:
    """``R[a, b] = ∀x: homs[b](x) <= homs[a](F(x))`` over every ``x`` of ``G``."""
    G = H.lattice
    Lf = as_finite(L)
    gels = G.elements
    lidx = L.index
    V = np.array([[lidx(h(x)) for x in gels] for h in homs], dtype=np.int64).reshape(len(homs), len(gels))
    Fidx = np.array([G.index(H.F(x)) for x in gels], dtype=np.int64)
    VF = V[:, Fidx]
    leq = Lf.leq_matrix
    R = np.ones((len(homs), len(homs)), dtype=bool)
    for c in range(len(gels)):
        R &= leq[V[None, :, c], VF[:, None, c]]
    return R


class HomFrame(Frame):
    """``J[H,L]`` with nodes in canonical hom order."""

    def __init__(self, H: FSupLattice, L: SupLattice, homs=None):
        self.fss = H
        self.codomain = L
        if homs is None:
            homs = enumerate_join_homs(H.lattice, L)
        homs = tuple(homs)
        R = hom_relation_matrix(H, L, homs) if homs else np.zeros((0, 0), dtype=bool)
        super().__init__(homs, matrix=R, labels=_hom_label)

    def __repr__(self):
        return f"HomFrame({self.fss!r}, {self.codomain!r}; {len(self.nodes)} nodes)"


class LazyHomFrame:
    """``J[H,L]`` when the hom set is too large to list.

    Nodes are any join-homomorphisms ``G -> L``. The relation is decided on
    the join generators of ``G``: both ``β`` and ``α∘F`` preserve joins, so
    the inequality on generators is equivalent to the inequality everywhere.
    """

    def __init__(self, H: FSupLattice, L: SupLattice):
        self.fss = H
        self.codomain = L

    def __repr__(self):
        return f"LazyHomFrame({self.fss!r}, {self.codomain!r})"

    def __eq__(self, other):
        return isinstance(other, LazyHomFrame) and self.fss is other.fss and self.codomain == other.codomain

    def __hash__(self):
        return hash((id(self.fss), self.codomain))

    def __contains__(self, h):
        return isinstance(h, JoinHom) and h.source == self.fss.lattice and h.target == self.codomain

    def label(self, h):
        return _hom_label(h)

    def related(self, a: JoinHom, b: JoinHom) -> bool:
        L, F = self.codomain, self.fss.F
        return all(L.leq(b(g), a(F(g))) for g in self.fss.lattice.join_generators)


HOMFRAME_LIST_LIMIT = 512


def hom_frame(H: FSupLattice, L: SupLattice, *, lazy: bool | None = None):
    """``J[H,L]``.

    With ``lazy=None`` the hom set is listed up to the carrier cap and kept
    lazy beyond it; for a power source ``B^T`` the size is predicted first and
    the frame stays lazy above ``HOMFRAME_LIST_LIMIT`` nodes. ``lazy=False``
    forces listing (up to the carrier cap).
    """
    cache = H.__dict__.setdefault("_homframe_cache", {})
    key = (L, lazy)
    if key in cache:
        return cache[key]
    G = H.lattice
    if lazy is None:
        if isinstance(G, PowerLattice) and G.base.enumerable:
            # finite powers are biproducts, so |Hom(B^T, L)| = |Hom(B, L)|^|T|
            per = len(enumerate_join_homs(G.base, L))
            lazy = per ** len(G.nodes) > HOMFRAME_LIST_LIMIT
        if not lazy:
            try:
                homs = enumerate_join_homs(G, L)
                out = HomFrame(H, L, homs)
            except CarrierTooLarge:
                out = LazyHomFrame(H, L)
        else:
            out = LazyHomFrame(H, L)
    elif lazy:
        out = LazyHomFrame(H, L)
    else:
        out = HomFrame(H, L)
    cache[key] = out
    return out


def _table_hom(G, L, fn, name=None) -> JoinHom:
    return JoinHom.from_table(G, L, [fn(x) for x in G.elements], name=name)


def hom_frame_map_cod(H: FSupLattice, f: JoinHom) -> FrameHom:
    """``J[H,f](α) = f ∘ α``, a frame map ``J[H,L1] -> J[H,L2]``."""
    J1 = hom_frame(H, f.source)
    J2 = hom_frame(H, f.target)
    G = H.lattice
    return FrameHom(J1, J2, {a: _table_hom(G, f.target, lambda x, a=a: f(a(x))) for a in J1.nodes}, name="J[H,f]")


def hom_frame_map_dom(f: JoinHom, H1: FSupLattice, H2: FSupLattice, L: SupLattice) -> FrameHom:
    """``J[f,L](α) = α ∘ f``, a frame map ``J[H2,L] -> J[H1,L]``."""
    if f.source != H1.lattice or f.target != H2.lattice:
        raise CarrierMismatch("f does not go from H1 to H2")
    J2 = hom_frame(H2, L)
    J1 = hom_frame(H1, L)
    G1 = H1.lattice
    return FrameHom(J2, J1, {a: _table_hom(G1, L, lambda x, a=a: a(f(x))) for a in J2.nodes}, name="J[f,L]")
