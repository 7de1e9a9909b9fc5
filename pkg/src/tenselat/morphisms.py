"""Join-preserving maps, F-sup-semilattices and the morphism classes on them."""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import CarrierMismatch, CarrierTooLarge, ForeignElement, NotJoinPreserving
from .order import FiniteLattice, SupLattice, as_finite, max_carrier


class JoinHom:
    """A map between two lattices, intended to preserve all joins.

    Construction does not verify join preservation; use :func:`is_join_hom`.
    Results of ``fn`` are memoised, so lazily defined maps (closures,
    factorised maps) are evaluated at most once per argument.
    """

    def __init__(self, source: SupLattice, target: SupLattice, fn: Callable, name: str | None = None):
        self.source = source
        self.target = target
        self._fn = fn
        self._memo: dict = {}
        self.name = name

    @classmethod
    def from_table(cls, source, target, table, name=None) -> "JoinHom":
        """From a mapping, or a sequence aligned with ``source.elements``."""
        if not isinstance(table, Mapping):
            table = dict(zip(source.elements, table))
        table = dict(table)
        for x, y in table.items():
            if y not in target:
                raise ForeignElement(y, target)
        hom = cls(source, target, table.__getitem__, name)
        hom._memo = table
        return hom

    def __call__(self, x):
        try:
            return self._memo[x]
        except KeyError:
            pass
        except TypeError:
            return self._fn(x)
        y = self._fn(x)
        self._memo[x] = y
        return y

    @cached_property
    def values(self) -> tuple:
        return tuple(self(x) for x in self.source.elements)

    def __eq__(self, other):
        if not isinstance(other, JoinHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.values == other.values
        )

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            self._hash = hash(self.values)
            return self._hash

    def __repr__(self):
        if self.name:
            return f"<JoinHom {self.name}>"
        try:
            return f"<JoinHom {self.label()}>"
        except CarrierTooLarge:
            return f"<JoinHom {self.source!r} -> {self.target!r}>"

    def label(self) -> str:
        return "<" + ",".join(self.target.label(v) for v in self.values) + ">"

    def compose(self, inner: "JoinHom") -> "JoinHom":
        """``self ∘ inner``."""
        return JoinHom(inner.source, self.target, lambda x: self(inner(x)))

    def __matmul__(self, inner):
        return self.compose(inner)


def identity(L: SupLattice) -> JoinHom:
    return JoinHom(L, L, lambda x: x, name="id")


def compose(g: JoinHom, f: JoinHom) -> JoinHom:
    return g.compose(f)


class FSupLattice:
    """A lattice together with a join-preserving operator ``F``."""

    def __init__(self, lattice: SupLattice, F: JoinHom | Callable | Mapping, *, name=None):
        self.lattice = lattice
        if isinstance(F, JoinHom):
            self.F = F
        elif isinstance(F, Mapping):
            self.F = JoinHom.from_table(lattice, lattice, F, name="F")
        else:
            self.F = JoinHom(lattice, lattice, F, name="F")
        self.name = name
        self._residual: dict = {}

    def __repr__(self):
        return f"FSupLattice({self.name or repr(self.lattice)})"

    def residual(self, y):
        """Largest ``x`` with ``F(x) <= y`` (the upper adjoint of ``F``)."""
        try:
            return self._residual[y]
        except KeyError:
            pass
        L = self.lattice
        out = L.join_all(x for x in L.elements if L.leq(self.F(x), y))
        self._residual[y] = out
        return out

    @classmethod
    def trivial(cls, L: SupLattice) -> "FSupLattice":
        """``(L, id)``: a plain lattice viewed as an F-sup-semilattice."""
        return cls(L, identity(L), name=f"({L!r}, id)")


ALL_PAIRS_LIMIT = 256


def join_hom_witness(f, G: SupLattice, L: SupLattice, *, all_pairs: bool | None = None):
    """First violation of join preservation, or ``None``.

    A witness is ``()`` for the bottom condition and ``(x, y)`` otherwise.
    Small sources are checked on all pairs. Larger ones are checked on pairs
    ``(x, g)`` with ``g`` a join generator, which is equivalent:
    ``f(x ∨ g) = f(x) ∨ f(g)`` for all such pairs gives ``f(x ∨ y) = f(x) ∨ f(y)``
    by induction on a generator decomposition of ``y``.
    """
    fmap = f if callable(f) else f.__getitem__
    vals = {}
    for x in G.elements:
        y = fmap(x)
        if y not in L:
            raise ForeignElement(y, L)
        vals[x] = y
    if vals[G.bottom] != L.bottom:
        return ()
    els = G.elements
    if all_pairs is None:
        all_pairs = len(els) <= ALL_PAIRS_LIMIT
    if all_pairs:
        for i, x in enumerate(els):
            for y in els[i + 1:]:
                if vals[G.join(x, y)] != L.join(vals[x], vals[y]):
                    return (x, y)
        return None
    for g in G.join_generators:
        fg = vals[g]
        for x in els:
            if vals[G.join(x, g)] != L.join(vals[x], fg):
                return (x, g)
    return None


def is_join_hom(f, G: SupLattice, L: SupLattice) -> bool:
    """True iff ``f`` maps bottom to bottom and preserves binary joins."""
    return join_hom_witness(f, G, L) is None


def make_fss(L: SupLattice, F, name=None) -> FSupLattice:
    """Validated F-sup-semilattice; raises ``NotJoinPreserving`` with a witness."""
    fss = FSupLattice(L, F, name=name)
    w = join_hom_witness(fss.F, L, L)
    if w is not None:
        raise NotJoinPreserving(tuple(L.label(x) for x in w) or "bottom")
    return fss


def _as_table_lattice(L: SupLattice):
    """Explicit copy with tables plus the element list it is indexed by."""
    return as_finite(L), L.elements


def enumerate_join_homs(G: SupLattice, L: SupLattice, limit: int | None = None) -> list[JoinHom]:
    """Every join-preserving map ``G -> L``, in canonical order.

    A join-preserving map is determined by its values on the join-irreducible
    elements of ``G``; those are assigned by backtracking in a linear
    extension order with two necessary-condition prunings (monotonicity, and
    ``v(j) <= join v(E)`` whenever ``j <= join E`` for already assigned
    irreducibles ``E``), and every completed candidate is checked in full.
    Canonical order is lexicographic in the value tuple over ``G.elements``
    with values compared by their position in ``L.elements``.
    """
    if limit is None:
        limit = max_carrier()
    gf, gels = _as_table_lattice(G)
    lf, lels = _as_table_lattice(L)
    n = gf.size
    gleq = gf.leq_matrix
    lleq = lf.leq_matrix
    gjoin = gf.join_table
    ljoin = lf.join_table

    ji = sorted(gf.join_irreducibles, key=lambda j: (int(gleq[:, j].sum()), j))
    m = len(ji)
    preds = [[p for p in range(k) if gleq[ji[p], ji[k]]] for k in range(m)]
    uppers = []
    for k in range(m):
        seen = set()
        for x in range(n):
            if not gleq[ji[k], x]:
                continue
            E = frozenset(p for p in range(k) if gleq[ji[p], x])
            if not E or E in seen:
                continue
            jE = gf.bottom
            for p in E:
                jE = int(gjoin[jE, ji[p]])
            if gleq[ji[k], jE]:
                seen.add(E)
        uppers.append([sorted(E) for E in seen])
    below = [[p for p in range(m) if gleq[ji[p], x]] for x in range(n)]

    found: list[tuple] = []
    v = [0] * m

    def ljoin_all(idxs):
        acc = lf.bottom
        for i in idxs:
            acc = int(ljoin[acc, v[i]])
        return acc

    def leaf():
        f = np.array([ljoin_all(below[x]) for x in range(n)], dtype=np.int64)
        if f[gf.bottom] != lf.bottom:
            return
        if not np.array_equal(ljoin[f[:, None], f[None, :]], f[gjoin]):
            return
        found.append(tuple(int(t) for t in f))
        if len(found) > limit:
            raise CarrierTooLarge(len(found), limit)

    def rec(k):
        if k == m:
            leaf()
            return
        lo = ljoin_all(preds[k])
        mask = lleq[lo].copy()
        for E in uppers[k]:
            mask &= lleq[:, ljoin_all(E)]
        for y in np.flatnonzero(mask):
            v[k] = int(y)
            rec(k + 1)

    rec(0)
    found.sort()
    return [JoinHom.from_table(G, L, {gels[i]: lels[t] for i, t in enumerate(f)}) for f in found]


def enumerate_join_homs_bruteforce(G: SupLattice, L: SupLattice) -> list[JoinHom]:
    """All ``|L|^|G|`` total maps filtered by :func:`is_join_hom`; tiny carriers only."""
    out = []
    for vals in itertools.product(range(L.size), repeat=G.size):
        table = dict(zip(G.elements, (L.elements[i] for i in vals)))
        if is_join_hom(table.__getitem__, G, L):
            out.append(JoinHom.from_table(G, L, table))
    return out


def _check_carriers(f: JoinHom, H1: FSupLattice, H2: FSupLattice):
    if f.source != H1.lattice or f.target != H2.lattice:
        raise CarrierMismatch("map source/target do not match the given F-sup-semilattices")


def is_lax_morphism(f: JoinHom, H1: FSupLattice, H2: FSupLattice) -> bool:
    """``F2(f(a)) <= f(F1(a))`` for every ``a``."""
    _check_carriers(f, H1, H2)
    L2 = H2.lattice
    return all(L2.leq(H2.F(f(a)), f(H1.F(a))) for a in H1.lattice.elements)


def is_f_homomorphism(f: JoinHom, H1: FSupLattice, H2: FSupLattice) -> bool:
    _check_carriers(f, H1, H2)
    return all(H2.F(f(a)) == f(H1.F(a)) for a in H1.lattice.elements)


def is_order_embedding(f: JoinHom) -> bool:
    G, L = f.source, f.target
    els = G.elements
    vals = [f(x) for x in els]
    return all(
        G.leq(x, y) == L.leq(fx, fy)
        for x, fx in zip(els, vals)
        for y, fy in zip(els, vals)
    )


def is_in_E_leq(f: JoinHom, H1: FSupLattice, H2: FSupLattice) -> bool:
    """Lax order-embedding with ``F2(f(a)) <= f(a')  =>  F1(a) <= a'``."""
    if not is_lax_morphism(f, H1, H2) or not is_order_embedding(f):
        return False
    G, L = H1.lattice, H2.lattice
    els = G.elements
    for a in els:
        Ffa = H2.F(f(a))
        Fa = H1.F(a)
        for b in els:
            if L.leq(Ffa, f(b)) and not G.leq(Fa, b):
                return False
    return True
