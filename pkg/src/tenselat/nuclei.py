"""Prenuclei, nuclei, quotients by nuclei, and the nucleus/congruence dictionary.

A prenucleus on an F-sup-semilattice is a monotone, increasing operator
``j`` with ``F(j(x)) <= j(F(x))``; a nucleus is an idempotent one.  The fixpoints of a
nucleus form a lattice whose join is ``n`` applied to the base join, whose
meet is the base meet, and whose operator is ``n ∘ F``.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from .errors import (
    CarrierMismatch,
    CarrierTooLarge,
    FiberConflict,
    ForeignElement,
    NotACongruence,
    NotConstantOnX,
)
from .morphisms import FSupLattice, JoinHom
from .order import SupLattice, max_carrier


def _step_pairs(L: SupLattice):
    """Pairs ``(x, x ∨ g)`` over elements and join generators.

    Every comparable pair is reached by a chain of such steps, so an operator
    is monotone iff it is monotone on these pairs.
    """
    gens = L.join_generators
    for x in L.elements:
        for g in gens:
            y = L.join(x, g)
            if y != x:
                yield x, y


class Prenucleus:
    """An operator on the carrier of an F-sup-semilattice.

    The constructor only stores the operator; the defining properties are
    checked by the ``is_*`` methods (exhaustively, so the carrier must be
    enumerable) and cached.
    """

    def __init__(self, base: FSupLattice, fn: Callable, *, name: str | None = None):
        if isinstance(base, SupLattice):
            base = FSupLattice.trivial(base)
        self.base = base
        self._fn = fn
        self._memo: dict = {}
        self.name = name

    @property
    def lattice(self) -> SupLattice:
        return self.base.lattice

    def __call__(self, x):
        try:
            return self._memo[x]
        except KeyError:
            y = self._fn(x)
            self._memo[x] = y
            return y

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} on {self.lattice!r}>"

    def table(self) -> dict:
        return {x: self(x) for x in self.lattice.elements}

    def is_increasing(self) -> bool:
        L = self.lattice
        return all(L.leq(x, self(x)) for x in L.elements)

    def is_monotone(self) -> bool:
        L = self.lattice
        return all(L.leq(self(x), self(y)) for x, y in _step_pairs(L))

    @cached_property
    def lax(self) -> bool:
        """``F(j(x)) <= j(F(x))`` for every ``x``."""
        L, F = self.lattice, self.base.F
        return all(L.leq(F(self(x)), self(F(x))) for x in L.elements)

    def is_idempotent(self) -> bool:
        return all(self(self(x)) == self(x) for x in self.lattice.elements)

    def is_fixpoint(self, x) -> bool:
        return self(x) == x

    def fixpoints(self) -> tuple:
        return tuple(x for x in self.lattice.elements if self(x) == x)


class Nucleus(Prenucleus):
    """An idempotent prenucleus (a closure operator on the carrier)."""


def identity_nucleus(H: FSupLattice) -> Nucleus:
    return Nucleus(H, lambda x: x, name="id")


class PairPrenucleus(Prenucleus):
    """``j[X](a) = a ∨ ⋁{c | d <= a, (c,d) ∈ X or (d,c) ∈ X}``, evaluated literally."""

    def __init__(self, base: FSupLattice, pairs: Iterable[tuple], *, name=None):
        if isinstance(base, SupLattice):
            base = FSupLattice.trivial(base)
        L = base.lattice
        pairs = list(dict.fromkeys(pairs))
        for c, d in pairs:
            L.check(c)
            L.check(d)
        self.pairs = pairs
        both = pairs + [(d, c) for c, d in pairs]
        both = list(dict.fromkeys(both))

        def fn(a):
            out = a
            for c, d in both:
                if L.leq(d, a):
                    out = L.join(out, c)
            return out

        super().__init__(base, fn, name=name or "j[X]")

    @cached_property
    def hypothesis_holds(self) -> bool:
        """Whether ``(F×F)(X) ⊆ X`` (the textbook hypothesis for laxness)."""
        F = self.base.F
        X = set(self.pairs)
        return all((F(c), F(d)) in X for c, d in self.pairs)


def prenucleus_from_pairs(H: FSupLattice, X: Iterable[tuple]) -> PairPrenucleus:
    """The operator that identifies every pair of ``X`` in one step.

    Monotone and increasing by construction; ``.lax`` reports whether the
    lax condition holds and ``.hypothesis_holds`` whether ``X`` is closed
    under ``F×F``. Neither is assumed.
    """
    return PairPrenucleus(H, X)


def nucleus_closure(j: Prenucleus) -> Nucleus:
    """The least closure operator with the same fixpoints as ``j``.

    Computed by iterating ``j`` from ``x`` until it stabilises; on a finite
    carrier with ``j`` monotone and increasing this is the least fixpoint of
    ``j`` above ``x``.
    """
    if isinstance(j, Nucleus):
        return j

    def close(x):
        y = j(x)
        while y != x:
            x, y = y, j(y)
        return y

    n = Nucleus(j.base, close, name=f"n({j.name or 'j'})")
    n.prenucleus = j
    return n


class QuotientLattice(SupLattice):
    """Fixpoints of a nucleus, with join ``n(x ∨ y)`` and the base meet.

    Elements are the fixpoints themselves (canonical class representatives);
    the canonical order is the base order restricted to fixpoints. If the
    base cannot be enumerated the quotient stays lazy: joins, meets and
    membership still work, only listing is refused.
    """

    def __init__(self, base: SupLattice, nucleus: Prenucleus, name: str | None = None):
        self.base = base
        self.nucleus = nucleus
        self.name = name

    def __repr__(self):
        return f"Quotient({self.name or repr(self.base)})"

    @property
    def enumerable(self) -> bool:
        return self.base.enumerable

    @cached_property
    def _fixpoints(self) -> tuple:
        n = self.nucleus
        base = self.base
        return tuple(x for x in base.elements if n(x) == x)

    @property
    def size(self) -> int:
        if not self.base.enumerable:
            raise CarrierTooLarge(self.base.size, max_carrier())
        return len(self._fixpoints)

    @cached_property
    def elements(self) -> tuple:
        if len(self._fixpoints) > max_carrier():
            raise CarrierTooLarge(len(self._fixpoints), max_carrier())
        return self._fixpoints

    def _iter_elements(self):
        return iter(self._fixpoints)

    def __contains__(self, x):
        return x in self.base and self.nucleus(x) == x

    def label(self, x):
        return self.base.label(x)

    @cached_property
    def bottom(self):
        return self.nucleus(self.base.bottom)

    @property
    def top(self):
        return self.base.top

    def leq(self, x, y):
        return self.base.leq(x, y)

    def join(self, x, y):
        return self.nucleus(self.base.join(x, y))

    def meet(self, x, y):
        return self.base.meet(x, y)

    @cached_property
    def join_generators(self) -> tuple:
        n = self.nucleus
        return tuple(dict.fromkeys(n(g) for g in self.base.join_generators))

    def random_element(self, rng):
        if self.base.enumerable:
            return super().random_element(rng)
        return self.nucleus(self.base.random_element(rng))

    @cached_property
    def projection(self) -> JoinHom:
        """The surjection ``x ↦ n(x)`` from the base onto the quotient."""
        return JoinHom(self.base, self, self.nucleus, name="projection")

    @cached_property
    def inclusion(self) -> JoinHom:
        """Fixpoints back into the base (order-preserving; not join-preserving in general)."""
        return JoinHom(self, self.base, lambda x: x, name="inclusion")


class Quotient:
    """The F-sup-semilattice of fixpoints of a nucleus on ``H``.

    ``fss`` carries the induced operator ``n ∘ F``.
    """

    def __init__(self, H: FSupLattice, n: Prenucleus, name=None):
        if n.base is not H and n.lattice != H.lattice:
            raise CarrierMismatch("nucleus is defined on a different lattice")
        self.base = H
        self.nucleus = n
        self.carrier = QuotientLattice(H.lattice, n, name=name)
        F = H.F
        self.induced_F = JoinHom(self.carrier, self.carrier, lambda x: n(F(x)), name="n∘F")
        self.fss = FSupLattice(self.carrier, self.induced_F, name=name)

    @property
    def projection(self) -> JoinHom:
        return self.carrier.projection

    @property
    def inclusion(self) -> JoinHom:
        return self.carrier.inclusion

    def property_report(self) -> dict:
        """Exhaustive checks of the quotient's structural claims.

        Keys: ``induced_F_preserves_joins``, ``projection_preserves_joins``,
        ``projection_is_F_hom`` (``n∘F∘n = n∘F``), ``inclusion_condition`` (for fixpoints
        ``a, a'``: ``F(a) <= a'`` in the base implies ``n(F(a)) <= a'``, the
        embedding condition read for the inclusion), ``inclusion_lax`` and
        ``inclusion_embedding``.
        """
        from .morphisms import is_join_hom

        Q = self.carrier
        L = self.base.lattice
        n = self.nucleus
        F = self.base.F
        Fq = self.induced_F
        fix = Q.elements
        out = {}
        out["induced_F_preserves_joins"] = is_join_hom(Fq, Q, Q)
        out["projection_preserves_joins"] = is_join_hom(self.projection, L, Q)
        out["projection_surjective"] = set(n(x) for x in L.elements) == set(fix)
        out["projection_is_F_hom"] = all(n(F(x)) == Fq(n(x)) for x in L.elements)
        # Inclusion i: Q -> L; lax means F(i(a)) <= i(n(F(a))).
        out["inclusion_lax"] = all(L.leq(F(a), Fq(a)) for a in fix)
        out["inclusion_embedding"] = all(
            Q.leq(a, b) == L.leq(a, b) for a in fix for b in fix
        )
        out["inclusion_condition"] = all(
            (not L.leq(F(a), b)) or Q.leq(Fq(a), b) for a in fix for b in fix
        )
        return out


def quotient(H: FSupLattice, n: Prenucleus, name=None) -> Quotient:
    """Quotient of ``H`` by the nucleus ``n`` (a prenucleus is closed first)."""
    return Quotient(H, nucleus_closure(n), name=name)


def factor_through(
    n: Prenucleus,
    g: JoinHom,
    X: Iterable[tuple] = (),
    *,
    carrier: QuotientLattice | None = None,
    witnesses: Iterable | None = None,
) -> JoinHom:
    """The map ``ḡ`` on fixpoints with ``ḡ(n(a)) = g(a)``.

    Raises ``NotConstantOnX`` if ``g`` separates a pair of ``X``, and
    ``FiberConflict`` if ``g(a) != g(n(a))`` for some checked ``a``. All
    base elements are checked when the base is enumerable; otherwise the
    elements in ``witnesses`` (default: the base join generators).
    """
    n = nucleus_closure(n)
    if carrier is None:
        carrier = QuotientLattice(g.source, n)
    for c, d in X:
        if g(c) != g(d):
            raise NotConstantOnX((g.source.label(c), g.source.label(d)))
    if witnesses is None:
        base = carrier.base
        witnesses = base.elements if base.enumerable else base.join_generators
    for a in witnesses:
        na = n(a)
        ga, gna = g(a), g(na)
        if ga != gna:
            raise FiberConflict(a, na, ga, gna)
    return JoinHom(carrier, g.target, g, name=f"{g.name or 'g'}̄")


class Congruence:
    """A partition of a lattice's elements into blocks."""

    def __init__(self, base: SupLattice, blocks: Iterable[Iterable]):
        self.base = base
        blocks = [tuple(b) for b in blocks]
        self.blocks = tuple(sorted((tuple(sorted(b, key=base.index)) for b in blocks), key=lambda b: base.index(b[0])))
        self._block_of = {}
        for k, b in enumerate(self.blocks):
            for x in b:
                if x in self._block_of:
                    raise NotACongruence(f"{base.label(x)} appears in two blocks")
                self._block_of[x] = k
        for x in base.elements:
            if x not in self._block_of:
                raise NotACongruence(f"{base.label(x)} is in no block")

    def related(self, x, y) -> bool:
        return self._block_of[x] == self._block_of[y]

    def block(self, x) -> tuple:
        return self.blocks[self._block_of[x]]

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.base == other.base and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def witness(self):
        """A failure of join compatibility, or ``None``.

        Checks ``x θ y ⟹ x∨z θ y∨z``; in a finite lattice this (with the
        equivalence axioms) gives compatibility with arbitrary joins.
        """
        L = self.base
        for b in self.blocks:
            x = b[0]
            for y in b[1:]:
                for z in L.elements:
                    if not self.related(L.join(x, z), L.join(y, z)):
                        return (L.label(x), L.label(y), L.label(z))
        return None

    def is_F_congruence(self, F) -> bool:
        return all(self.related(F(b[0]), F(y)) for b in self.blocks for y in b[1:])


def nucleus_to_congruence(n: Prenucleus) -> Congruence:
    """``θ_n = {(a,b) | n(a) = n(b)}``."""
    L = n.lattice
    groups: dict = {}
    for x in L.elements:
        groups.setdefault(n(x), []).append(x)
    return Congruence(L, groups.values())


def congruence_to_nucleus(theta: Congruence, H: FSupLattice | None = None) -> Nucleus:
    """``j_θ(x) = ⋁{y | x θ y}``; raises ``NotACongruence`` on a bad partition."""
    w = theta.witness()
    if w is not None:
        raise NotACongruence(w)
    L = theta.base
    table = {x: L.join_all(theta.block(x)) for x in L.elements}
    return Nucleus(H if H is not None else FSupLattice.trivial(L), table.__getitem__, name="j_θ")


def same_operator(j1: Prenucleus, j2: Prenucleus) -> bool:
    return j1.lattice == j2.lattice and all(j1(x) == j2(x) for x in j1.lattice.elements)
