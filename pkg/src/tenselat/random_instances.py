"""Seeded random lattices, operators, frames and morphisms for law checking.

Lattices are intersection-closed families of subsets of a small ground set
(always including the ground set), ordered by inclusion; every finite
lattice arises this way. Operators and morphisms are drawn uniformly from
the full list of join-homomorphisms, so they are exact, not approximate.

Instances whose derived structures would exceed a work budget are rejected
and redrawn; the number of rejections is reported with the instances.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .frames import Frame, FrameHom
from .morphisms import FSupLattice, JoinHom, enumerate_join_homs, is_lax_morphism
from .order import FiniteLattice, validate_lattice


def random_lattice(rng: np.random.Generator, max_size: int = 6, ground: int = 3) -> FiniteLattice:
    while True:
        k = int(rng.integers(0, 2 ** ground))
        family = {frozenset(range(ground))}
        for _ in range(k):
            family.add(frozenset(np.flatnonzero(rng.random(ground) < 0.5).tolist()))
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(list(family), 2):
                c = a & b
                if c not in family:
                    family.add(c)
                    changed = True
        if len(family) <= max_size:
            break
    sets = sorted(family, key=lambda s: (len(s), sorted(s)))
    labels = [f"e{i}" for i in range(len(sets))]
    pairs = [
        (labels[i], labels[j])
        for i, a in enumerate(sets)
        for j, b in enumerate(sets)
        if i != j and a < b
    ]
    return validate_lattice(labels, pairs)


def random_join_hom(rng, G, L) -> JoinHom:
    homs = enumerate_join_homs(G, L)
    return homs[int(rng.integers(len(homs)))]


def random_fss(rng, L, name=None) -> FSupLattice:
    return FSupLattice(L, random_join_hom(rng, L, L), name=name)


def random_frame(rng, max_nodes: int = 4, p: float = 0.35, prefix: str = "t") -> Frame:
    n = int(rng.integers(1, max_nodes + 1))
    nodes = [f"{prefix}{i}" for i in range(n)]
    rel = [(a, b) for a in nodes for b in nodes if rng.random() < p]
    return Frame(nodes, rel)


def random_frame_hom(rng, J1: Frame, max_nodes: int = 4, p: float = 0.2) -> FrameHom:
    """A relation-preserving map into a fresh frame containing the image of ``S1``."""
    n = int(rng.integers(1, max_nodes + 1))
    nodes = [f"u{i}" for i in range(n)]
    table = {t: nodes[int(rng.integers(n))] for t in J1.nodes}
    rel = {(table[a], table[b]) for a, b in J1.rel}
    rel |= {(a, b) for a in nodes for b in nodes if rng.random() < p}
    return FrameHom(J1, Frame(nodes, rel), table)


def random_lax(rng, H1: FSupLattice, H2: FSupLattice) -> JoinHom:
    """Uniform among lax morphisms (the zero map is always one)."""
    homs = [h for h in enumerate_join_homs(H1.lattice, H2.lattice) if is_lax_morphism(h, H1, H2)]
    return homs[int(rng.integers(len(homs)))]


@dataclass
class Instance:
    """One random configuration for the adjunction law suite."""

    index: int
    H: FSupLattice
    J: Frame
    L: FiniteLattice
    H2: FSupLattice
    f_lax: JoinHom  # H -> H2, lax
    t: FrameHom  # J -> J2
    L2: FiniteLattice
    g: JoinHom  # L -> L2
    notes: dict = field(default_factory=dict)

    def describe(self) -> str:
        return (
            f"#{self.index}: |G|={self.H.lattice.size} |T|={len(self.J.nodes)} |S|={len(self.J.rel)} "
            f"|L|={self.L.size} |G2|={self.H2.lattice.size} |T2|={len(self.t.target.nodes)} |L2|={self.L2.size}"
        )


@dataclass
class Budget:
    """Work limits for rejection sampling (sizes of the derived structures)."""

    power: int = 256  # |G|^|T|, |L|^|T| and the analogous target sizes
    homs: int = 64  # |Hom(G, L)| and |Hom(G, J⊗H)|
    tensor: int = 48  # |J⊗H|

    def admits(self, inst: Instance) -> tuple[bool, str]:
        from .constructions import tensor

        G, L, T = inst.H.lattice, inst.L, len(inst.J.nodes)
        T2 = len(inst.t.target.nodes)
        for name, val in [
            ("|G|^|T|", G.size ** T),
            ("|G2|^|T|", inst.H2.lattice.size ** T),
            ("|G|^|T2|", G.size ** T2),
            ("|L|^|T|", L.size ** T),
            ("|L2|^|T|", inst.L2.size ** T),
            ("|L|^|T2|", L.size ** T2),
        ]:
            if val > self.power:
                return False, f"{name}={val}"
        for name, a, b in [("Hom(G,L)", G, L), ("Hom(G,L2)", G, inst.L2), ("Hom(G2,L)", inst.H2.lattice, L)]:
            if len(enumerate_join_homs(a, b, limit=10 * self.homs)) > self.homs:
                return False, name
        for JJ, HH in [(inst.J, inst.H), (inst.t.target, inst.H), (inst.J, inst.H2)]:
            TT = tensor(JJ, HH)
            if TT.size > self.tensor:
                return False, "|J⊗H|"
            if len(enumerate_join_homs(HH.lattice, TT, limit=10 * self.homs)) > self.homs:
                return False, "Hom(G,J⊗H)"
        return True, ""


def draw_instance(rng, index: int, max_lattice: int = 6, max_nodes: int = 4) -> Instance:
    G = random_lattice(rng, max_lattice)
    H = random_fss(rng, G, name=f"H{index}")
    J = random_frame(rng, max_nodes)
    L = random_lattice(rng, max_lattice)
    G2 = random_lattice(rng, max_lattice)
    H2 = random_fss(rng, G2, name=f"H{index}'")
    f = random_lax(rng, H, H2)
    t = random_frame_hom(rng, J, max_nodes)
    L2 = random_lattice(rng, max_lattice)
    g = random_join_hom(rng, L, L2)
    return Instance(index, H, J, L, H2, f, t, L2, g)


def random_instances(seed: int, count: int, budget: Budget | None = None, **kw):
    """``count`` admissible instances and the list of rejection reasons."""
    from .errors import CarrierTooLarge

    budget = budget or Budget()
    rng = np.random.default_rng(seed)
    out, rejected = [], []
    while len(out) < count:
        inst = draw_instance(rng, len(out), **kw)
        try:
            ok, why = budget.admits(inst)
        except CarrierTooLarge:
            ok, why = False, "carrier cap"
        if ok:
            out.append(inst)
        else:
            rejected.append(why)
    return out, rejected
