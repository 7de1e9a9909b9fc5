"""Units and counits of the three adjoint situations, and their law checks.

I   ``(η, ε)``:  ``η_H: H -> (J⊗H)^J``,   ``ε_L: J⊗L^J -> L``
II  ``(φ, ψ)``:  ``φ_J: J -> J[H, J⊗H]``,  ``ψ_L: J[H,L]⊗H -> L``
III ``(ν, μ)``:  ``ν_J: J -> J[L^J, L]``,  ``μ_H: H -> L^{J[H,L]}``

Every check compares two composites elementwise. When a domain can be listed
the comparison is exhaustive. Otherwise it runs over the domain's join generators,
which is complete for join-preserving composites, plus optional seeded
samples. Each verdict records which mode was used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from .constructions import (
    HomFrame,
    LazyHomFrame,
    TensorLattice,
    backward_powerset,
    frame_operator,
    hom_frame,
    hom_frame_map_cod,
    hom_frame_map_dom,
    hom_power_map,
    tensor,
    tensor_map_frame,
    tensor_map_fss,
)
from .errors import CarrierTooLarge, FiberConflict
from .frames import Frame, FrameHom, is_frame_hom
from .morphisms import FSupLattice, JoinHom, is_join_hom, is_lax_morphism
from .nuclei import factor_through
from .order import SupLattice, power_lattice


# ---------------------------------------------------------------------------
# reports


@dataclass
class LawVerdict:
    law: str
    passed: bool
    checked: int
    mode: str = "exhaustive"
    witness: Any = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"  [{status}] {self.law}  ({self.checked} checked, {self.mode})"
        if self.witness is not None:
            s += f"\n         witness: {self.witness}"
        return s


@dataclass
class AdjunctionReport:
    which: str
    instance: str
    verdicts: list[LawVerdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def add(self, v: LawVerdict) -> LawVerdict:
        self.verdicts.append(v)
        return v

    def render(self) -> str:
        head = f"{self.which}: {self.instance} -> {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + [v.line() for v in self.verdicts])


def compare(law: str, points: Iterable, lhs: Callable, rhs: Callable, *, mode="exhaustive", label=repr) -> LawVerdict:
    """Evaluate ``lhs(p) == rhs(p)`` on every point; stop at the first failure."""
    n = 0
    for p in points:
        n += 1
        a, b = lhs(p), rhs(p)
        if a != b:
            return LawVerdict(law, False, n, mode, (label(p), a, b))
    return LawVerdict(law, True, n, mode)


def check_points(L: SupLattice, rng: np.random.Generator | None = None, samples: int = 0):
    """Points to check a map on: all elements if listable, else generators + samples."""
    if L.enumerable:
        return list(L.elements), "exhaustive"
    pts = list(L.join_generators)
    if rng is not None:
        pts += [L.random_element(rng) for _ in range(samples)]
    return list(dict.fromkeys(pts)), "generators" + ("+samples" if samples else "")


def same_hom(a: JoinHom, b: JoinHom) -> bool:
    """Pointwise equality on the (common) source, via generators if unlistable."""
    pts, _ = check_points(a.source)
    return all(a(x) == b(x) for x in pts)


# ---------------------------------------------------------------------------
# I: η, ε


def tensor_power(J: Frame, H: FSupLattice) -> FSupLattice:
    """``(J⊗H)^J``."""
    return frame_operator(tensor(J, H), J)


def eta(J: Frame, H: FSupLattice) -> JoinHom:
    """``η_H(x)(i) = n(j[J,H])(x_{i=})``, a map ``H -> (J⊗H)^J``."""
    T = tensor(J, H)
    target = tensor_power(J, H)
    return JoinHom(H.lattice, target.lattice, lambda x: tuple(T.unit(x, i) for i in J.nodes), name="η")


def evaluation_map(J: Frame, L: SupLattice) -> JoinHom:
    """``e_L(x̄) = ⋁_i x̄(i)(i)`` on ``(L^T)^T``."""
    LJ = frame_operator(L, J)
    T = tensor(J, LJ)
    n = len(J.nodes)
    return JoinHom(T.base, L, lambda xb: L.join_all(xb[p][p] for p in range(n)), name="e")


def epsilon(J: Frame, L: SupLattice, *, rng=None, samples: int = 0) -> JoinHom:
    """``ε_L: J⊗L^J -> L``, obtained by factoring ``e_L`` through the closure."""
    LJ = frame_operator(L, J)
    T = tensor(J, LJ)
    pts, mode = check_points(T.base, rng, samples)
    out = factor_through(T.nucleus, evaluation_map(J, L), T.pairs or (), carrier=T, witnesses=pts)
    out.name = "ε"
    out.fibre_check = (len(pts), mode)
    return out


# ---------------------------------------------------------------------------
# II: φ, ψ


def phi(J: Frame, H: FSupLattice) -> FrameHom:
    """``φ_J(i)(x) = n(j[J,H])(x_{i=})``, a frame map ``J -> J[H, J⊗H]``."""
    T = tensor(J, H)
    G = H.lattice
    target = hom_frame(H, T)
    table = {
        i: JoinHom.from_table(G, T, [T.unit(x, i) for x in G.elements]) for i in J.nodes
    }
    return FrameHom(J, target, table, name="φ")


def collect_map(H: FSupLattice, L: SupLattice) -> JoinHom:
    """``f_L(x) = ⋁_α α(x(α))`` on ``G^{J[H,L]}``."""
    JHL = hom_frame(H, L)
    if isinstance(JHL, LazyHomFrame):
        raise CarrierTooLarge(-1, "hom set not listable")
    T = tensor(JHL, H)
    homs = JHL.nodes
    G = H.lattice
    bot = G.bottom
    return JoinHom(
        T.base, L, lambda x: L.join_all(a(v) for a, v in zip(homs, x) if v != bot), name="f"
    )


def psi(H: FSupLattice, L: SupLattice, *, rng=None, samples: int = 0) -> JoinHom:
    """``ψ_L: J[H,L]⊗H -> L``, obtained by factoring ``f_L`` through the closure."""
    JHL = hom_frame(H, L)
    f = collect_map(H, L)
    T = tensor(JHL, H)
    pts, mode = check_points(T.base, rng, samples)
    out = factor_through(T.nucleus, f, T.pairs or (), carrier=T, witnesses=pts)
    out.name = "ψ"
    out.fibre_check = (len(pts), mode)
    return out


# ---------------------------------------------------------------------------
# III: ν, μ


def evaluation_at(J: Frame, L: SupLattice, i) -> JoinHom:
    P = power_lattice(L, J.nodes)
    p = J.position(i)
    return JoinHom(P, L, lambda x: x[p], name=f"ev_{J.label(i)}")


def nu(J: Frame, L: SupLattice) -> FrameHom:
    """``ν_J(i)(x) = x(i)``, a frame map ``J -> J[L^J, L]``."""
    LJ = frame_operator(L, J)
    target = hom_frame(LJ, L)
    table = {i: evaluation_at(J, L, i) for i in J.nodes}
    if isinstance(target, HomFrame):
        # swap in the canonical node objects so the map's values are nodes
        table = {i: target.nodes[target.position(h)] for i, h in table.items()}
    return FrameHom(J, target, table, name="ν")


def mu(H: FSupLattice, L: SupLattice) -> JoinHom:
    """``μ_H(x)(α) = α(x)``, a map ``H -> L^{J[H,L]}``."""
    JHL = hom_frame(H, L)
    if isinstance(JHL, LazyHomFrame):
        raise CarrierTooLarge(-1, "hom set not listable")
    target = frame_operator(L, JHL, check=False)
    homs = JHL.nodes
    return JoinHom(H.lattice, target.lattice, lambda x: tuple(a(x) for a in homs), name="μ")


# ---------------------------------------------------------------------------
# triangle identities


def _unit_laws_I(rep, J, H, L, rng, samples):
    e = eta(J, H)
    TJ = tensor_power(J, H)
    rep.add(LawVerdict("η is lax", is_lax_morphism(e, H, TJ), H.lattice.size))
    eps = epsilon(J, L, rng=rng, samples=samples)
    dom = eps.source
    if dom.enumerable:
        rep.add(LawVerdict("ε preserves joins", is_join_hom(eps, dom, L), dom.size))
    else:
        pts, mode = check_points(dom, rng, samples)
        ok = eps(dom.bottom) == L.bottom and all(
            eps(dom.join(x, y)) == L.join(eps(x), eps(y)) for x in pts for y in pts
        )
        rep.add(LawVerdict("ε preserves joins", ok, len(pts) ** 2, mode))
    k, mode = eps.fibre_check
    rep.add(LawVerdict("ε well defined (e_L constant on closure fibres)", True, k, mode))


def check_triangles_I(J: Frame, H: FSupLattice, L: SupLattice, *, rng=None, samples: int = 8) -> AdjunctionReport:
    """``ε_{J⊗H} ∘ (J⊗η_H) = id`` on ``J⊗H`` and ``(ε_L)^J ∘ η_{L^J} = id`` on ``L^J``."""
    rep = AdjunctionReport("I", f"J={J!r}, H={H!r}, L={L!r}")
    _unit_laws_I(rep, J, H, L, rng, samples)

    T = tensor(J, H)
    TJ = tensor_power(J, H)
    Jeta = tensor_map_fss(J, eta(J, H), H, TJ)
    epsT = epsilon(J, T, rng=rng, samples=samples)
    pts, mode = check_points(T, rng, samples)
    rep.add(compare("ε_{J⊗H} ∘ (J⊗η_H) = id", pts, lambda q: epsT(Jeta(q)), lambda q: q, mode=mode, label=T.label))

    LJ = frame_operator(L, J)
    etaLJ = eta(J, LJ)
    epsL = epsilon(J, L, rng=rng, samples=samples)
    P = LJ.lattice
    pts, mode = check_points(P, rng, samples)
    rep.add(
        compare(
            "(ε_L)^J ∘ η_{L^J} = id",
            pts,
            lambda x: tuple(epsL(v) for v in etaLJ(x)),
            lambda x: x,
            mode=mode,
            label=P.label,
        )
    )
    return rep


def check_triangles_II(J: Frame, H: FSupLattice, L: SupLattice, *, rng=None, samples: int = 8) -> AdjunctionReport:
    """``ψ_{J⊗H} ∘ (φ_J⊗H) = id`` on ``J⊗H`` and ``J[H,ψ_L] ∘ φ_{J[H,L]} = id`` on ``J[H,L]``."""
    rep = AdjunctionReport("II", f"J={J!r}, H={H!r}, L={L!r}")
    T = tensor(J, H)
    ph = phi(J, H)
    rep.add(LawVerdict("φ preserves the relation", is_frame_hom(ph, J, ph.target), len(J.rel)))
    phH = tensor_map_frame(ph, H)
    psT = psi(H, T, rng=rng, samples=samples)
    pts, mode = check_points(T, rng, samples)
    rep.add(compare("ψ_{J⊗H} ∘ (φ_J⊗H) = id", pts, lambda q: psT(phH(q)), lambda q: q, mode=mode, label=T.label))

    JHL = hom_frame(H, L)
    psL = psi(H, L, rng=rng, samples=samples)
    dom = psL.source
    if dom.enumerable:
        rep.add(LawVerdict("ψ preserves joins", is_join_hom(psL, dom, L), dom.size))
    else:
        qs, qmode = check_points(dom, rng, samples)
        ok = psL(dom.bottom) == L.bottom and all(
            psL(dom.join(x, y)) == L.join(psL(x), psL(y)) for x in qs for y in qs
        )
        rep.add(LawVerdict("ψ preserves joins", ok, len(qs) ** 2, qmode))
    k, fmode = psL.fibre_check
    rep.add(LawVerdict("ψ well defined (f_L constant on closure fibres)", True, k, fmode))
    TT = tensor(JHL, H)
    G = H.lattice
    # J[H,ψ_L](φ(α)) = ψ_L ∘ φ(α), which must equal α as a map G -> L
    rep.add(
        compare(
            "J[H,ψ_L] ∘ φ_{J[H,L]} = id",
            JHL.nodes,
            lambda a: tuple(psL(TT.unit(x, a)) for x in G.elements),
            lambda a: a.values,
            label=JHL.label,
        )
    )
    return rep


def check_triangles_III(J: Frame, H: FSupLattice, L: SupLattice, *, rng=None, samples: int = 8) -> AdjunctionReport:
    """``L^{ν_J} ∘ μ_{L^J} = id`` on ``L^J`` and ``J[μ_H,L] ∘ ν_{J[H,L]} = id`` on ``J[H,L]``."""
    rep = AdjunctionReport("III", f"J={J!r}, H={H!r}, L={L!r}")
    LJ = frame_operator(L, J)
    n = nu(J, L)
    rep.add(LawVerdict("ν preserves the relation", is_frame_hom(n, J, n.target), len(J.rel)))
    P = LJ.lattice
    pts, mode = check_points(P, rng, samples)
    hf = hom_frame(LJ, L)
    if isinstance(hf, HomFrame):
        m = mu(LJ, L)
        idx = [hf.position(n(i)) for i in J.nodes]
        lhs = lambda x: tuple(m(x)[p] for p in idx)
        law = "L^{ν_J} ∘ μ_{L^J} = id"
    else:
        # μ(x) is evaluated only at the nodes ν(i) the composite reads
        lhs = lambda x: tuple(n(i)(x) for i in J.nodes)
        law = "L^{ν_J} ∘ μ_{L^J} = id (μ evaluated lazily at ν(i))"
    rep.add(compare(law, pts, lhs, lambda x: x, mode=mode, label=P.label))

    JHL = hom_frame(H, L)
    m = mu(H, L)
    rep.add(LawVerdict("μ is lax", is_lax_morphism(m, H, frame_operator(L, JHL, check=False)), H.lattice.size))
    N = len(JHL.nodes)
    G = H.lattice
    # ν_{J[H,L]}(α) evaluates at α; J[μ_H,L] precomposes with μ_H
    rep.add(
        compare(
            "J[μ_H,L] ∘ ν_{J[H,L]} = id",
            range(N),
            lambda p: tuple(m(x)[p] for x in G.elements),
            lambda p: JHL.nodes[p].values,
            label=lambda p: JHL.label(JHL.nodes[p]),
        )
    )
    return rep


def check_triangles(which: str, J: Frame, H: FSupLattice, L: SupLattice, **kw) -> AdjunctionReport:
    """Both triangle identities of adjunction ``which`` (``"I"``, ``"II"`` or ``"III"``).

    A fibre conflict while building a counit is reported as a failed law,
    not raised.
    """
    fn = {"I": check_triangles_I, "II": check_triangles_II, "III": check_triangles_III}[which]
    try:
        return fn(J, H, L, **kw)
    except FiberConflict as exc:
        rep = AdjunctionReport(which, f"J={J!r}, H={H!r}, L={L!r}")
        rep.add(LawVerdict("counit well defined", False, 0, "factorisation", exc.witness))
        return rep


# ---------------------------------------------------------------------------
# naturality


def naturality_eta(J: Frame, f: JoinHom, H1: FSupLattice, H2: FSupLattice) -> LawVerdict:
    """``(J⊗f)^J ∘ η_{H1} = η_{H2} ∘ f``."""
    Jf = tensor_map_fss(J, f, H1, H2)
    e1, e2 = eta(J, H1), eta(J, H2)
    return compare(
        "η natural: (J⊗f)^J ∘ η_{H1} = η_{H2} ∘ f",
        H1.lattice.elements,
        lambda x: tuple(Jf(v) for v in e1(x)),
        lambda x: e2(f(x)),
        label=H1.lattice.label,
    )


def naturality_epsilon(J: Frame, f: JoinHom, *, rng=None, samples: int = 8) -> LawVerdict:
    """``ε_{L2} ∘ (J⊗f^J) = f ∘ ε_{L1}`` for a join-hom ``f: L1 -> L2``."""
    L1, L2 = f.source, f.target
    L1J, L2J = frame_operator(L1, J), frame_operator(L2, J)
    Jf = tensor_map_fss(J, hom_power_map(f, J), L1J, L2J)
    e1 = epsilon(J, L1, rng=rng, samples=samples)
    e2 = epsilon(J, L2, rng=rng, samples=samples)
    dom = tensor(J, L1J)
    pts, mode = check_points(dom, rng, samples)
    return compare(
        "ε natural: ε_{L2} ∘ (J⊗f^J) = f ∘ ε_{L1}", pts, lambda q: e2(Jf(q)), lambda q: f(e1(q)), mode=mode, label=dom.label
    )


def naturality_phi(t: FrameHom, H: FSupLattice) -> LawVerdict:
    """``J[H, t⊗H] ∘ φ_{J1} = φ_{J2} ∘ t``."""
    tH = tensor_map_frame(t, H)
    p1, p2 = phi(t.source, H), phi(t.target, H)
    G = H.lattice
    return compare(
        "φ natural: J[H,t⊗H] ∘ φ_{J1} = φ_{J2} ∘ t",
        t.source.nodes,
        lambda i: tuple(tH(p1(i)(x)) for x in G.elements),
        lambda i: tuple(p2(t(i))(x) for x in G.elements),
        label=t.source.label,
    )


def naturality_psi(H: FSupLattice, f: JoinHom, *, rng=None, samples: int = 8) -> LawVerdict:
    """``ψ_{L2} ∘ (J[H,f]⊗H) = f ∘ ψ_{L1}`` for a join-hom ``f: L1 -> L2``."""
    L1, L2 = f.source, f.target
    Jf = hom_frame_map_cod(H, f)
    JfH = tensor_map_frame(Jf, H)
    s1 = psi(H, L1, rng=rng, samples=samples)
    s2 = psi(H, L2, rng=rng, samples=samples)
    dom = s1.source
    pts, mode = check_points(dom, rng, samples)
    return compare(
        "ψ natural: ψ_{L2} ∘ (J[H,f]⊗H) = f ∘ ψ_{L1}", pts, lambda q: s2(JfH(q)), lambda q: f(s1(q)), mode=mode, label=dom.label
    )


def naturality_nu(t: FrameHom, L: SupLattice) -> LawVerdict:
    """``J[L^t, L] ∘ ν_{J1} = ν_{J2} ∘ t``."""
    J1, J2 = t.source, t.target
    Lt = backward_powerset(L, t)
    n1, n2 = nu(J1, L), nu(J2, L)
    P2 = power_lattice(L, J2.nodes)
    pts, mode = check_points(P2)
    # J[L^t, L](ν(i)) = ν(i) ∘ L^t, compared with ν(t(i)) as maps L^{T2} -> L
    return compare(
        "ν natural: J[L^t,L] ∘ ν_{J1} = ν_{J2} ∘ t",
        J1.nodes,
        lambda i: tuple(n1(i)(Lt(x)) for x in pts),
        lambda i: tuple(n2(t(i))(x) for x in pts),
        mode=mode,
        label=J1.label,
    )


def naturality_mu(f: JoinHom, H1: FSupLattice, H2: FSupLattice, L: SupLattice) -> LawVerdict:
    """``L^{J[f,L]} ∘ μ_{H1} = μ_{H2} ∘ f``."""
    Jf = hom_frame_map_dom(f, H1, H2, L)
    back = backward_powerset(L, Jf)
    m1, m2 = mu(H1, L), mu(H2, L)
    return compare(
        "μ natural: L^{J[f,L]} ∘ μ_{H1} = μ_{H2} ∘ f",
        H1.lattice.elements,
        lambda x: back(m1(x)),
        lambda x: m2(f(x)),
        label=H1.lattice.label,
    )


NATURALITY = {
    "eta": naturality_eta,
    "epsilon": naturality_epsilon,
    "phi": naturality_phi,
    "psi": naturality_psi,
    "nu": naturality_nu,
    "mu": naturality_mu,
}


def check_naturality(which: str, *args, **kw) -> AdjunctionReport:
    """Run one naturality square; ``which`` is a key of ``NATURALITY``."""
    rep = AdjunctionReport(f"naturality[{which}]", ", ".join(repr(a) for a in args))
    try:
        rep.add(NATURALITY[which](*args, **kw))
    except FiberConflict as exc:
        rep.add(LawVerdict(f"{which} natural: factorised map well defined", False, 0, "factorisation", exc.witness))
    return rep


def instance_reports(inst, *, rng=None, samples: int = 4) -> list[AdjunctionReport]:
    """All triangle identities and naturality squares for one random instance."""
    J, H, L = inst.J, inst.H, inst.L
    reports = [check_triangles(w, J, H, L, rng=rng, samples=samples) for w in ("I", "II", "III")]
    reports += [
        check_naturality("eta", J, inst.f_lax, H, inst.H2),
        check_naturality("epsilon", J, inst.g, rng=rng, samples=samples),
        check_naturality("phi", inst.t, H),
        check_naturality("psi", H, inst.g, rng=rng, samples=samples),
        check_naturality("nu", inst.t, L),
        check_naturality("mu", inst.f_lax, H, inst.H2, L),
    ]
    for r in reports:
        r.instance = inst.describe()
    return reports
