"""Three small worked examples, regenerated from first principles.

All three use the diamond ``G = {0 < a, b, c < 1}`` with the operator that
fixes ``a`` and swaps ``b`` and ``c``, the two-element chain ``L``, and the
frame ``J`` on ``{f2, f3, f4}`` with ``f2 S f3``, ``f3 S f2``, ``f4 S f4``.

* example 1: the join-homomorphisms ``G -> L``, the hom-frame relation ρ and
  the unit ``μ_H: H -> L^{J[H,L]}``;
* example 2: ``L^J`` with its operator ``F^J`` and the frame map
  ``ν_J: J -> J[L^J, L]``;
* example 3: the indicator tables behind ``J⊗H``, its size, and the unit
  ``η_H: H -> (J⊗H)^J``.

Each example yields tables that are compared cell by cell against reference
tables shipped in ``golden/``. Reference labels (``f1..f8``, ``α1..α8``)
are matched to computed values through their value rows, and a label-mapping
table is emitted alongside so the comparison is meaningful in canonical order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources

from .adjunctions import eta, mu, nu, tensor_power
from .constructions import frame_operator, hom_frame, hom_relation_matrix, indicator, indicator_eq, tensor
from .frames import Frame, is_frame_hom
from .morphisms import FSupLattice, JoinHom, enumerate_join_homs, is_f_homomorphism, is_in_E_leq
from .order import chain, validate_lattice
from .tables import Table, diff_tables, parse_tables, render_all


def diamond_fss() -> FSupLattice:
    """``H = (G, F)`` with ``F(a) = a``, ``F(b) = c``, ``F(c) = b``."""
    G = validate_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
    F = {G.element(x): G.element(y) for x, y in zip("0abc1", "0acb1")}
    return FSupLattice(G, F, name="H")


def two_chain():
    return chain(2)


def swap_frame() -> Frame:
    return Frame(["f2", "f3", "f4"], [("f2", "f3"), ("f3", "f2"), ("f4", "f4")])


def golden_text(n: int) -> str:
    return resources.files("tenselat").joinpath(f"golden/example{n}.txt").read_text(encoding="utf-8")


def golden_tables(n: int) -> dict[str, Table]:
    return parse_tables(golden_text(n))


def yes(b: bool) -> str:
    return "yes" if b else "no"


@dataclass
class ExampleResult:
    """Computed tables, informational tables, and diffs against the references."""

    number: int
    tables: list[Table]
    notes: list[Table] = field(default_factory=list)
    diffs: dict[str, list[str]] = field(default_factory=dict)
    # informational comparisons that do not decide pass/fail
    side_diffs: dict[str, list[str]] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not any(self.diffs.values())

    def table(self, name: str) -> Table:
        return next(t for t in self.tables + self.notes if t.name == name)

    def rendered(self) -> str:
        return render_all(self.tables)

    def report(self, show: bool = False) -> str:
        out = []
        if show:
            out.append(render_all(self.tables + self.notes))
        for t in self.tables:
            d = self.diffs.get(t.name, [])
            out.append(f"{'PASS' if not d else 'FAIL'}  example {self.number}: {t.name}")
            out.extend(f"      {line}" for line in d)
        for name, d in self.side_diffs.items():
            out.append(f"note  example {self.number}: {name} vs reference rho: {len(d)} difference(s)")
            out.extend(f"      {line}" for line in d)
        return "\n".join(out)


def _compare(result: ExampleResult) -> ExampleResult:
    golden = golden_tables(result.number)
    for t in result.tables:
        g = golden.get(t.name)
        result.diffs[t.name] = ["no reference table"] if g is None else diff_tables(g, t)
    return result


def _label_by_values(reference: Table):
    """Map a value row (tuple of cells) to its reference label."""
    return {tuple(cells): label for label, cells in reference.rows}


# ---------------------------------------------------------------------------


def example1() -> ExampleResult:
    t0 = time.perf_counter()
    H = diamond_fss()
    G, L = H.lattice, two_chain()
    ref = golden_tables(1)["maps"]
    by_values = _label_by_values(ref)
    homs = enumerate_join_homs(G, L)
    cols = [G.label(x) for x in G.elements]

    def row(h):
        return tuple(L.label(h(x)) for x in G.elements)

    names = {}
    for k, h in enumerate(homs):
        names[h] = by_values.get(row(h), f"h{k + 1}")
    order = sorted(homs, key=lambda h: (names[h][0] != "f", names[h]))

    maps = Table("maps", cols, corner="map")
    for h in order:
        maps.add(names[h], row(h))
    mapping = Table("label map", ["values", "label"], corner="canonical")
    for k, h in enumerate(homs):
        mapping.add(str(k + 1), [h.label(), names[h]])

    JHL = hom_frame(H, L, lazy=False)
    labs = [names[h] for h in order]
    rho = Table("rho", labs, corner="rho")
    for a in order:
        rho.add(names[a], ["1" if JHL.related(a, b) else "0" for b in order])

    m = mu(H, L)
    muT = Table("mu", labs, corner="x")
    pos = {h: p for p, h in enumerate(JHL.nodes)}
    for x in G.elements:
        vec = m(x)
        muT.add(f"mu({G.label(x)})", [L.label(vec[pos[h]]) for h in order])

    target = frame_operator(L, JHL)
    injective = len({m(x) for x in G.elements}) == G.size
    ver = Table("verdicts", ["value"], corner="claim")
    ver.add("join-homs G->L", [str(len(homs))])
    ver.add("rho pairs", [str(JHL.pair_count())])
    ver.add("mu injective", [yes(injective)])
    ver.add("mu F-homomorphism", [yes(is_f_homomorphism(m, H, target))])
    ver.add("mu in E_leq", [yes(is_in_E_leq(m, H, target))])

    # the relation recomputed over the reference rows themselves, join-preserving or not
    tab = [
        JoinHom.from_table(G, L, [L.element(v) for v in cells], name=label) for label, cells in ref.rows
    ]
    R = hom_relation_matrix(H, L, tab)
    rho_tab = Table("rho over reference rows", [h.name for h in tab], corner="rho")
    for p, a in enumerate(tab):
        rho_tab.add(a.name, ["1" if R[p, q] else "0" for q in range(len(tab))])

    res = ExampleResult(1, [maps, rho, muT, ver], [mapping, rho_tab])
    _compare(res)
    res.side_diffs[rho_tab.name] = diff_tables(golden_tables(1)["rho"], rho_tab)
    res.seconds = time.perf_counter() - t0
    return res


def example2() -> ExampleResult:
    t0 = time.perf_counter()
    L, J = two_chain(), swap_frame()
    LJ = frame_operator(L, J)
    P = LJ.lattice
    ref = golden_tables(2)["L^J"]
    by_values = _label_by_values(ref)
    cols = list(J.nodes)

    def row(x):
        return tuple(L.label(v) for v in x)

    names = {x: by_values.get(row(x), P.label(x)) for x in P.elements}
    order = sorted(P.elements, key=lambda x: (names[x][0] != "α", names[x]))

    A = Table("L^J", cols, corner="element")
    FJ = Table("F^J", cols + ["image"], corner="element")
    mapping = Table("label map", ["element", "label"], corner="canonical")
    for k, x in enumerate(P.elements):
        mapping.add(str(k + 1), [P.label(x), names[x]])
    for x in order:
        A.add(names[x], row(x))
        y = LJ.F(x)
        FJ.add(names[x], list(row(y)) + [names[y]])

    n = nu(J, L)
    target = n.target
    nuT = Table("nu", ["S", "rho'"], corner="pair")
    reflects = True
    for i in J.nodes:
        for k in J.nodes:
            s, r = J.related(i, k), target.related(n(i), n(k))
            reflects &= s == r
            nuT.add(f"({i},{k})", [yes(s), yes(r)])
    ver = Table("verdicts", ["value"], corner="claim")
    ver.add("|L^J|", [str(P.size)])
    ver.add("nu frame map", [yes(is_frame_hom(n, J, target))])
    ver.add("nu reflects S", [yes(reflects)])

    res = ExampleResult(2, [A, FJ, nuT, ver], [mapping])
    _compare(res)
    res.seconds = time.perf_counter() - t0
    return res


def example3() -> ExampleResult:
    t0 = time.perf_counter()
    H, J = diamond_fss(), swap_frame()
    G = H.lattice
    cols = list(J.nodes)
    t1 = Table("x_iS", cols, corner="element")
    t2 = Table("F(x)_i=", cols, corner="element")
    t3 = Table("x_iS v F(x)_i=", cols, corner="element")
    for x in G.elements:
        lx = G.label(x)
        for i in J.nodes:
            a = indicator(G, J, x, i)
            b = indicator_eq(G, J, H.F(x), i)
            c = tuple(G.join(u, v) for u, v in zip(a, b))
            t1.add(f"{lx}_{{{i}S}}", [G.label(v) for v in a])
            t2.add(f"F({lx})_{{{i}=}}", [G.label(v) for v in b])
            t3.add(f"{lx}_{{{i}S}} v F({lx})_{{{i}=}}", [G.label(v) for v in c])

    T = tensor(J, H)
    TJ = tensor_power(J, H)
    sizes = Table("sizes", ["value"], corner="structure")
    sizes.add("|J⊗H|", [str(T.size)])
    sizes.add("|(J⊗H)^J|", [str(TJ.lattice.size)])

    e = eta(J, H)

    def cells(vec):
        return [f"[{T.label(v)}]" for v in vec]

    e1 = Table("eta", cols, corner="x")
    e2 = Table("eta(F(x))", cols, corner="x")
    e3 = Table("F^J(eta(x))", cols, corner="x")
    for x in G.elements:
        lx = G.label(x)
        e1.add(f"eta({lx})", cells(e(x)))
        e2.add(f"eta(F({lx}))", cells(e(H.F(x))))
        e3.add(f"F^J(eta({lx}))", cells(TJ.F(e(x))))

    classes = Table("tensor elements", ["fixpoint"], corner="k")
    for k, v in enumerate(T.elements):
        classes.add(str(k + 1), [T.label(v)])

    ver = Table("verdicts", ["value"], corner="claim")
    ver.add("eta injective", [yes(len({e(x) for x in G.elements}) == G.size)])
    ver.add("eta F-homomorphism", [yes(is_f_homomorphism(e, H, TJ))])
    ver.add("eta in E_leq", [yes(is_in_E_leq(e, H, TJ))])

    res = ExampleResult(3, [t1, t2, t3, sizes, e1, e2, e3, ver], [classes])
    _compare(res)
    res.seconds = time.perf_counter() - t0
    return res


EXAMPLES = {1: example1, 2: example2, 3: example3}


def run_example(n: int) -> ExampleResult:
    return EXAMPLES[n]()
