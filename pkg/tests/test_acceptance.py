"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line with its timing
and limit. Run ``pytest tests/test_acceptance.py -v -s`` to see the lines, or
``python tests/test_acceptance.py`` for the bare summary.

Criteria 1 and 3 compare against hand-transcribed reference tables that
contain entries which cannot be produced by the definitions (maps that do not
preserve joins, an eta cell below its own argument). They are expected to
fail; the README lists the exact cells.
"""
import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles as O  # noqa: E402
from tenselat.adjunctions import eta, instance_reports, mu, nu, tensor_power  # noqa: E402
from tenselat.constructions import (  # noqa: E402
    backward_powerset,
    forward_powerset,
    frame_operator,
    hom_frame,
    tensor,
)
from tenselat.morphisms import enumerate_join_homs, is_f_homomorphism, is_in_E_leq  # noqa: E402
from tenselat.nuclei import (  # noqa: E402
    congruence_to_nucleus,
    nucleus_closure,
    nucleus_to_congruence,
    prenucleus_from_pairs,
    quotient,
    same_operator,
)
from tenselat.order import chain, power_lattice, validate_lattice  # noqa: E402
from tenselat.random_instances import (  # noqa: E402
    random_frame,
    random_frame_hom,
    random_fss,
    random_instances,
    random_lattice,
)
from tenselat.worked_examples import diamond_fss, example3, golden_tables, swap_frame, two_chain  # noqa: E402


def verdict(n, ok, seconds, limit, detail=""):
    ok_time = seconds < limit
    status = "PASS" if ok and ok_time else "FAIL"
    line = f"criterion {n}: {status}  ({seconds:.2f}s, limit {limit:g}s)"
    if detail:
        line += f"  {detail}"
    print(line)
    return ok and ok_time, line


# ---------------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    ref = golden_tables(1)
    H, L = diamond_fss(), two_chain()
    G = H.lattice
    problems = []

    homs = enumerate_join_homs(G, L)
    maps = ref["maps"]
    label_of = {tuple(cells): name for name, cells in maps.rows}
    row = {h: tuple(L.label(h(x)) for x in G.elements) for h in homs}
    names = {h: label_of.get(row[h]) for h in homs}
    if len(homs) != 8:
        problems.append(f"{len(homs)} join-homs, expected 8")
    missing = sorted(set(label_of.values()) - set(names.values()))
    if missing:
        problems.append(f"reference rows not produced: {', '.join(missing)}")

    JHL = hom_frame(H, L)
    pairs = {(names[a], names[b]) for a, b in JHL.sorted_pairs()}
    rho = ref["rho"]
    expected = {(r, c) for r, cells in rho.rows for c, v in zip(rho.columns, cells) if v == "1"}
    if len(expected) != 26:  # pragma: no cover - guards the transcription
        problems.append(f"reference rho has {len(expected)} pairs")
    if pairs != expected:
        problems.append(f"{len(pairs)} rho pairs, expected 26 (shared {len(pairs & expected)})")

    m = mu(H, L)
    want = {"a": {"f4", "f5", "f6", "f8"}, "b": {"f3", "f5", "f7", "f8"}, "c": {"f2", "f6", "f7", "f8"}}
    for x, w in want.items():
        v = m(G.element(x))
        got = {names[h] for h, bit in zip(JHL.nodes, v) if L.label(bit) == "1"}
        if got != w:
            problems.append(f"mu({x}) true on {sorted(got)}, expected {sorted(w)}")
    target = frame_operator(L, JHL, check=False)
    if not is_f_homomorphism(m, H, target):
        problems.append("mu is not an F-homomorphism")
    if not is_in_E_leq(m, H, target):
        problems.append("mu is not in E_leq")
    return not problems, time.perf_counter() - t0, problems


def criterion_2():
    t0 = time.perf_counter()
    ref = golden_tables(2)
    L, J = two_chain(), swap_frame()
    problems = []
    LJ = frame_operator(L, J)
    alpha = {tuple(cells): name for name, cells in ref["L^J"].rows}
    name = {x: alpha[tuple(L.label(v) for v in x)] for x in LJ.lattice.elements}
    expected_image = {"α1": "α1", "α2": "α3", "α3": "α2", "α4": "α4",
                      "α5": "α5", "α6": "α7", "α7": "α6", "α8": "α8"}
    image = {name[x]: name[LJ.F(x)] for x in LJ.lattice.elements}
    if image != expected_image:
        problems.append(f"F^J images {image}")
    golden_images = {r: ref["F^J"].cell(r, "image") for r in ref["F^J"].row_labels}
    if golden_images != expected_image:  # pragma: no cover - guards the transcription
        problems.append("reference F^J column disagrees with the criterion")

    n = nu(J, L)
    checked = 0
    for i in J.nodes:
        for k in J.nodes:
            checked += 1
            if J.related(i, k) != n.target.related(n(i), n(k)):
                problems.append(f"nu does not reflect ({i},{k})")
    if checked != 9:
        problems.append(f"{checked} node pairs checked")
    return not problems, time.perf_counter() - t0, problems


def criterion_3():
    t0 = time.perf_counter()
    H, J = diamond_fss(), swap_frame()
    problems = []
    T = tensor(J, H)
    if T.size != 15:
        problems.append(f"|J⊗H| = {T.size}")
    TJ = tensor_power(J, H)
    if TJ.lattice.size != 15 ** 3:
        problems.append(f"|(J⊗H)^J| = {TJ.lattice.size}")
    res = example3()
    for name in ("x_iS", "F(x)_i=", "x_iS v F(x)_i=", "eta", "eta(F(x))", "F^J(eta(x))"):
        d = res.diffs.get(name, ["not computed"])
        if d:
            problems.append(f"table {name}: {len(d)} cell(s) differ, e.g. {d[0]}")
    e = eta(J, H)
    if not is_f_homomorphism(e, H, TJ):
        problems.append("eta is not an F-homomorphism")
    if not is_in_E_leq(e, H, TJ):
        problems.append("eta is not in E_leq")
    return not problems, time.perf_counter() - t0, problems


def criterion_4(seed=7, count=100):
    t0 = time.perf_counter()
    problems = []
    insts, _ = random_instances(seed, count)
    laws = 0
    for inst in insts:
        rng = np.random.default_rng([seed, inst.index])
        for rep in instance_reports(inst, rng=rng):
            laws += len(rep.verdicts)
            if not rep.passed:
                problems.append(rep.render())
    if len(insts) != count:
        problems.append(f"only {len(insts)} instances")
    return not problems, time.perf_counter() - t0, problems, laws


def _random_pairs_closed(rng, H):
    L = H.lattice
    els = L.elements
    k = int(rng.integers(0, 4))
    X = {(els[int(rng.integers(L.size))], els[int(rng.integers(L.size))]) for _ in range(k)}
    while True:
        more = {(H.F(c), H.F(d)) for c, d in X} - X
        if not more:
            return sorted(X)
        X |= more


def criterion_5(seed=5, count=200):
    t0 = time.perf_counter()
    problems = []
    for k in range(count):
        rng = np.random.default_rng([seed, k])
        H = random_fss(rng, random_lattice(rng, 6))
        L = H.lattice
        X = _random_pairs_closed(rng, H)
        j = prenucleus_from_pairs(H, X)
        n = nucleus_closure(j)
        tag = f"instance {k}"
        if not (n.is_idempotent() and n.is_monotone() and n.is_increasing()):
            problems.append(f"{tag}: closure is not a closure operator")
        fix = O.pair_saturated(L, X)
        if sorted(n.fixpoints()) != fix:
            problems.append(f"{tag}: fixpoints differ from the oracle")
        oracle_n = {a: O.glb_all(L, [y for y in fix if L.leq(a, y)]) for a in L.elements}
        if any(n(a) != oracle_n[a] for a in L.elements):
            problems.append(f"{tag}: closure values differ from the oracle")
        rep = quotient(H, j).property_report()
        bad = [key for key, v in rep.items() if not v]
        if bad:
            problems.append(f"{tag}: quotient claims fail: {bad}")
        theta = nucleus_to_congruence(n)
        n2 = congruence_to_nucleus(theta, H)
        if not same_operator(n, n2) or nucleus_to_congruence(n2) != theta:
            problems.append(f"{tag}: nucleus/congruence round trip is not the identity")
    return not problems, time.perf_counter() - t0, problems


NAMED = {
    "2": chain(2),
    "3": chain(3),
    "7": chain(7),
    "M3": validate_lattice(["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]),
    "N5": validate_lattice(["0", "x", "y", "z", "1"], [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")]),
    "sq": validate_lattice(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")]),
}


def criterion_6(seed=6, count=60):
    t0 = time.perf_counter()
    problems = []
    cases = [(a, b) for a in NAMED for b in NAMED]
    cases += [("sq^2", "2"), ("sq^2", "3")]
    lat = dict(NAMED, **{"sq^2": power_lattice(NAMED["sq"], range(2))})
    checked = 0
    for a, b in cases:
        G, L = lat[a], lat[b]
        if L.size ** G.size > 10**6:
            continue
        checked += 1
        if [h.values for h in enumerate_join_homs(G, L, limit=10**6)] != sorted(O.all_join_homs(G, L)):
            problems.append(f"Hom({a}, {b}) differs from the all-maps filter")
    for k in range(count):
        rng = np.random.default_rng([seed, k])
        G, L = random_lattice(rng, 6), random_lattice(rng, 6)
        checked += 1
        if [h.values for h in enumerate_join_homs(G, L)] != sorted(O.all_join_homs(G, L)):
            problems.append(f"random instance {k}: enumeration differs from the all-maps filter")
    galois = 0
    for k in range(count):
        rng = np.random.default_rng([seed, 10**6 + k])
        L = random_lattice(rng, 4)
        t = random_frame_hom(rng, random_frame(rng, 3), max_nodes=3)
        fwd, bwd = forward_powerset(t, L), backward_powerset(L, t)
        P1, P2 = fwd.source, fwd.target
        for x in P1.elements:
            for y in P2.elements:
                galois += 1
                if P2.leq(fwd(x), y) != P1.leq(x, bwd(y)):
                    problems.append(f"Galois property fails on instance {k}")
                    break
    return not problems, time.perf_counter() - t0, problems, checked, galois


# ---------------------------------------------------------------------------


def _report(n, limit, ok, seconds, problems, extra=""):
    detail = extra
    if problems:
        detail = (extra + "; " if extra else "") + "; ".join(p.splitlines()[0] for p in problems[:6])
        if len(problems) > 6:
            detail += f"; ... {len(problems) - 6} more"
    good, line = verdict(n, ok, seconds, limit, detail)
    assert good, line


def test_criterion_1_hom_frame_of_the_diamond():
    ok, dt, problems = criterion_1()
    _report(1, 1.0, ok, dt, problems)


def test_criterion_2_frame_operator_table():
    ok, dt, problems = criterion_2()
    _report(2, 1.0, ok, dt, problems, "F^J images and nu reflection over 9 pairs")


def test_criterion_3_tensor_of_the_diamond():
    ok, dt, problems = criterion_3()
    _report(3, 5.0, ok, dt, problems)


def test_criterion_4_adjunction_laws():
    ok, dt, problems, laws = criterion_4()
    _report(4, 60.0, ok, dt, problems, f"100 instances, {laws} law checks")


def test_criterion_5_nucleus_quotient_properties():
    ok, dt, problems = criterion_5()
    _report(5, 30.0, ok, dt, problems, "200 (H, X) instances")


def test_criterion_6_oracle_equivalence():
    ok, dt, problems, checked, galois = criterion_6()
    _report(6, 30.0, ok, dt, problems, f"{checked} hom enumerations, {galois} Galois pairs")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
