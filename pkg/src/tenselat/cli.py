"""Command-line interface.

    tenselat validate FILE
    tenselat compute power LATTICE FRAME -o DIR
    tenselat compute tensor FRAME FSS -o DIR
    tenselat compute homframe FSS LATTICE -o DIR
    tenselat check I|II|III FRAME FSS LATTICE
    tenselat check laws --random SEED COUNT [--only INDEX]
    tenselat example 1|2|3 [--show]

Exit codes: 0 success / all laws or tables pass, 1 a law or reference-table
failure, 2 an input error (unreadable or invalid file, size cap exceeded).
The carrier cap can be raised with the ``TENSELAT_MAX_CARRIER`` variable.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .adjunctions import check_triangles, instance_reports
from .constructions import frame_operator, hom_frame, tensor
from .errors import CarrierTooLarge, LatticeError
from .fileio import cover_pairs, load_structure, write_structure
from .frames import Frame
from .morphisms import FSupLattice
from .order import as_finite
from .random_instances import random_instances
from .tables import Table, render_all
from .worked_examples import run_example

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _describe(kind, value) -> str:
    if kind == "lattice":
        return f"lattice with {value.size} elements"
    if kind == "fss":
        return f"F-sup-semilattice on {value.lattice.size} elements"
    return f"frame with {len(value.nodes)} nodes and {value.pair_count()} related pairs"


def cmd_validate(args, out) -> int:
    kind, value = load_structure(args.file)
    print(f"{args.file}: ok ({_describe(kind, value)})", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compute


def power_table(P: FSupLattice, J: Frame) -> Table:
    L = P.lattice
    t = Table("F^J", [J.label(n) for n in J.nodes] + ["F^J"], corner="element")
    base = L.base
    for x in L.elements:
        t.add(L.label(x), [base.label(v) for v in x] + [L.label(P.F(x))])
    return t


def tensor_table(T) -> Table:
    """Each class by its fixpoint representative, with the classes directly above it."""
    els = T.elements
    covers = {a: [] for a in range(len(els))}
    for a, b in cover_pairs(T):
        covers[a].append(str(b + 1))
    t = Table("J⊗H", ["representative", "covered-by"], corner="k")
    for k, x in enumerate(els):
        t.add(str(k + 1), [T.label(x), ",".join(covers[k]) or "-"])
    return t


def homframe_tables(JHL) -> list[Table]:
    G = JHL.fss.lattice
    names = [f"n{k + 1}" for k in range(len(JHL.nodes))]
    nodes = Table("nodes", [G.label(x) for x in G.elements], corner="node")
    for name, h in zip(names, JHL.nodes):
        nodes.add(name, [JHL.codomain.label(h(x)) for x in G.elements])
    rel = Table("relation", names, corner="S")
    for name, row in zip(names, JHL.matrix):
        rel.add(name, ["1" if v else "0" for v in row])
    return [nodes, rel]


def cmd_compute(args, out) -> int:
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    what = args.construction
    if what == "power":
        if len(args.inputs) != 2:
            raise SystemExit("compute power needs LATTICE FRAME")
        _, L = load_structure(args.inputs[0], "lattice")
        _, J = load_structure(args.inputs[1], "frame")
        P = frame_operator(L, J)
        structure, tables = P, [power_table(P, J)]
        summary = f"L^J: {P.lattice.size} elements"
    elif what == "tensor":
        if len(args.inputs) != 2:
            raise SystemExit("compute tensor needs FRAME FSS")
        _, J = load_structure(args.inputs[0], "frame")
        _, H = load_structure(args.inputs[1], "fss")
        T = tensor(J, H)
        structure, tables = as_finite(T), [tensor_table(T)]
        summary = f"J⊗H: {T.size} elements"
    else:
        if len(args.inputs) != 2:
            raise SystemExit("compute homframe needs FSS LATTICE")
        _, H = load_structure(args.inputs[0], "fss")
        _, L = load_structure(args.inputs[1], "lattice")
        JHL = hom_frame(H, L, lazy=False)
        structure, tables = JHL, homframe_tables(JHL)
        summary = f"J[H,L]: {len(JHL.nodes)} nodes, {JHL.pair_count()} related pairs"
    path = write_structure(structure, outdir / f"{what}.json")
    (outdir / f"{what}.txt").write_text(render_all(tables), encoding="utf-8")
    print(summary, file=out)
    print(f"wrote {path} and {outdir / (what + '.txt')}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def cmd_check(args, out) -> int:
    if args.which == "laws":
        if args.random is None:
            raise SystemExit("check laws needs --random SEED COUNT")
        return _check_random(args.random[0], args.random[1], args.only, out)
    if len(args.inputs) != 3:
        raise SystemExit(f"check {args.which} needs FRAME FSS LATTICE")
    _, J = load_structure(args.inputs[0], "frame")
    _, H = load_structure(args.inputs[1], "fss")
    _, L = load_structure(args.inputs[2], "lattice")
    rep = check_triangles(args.which, J, H, L, rng=np.random.default_rng(0))
    print(rep.render(), file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _check_random(seed: int, count: int, only, out) -> int:
    t0 = time.perf_counter()
    instances, rejected = random_instances(seed, count)
    failures = 0
    laws = 0
    for inst in instances:
        if only is not None and inst.index != only:
            continue
        rng = np.random.default_rng([seed, inst.index])
        for rep in instance_reports(inst, rng=rng):
            laws += len(rep.verdicts)
            if not rep.passed:
                failures += 1
                print(rep.render(), file=out)
                print(f"  replay: tenselat check laws --random {seed} {count} --only {inst.index}", file=out)
    ran = len(instances) if only is None else 1
    dt = time.perf_counter() - t0
    print(
        f"{ran} instance(s), {laws} law checks, {failures} failing report(s); "
        f"{len(rejected)} draws rejected by the size budget; {dt:.1f}s",
        file=out,
    )
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_example(args, out) -> int:
    res = run_example(args.n)
    print(res.report(show=args.show), file=out)
    print(f"example {args.n}: {'PASS' if res.passed else 'FAIL'} ({res.seconds:.2f}s)", file=out)
    return EXIT_OK if res.passed else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tenselat", description="Tense operators on finite sup-semilattices.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check that a structure file is valid")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("compute", help="build L^J, J⊗H or J[H,L] and write it out")
    c.add_argument("construction", choices=["power", "tensor", "homframe"])
    c.add_argument("inputs", nargs="+")
    c.add_argument("-o", "--output", required=True, help="output directory")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("check", help="check adjunction laws")
    k.add_argument("which", choices=["I", "II", "III", "laws"])
    k.add_argument("inputs", nargs="*")
    k.add_argument("--random", nargs=2, type=int, metavar=("SEED", "COUNT"))
    k.add_argument("--only", type=int, help="run a single instance index (replay)")
    k.set_defaults(func=cmd_check)

    e = sub.add_parser("example", help="regenerate a worked example and diff it against the reference tables")
    e.add_argument("n", type=int, choices=[1, 2, 3])
    e.add_argument("--show", action="store_true", help="print the computed tables")
    e.set_defaults(func=cmd_example)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CarrierTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LatticeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as e:
        if isinstance(e.code, str):
            print(f"error: {e.code}", file=sys.stderr)
            return EXIT_INPUT
        raise


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
