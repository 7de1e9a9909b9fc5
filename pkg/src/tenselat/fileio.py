"""JSON structure files for lattices, F-sup-semilattices and frames.

Schema (UTF-8 JSON objects)::

    {"kind": "lattice", "elements": ["0", "a", ...], "leq": [["0", "a"], ...]}
    {"kind": "fss", "lattice": {<lattice object>}, "F": {"0": "0", "a": "a", ...}}
    {"kind": "frame", "nodes": ["t0", ...], "rel": [["t0", "t1"], ...]}

``leq`` lists generating pairs ``lo <= hi``; the order is their reflexive and
transitive closure, so cover pairs suffice. The nested lattice of an ``fss``
may omit ``"kind"``. Every failure is reported as :class:`ParseError` with a
line number (best effort for semantic errors) and a field path.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import ParseError, UnknownLabel, ValidationError
from .frames import Frame, make_frame
from .morphisms import FSupLattice, join_hom_witness
from .order import FiniteLattice, SupLattice, as_finite, validate_lattice

KINDS = ("lattice", "fss", "frame")


def _locate(text: str, key: str, token=None) -> int | None:
    """Line of ``"key"`` (and of ``token`` after it, if given), 1-based."""
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    if m is None:
        return None
    pos = m.start()
    if token is not None:
        t = text.find(json.dumps(str(token)), m.end())
        if t >= 0:
            pos = t
    return text.count("\n", 0, pos) + 1


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source

    def fail(self, message, field=None, key=None, token=None):
        line = _locate(self.text, key, token) if key else None
        raise ParseError(message, source=self.source, line=line, field=field)

    def string_list(self, obj, key, prefix):
        if key not in obj:
            self.fail(f"missing field {key!r}", field=prefix + key)
        val = obj[key]
        if not isinstance(val, list):
            self.fail("expected a list", field=prefix + key, key=key)
        for k, v in enumerate(val):
            if not isinstance(v, (str, int)) or isinstance(v, bool):
                self.fail(f"expected a label, got {v!r}", field=f"{prefix}{key}[{k}]", key=key)
        return [str(v) for v in val]

    def pair_list(self, obj, key, prefix):
        val = obj.get(key, [])
        if not isinstance(val, list):
            self.fail("expected a list of pairs", field=prefix + key, key=key)
        out = []
        for k, p in enumerate(val):
            if not (isinstance(p, list) and len(p) == 2):
                self.fail(f"expected a pair, got {p!r}", field=f"{prefix}{key}[{k}]", key=key)
            out.append((str(p[0]), str(p[1])))
        return out

    def lattice(self, obj, prefix="") -> FiniteLattice:
        if not isinstance(obj, dict):
            self.fail("expected an object", field=prefix.rstrip(".") or None)
        labels = self.string_list(obj, "elements", prefix)
        pairs = self.pair_list(obj, "leq", prefix)
        try:
            return validate_lattice(labels, pairs)
        except UnknownLabel as e:
            self.fail(str(e), field=prefix + "leq", key="leq", token=e.label)
        except ValidationError as e:
            token = getattr(e, "pair", (None,))[0]
            self.fail(f"{type(e).__name__}: {e}", field=prefix + "leq", key="leq", token=token)

    def fss(self, obj) -> FSupLattice:
        if "lattice" not in obj:
            self.fail("missing field 'lattice'", field="lattice")
        L = self.lattice(obj["lattice"], "lattice.")
        F = obj.get("F")
        if not isinstance(F, dict):
            self.fail("expected an object mapping labels to labels", field="F", key="F" if "F" in obj else None)
        table = {}
        for k, v in F.items():
            try:
                table[L.element(str(k))] = L.element(str(v))
            except UnknownLabel as e:
                self.fail(str(e), field=f"F[{k!r}]", key="F", token=e.label)
        missing = [L.label(x) for x in L.elements if x not in table]
        if missing:
            self.fail(f"F is not total; no value for {missing}", field="F", key="F")
        w = join_hom_witness(table.__getitem__, L, L)
        if w is not None:
            witness = tuple(L.label(x) for x in w) or "bottom"
            msg = f"NotJoinPreserving: F does not preserve joins; witness {witness}"
            self.fail(msg, field="F", key="F", token=L.label(w[0]) if w else None)
        return FSupLattice(L, table)

    def frame(self, obj) -> Frame:
        nodes = self.string_list(obj, "nodes", "")
        pairs = self.pair_list(obj, "rel", "")
        try:
            return make_frame(nodes, pairs)
        except ValidationError as e:
            self.fail(f"{type(e).__name__}: {e}", field="rel" if "rel" in obj else "nodes",
                      key="rel", token=getattr(e, "label", None))


def parse_structure(text: str, source: str = "<input>"):
    """Parse one structure; returns ``(kind, value)``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, source=source, line=e.lineno) from None
    r = _Reader(text, source)
    if not isinstance(obj, dict):
        r.fail("top level must be an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        r.fail(f"'kind' must be one of {KINDS}, got {kind!r}", field="kind", key="kind" if "kind" in obj else None)
    return kind, getattr(r, kind)(obj)


def load_structure(path, expect: str | None = None):
    """Read a structure file; ``expect`` restricts the accepted kind."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(e.strerror or str(e), source=str(path)) from None
    kind, value = parse_structure(text, str(path))
    if expect is not None and kind != expect:
        raise ParseError(f"expected a {expect} file, got {kind}", source=str(path), field="kind")
    return kind, value


# ---------------------------------------------------------------------------
# writing


def cover_pairs(L: SupLattice) -> list[tuple]:
    """Hasse-diagram edges ``(lo, hi)`` of an enumerable lattice, as index pairs."""
    m = np.array(as_finite(L).leq_matrix)
    strict = m & ~np.eye(len(m), dtype=bool)
    # lo < hi with nothing strictly between
    between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    cover = strict & ~between
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(cover))]


def lattice_object(L: SupLattice) -> dict:
    labels = [L.label(x) for x in L.elements]
    return {
        "kind": "lattice",
        "elements": labels,
        "leq": [[labels[a], labels[b]] for a, b in cover_pairs(L)],
    }


def fss_object(H: FSupLattice) -> dict:
    L = H.lattice
    lat = lattice_object(L)
    del lat["kind"]
    return {"kind": "fss", "lattice": lat, "F": {L.label(x): L.label(H.F(x)) for x in L.elements}}


def frame_object(J) -> dict:
    return {
        "kind": "frame",
        "nodes": [J.label(t) for t in J.nodes],
        "rel": [[J.label(i), J.label(k)] for i, k in J.sorted_pairs()],
    }


def dumps(obj: dict) -> str:
    """Deterministic text: pairs one per line, keys in schema order."""
    lines = ["{"]
    items = list(obj.items())
    for n, (key, val) in enumerate(items):
        end = "," if n < len(items) - 1 else ""
        if isinstance(val, dict) and key == "lattice":
            inner = dumps(val).replace("\n", "\n  ")
            lines.append(f'  "{key}": {inner}{end}')
        elif isinstance(val, list) and val and isinstance(val[0], list):
            body = ",\n".join("    " + json.dumps(p, ensure_ascii=False) for p in val)
            lines.append(f'  "{key}": [\n{body}\n  ]{end}')
        else:
            lines.append(f'  "{key}": {json.dumps(val, ensure_ascii=False)}{end}')
    lines.append("}")
    return "\n".join(lines)


def structure_text(value) -> str:
    if isinstance(value, FSupLattice):
        obj = fss_object(value)
    elif isinstance(value, SupLattice):
        obj = lattice_object(value)
    else:
        obj = frame_object(value)
    return dumps(obj) + "\n"


def write_structure(value, path) -> Path:
    path = Path(path)
    path.write_text(structure_text(value), encoding="utf-8")
    return path


def same_structure(a, b) -> bool:
    """Structural equality by labels, across in-memory and re-loaded values."""
    if isinstance(a, FSupLattice) and isinstance(b, FSupLattice):
        if not same_structure(a.lattice, b.lattice):
            return False
        return all(
            a.lattice.label(a.F(x)) == b.lattice.label(b.F(y))
            for x, y in zip(a.lattice.elements, b.lattice.elements)
        )
    if isinstance(a, SupLattice) and isinstance(b, SupLattice):
        if [a.label(x) for x in a.elements] != [b.label(x) for x in b.elements]:
            return False
        return np.array_equal(a.leq_matrix, b.leq_matrix)
    if hasattr(a, "nodes") and hasattr(b, "nodes"):
        la = [a.label(t) for t in a.nodes]
        lb = [b.label(t) for t in b.nodes]
        return la == lb and np.array_equal(a.matrix, b.matrix)
    return False
