"""Frames ``(T, S)``: a finite node set with an arbitrary binary relation."""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DuplicateLabel, EmptyNodeSet, UnknownNode


class Frame:
    """A node set with a relation ``S``; ``related(i, k)`` reads "i S k".

    Nodes can be any hashable values (strings for user frames, join
    homomorphisms for hom-frames). The relation is held as a boolean matrix
    over node positions; the pair set is derived on demand. Equality is
    structural.
    """

    def __init__(self, nodes: Sequence[Hashable], rel: Iterable[tuple] = (), *, labels: Callable | None = None, matrix=None):
        nodes = tuple(nodes)
        pos = {}
        for k, t in enumerate(nodes):
            if t in pos:
                raise DuplicateLabel(t)
            pos[t] = k
        self.nodes = nodes
        self._pos = pos
        if matrix is None:
            m = np.zeros((len(nodes), len(nodes)), dtype=bool)
            for i, k in rel:
                for t in (i, k):
                    if t not in pos:
                        raise UnknownNode(t, "relation")
                m[pos[i], pos[k]] = True
        else:
            m = np.array(matrix, dtype=bool).reshape(len(nodes), len(nodes))
        m.flags.writeable = False
        self.matrix = m
        self._label = labels

    @classmethod
    def from_matrix(cls, nodes, matrix, *, labels=None) -> "Frame":
        return cls(nodes, matrix=matrix, labels=labels)

    @cached_property
    def rel(self) -> frozenset:
        nodes = self.nodes
        return frozenset((nodes[a], nodes[b]) for a, b in zip(*np.nonzero(self.matrix)))

    def __repr__(self):
        return f"Frame({len(self.nodes)} nodes, {int(self.matrix.sum())} pairs)"

    def __eq__(self, other):
        return (
            isinstance(other, Frame)
            and self.nodes == other.nodes
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.nodes, self.matrix.tobytes()))

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, t):
        try:
            return t in self._pos
        except TypeError:
            return False

    def label(self, t) -> str:
        return self._label(t) if self._label else str(t)

    def position(self, t) -> int:
        try:
            return self._pos[t]
        except (KeyError, TypeError):
            raise UnknownNode(t) from None

    def related(self, i, k) -> bool:
        try:
            return bool(self.matrix[self._pos[i], self._pos[k]])
        except KeyError:
            return False

    @cached_property
    def successors(self) -> dict:
        nodes = self.nodes
        return {t: [nodes[k] for k in np.flatnonzero(self.matrix[p])] for p, t in enumerate(nodes)}

    @cached_property
    def predecessors(self) -> dict:
        nodes = self.nodes
        return {t: [nodes[i] for i in np.flatnonzero(self.matrix[:, p])] for p, t in enumerate(nodes)}

    def sorted_pairs(self) -> list:
        nodes = self.nodes
        return [(nodes[a], nodes[b]) for a, b in zip(*np.nonzero(self.matrix))]

    def pair_count(self) -> int:
        return int(self.matrix.sum())


def make_frame(labels: Sequence[Hashable], pairs: Iterable[tuple]) -> Frame:
    """Validated frame; raises ``DuplicateLabel`` / ``UnknownNode``."""
    labels = list(labels)
    if not labels:
        raise EmptyNodeSet()
    return Frame(labels, pairs)


class FrameHom:
    """A node map between frames, intended to preserve the relation."""

    def __init__(self, source: Frame, target: Frame, table: Mapping | Callable, name=None):
        self.source = source
        self.target = target
        if callable(table) and not isinstance(table, Mapping):
            table = {t: table(t) for t in source.nodes}
        table = dict(table)
        for t in source.nodes:
            if t not in table:
                raise UnknownNode(t, "frame map is not total")
            if table[t] not in target:
                raise UnknownNode(table[t], "frame map target")
        self.table = table
        self.name = name

    def __call__(self, t):
        return self.table[t]

    def __eq__(self, other):
        return (
            isinstance(other, FrameHom)
            and self.source == other.source
            and self.target == other.target
            and all(self.table[t] == other.table[t] for t in self.source.nodes)
        )

    def __hash__(self):
        return hash(tuple(self.table[t] for t in self.source.nodes))

    def __repr__(self):
        body = ", ".join(f"{self.source.label(t)}->{self.target.label(self.table[t])}" for t in self.source.nodes)
        return f"FrameHom({body})"

    def compose(self, inner: "FrameHom") -> "FrameHom":
        """``self ∘ inner``."""
        return FrameHom(inner.source, self.target, {t: self.table[inner.table[t]] for t in inner.source.nodes})

    def violation(self):
        """A related pair whose image is unrelated, or ``None``."""
        for i, k in self.source.sorted_pairs():
            if not self.target.related(self.table[i], self.table[k]):
                return (i, k)
        return None


def frame_identity(J: Frame) -> FrameHom:
    return FrameHom(J, J, {t: t for t in J.nodes}, name="id")


def is_frame_hom(t, J1: Frame, J2: Frame) -> bool:
    """True iff ``i S1 k`` implies ``t(i) S2 t(k)``; ``t`` may be a mapping or callable."""
    if isinstance(t, FrameHom):
        fn = t.table.__getitem__
    elif isinstance(t, Mapping):
        fn = t.__getitem__
    else:
        fn = t
    images = {}
    for node in J1.nodes:
        try:
            images[node] = fn(node)
        except KeyError:
            raise UnknownNode(node, "frame map is not total") from None
        if images[node] not in J2:
            raise UnknownNode(images[node], "frame map target")
    return all(J2.related(images[i], images[k]) for i, k in J1.sorted_pairs())
