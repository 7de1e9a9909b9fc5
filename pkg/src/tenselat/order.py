"""Finite sup-semilattices.

Every lattice exposes the same small surface: ``bottom``, ``top``, ``leq``,
``join``, ``meet`` and membership. Lattices that are small enough can also be
enumerated (``elements``) in a canonical order, which is what makes
exhaustive law checking possible. Derived lattices (powers, quotients) keep
their elements as plain Python values, so they work even when the carrier is
far too large to list.
"""
from __future__ import annotations

import itertools
import os
from abc import ABC, abstractmethod
from functools import cached_property, reduce
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    CarrierTooLarge,
    CycleError,
    DuplicateLabel,
    EmptyNodeSet,
    ForeignElement,
    NoBottom,
    NoJoin,
    UnknownLabel,
)

DEFAULT_MAX_CARRIER = 4096
CAP_ENV = "TENSELAT_MAX_CARRIER"


def max_carrier() -> int:
    """Largest carrier the package will enumerate (env override allowed)."""
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_MAX_CARRIER


class SupLattice(ABC):
    """A finite lattice presented through its join."""

    @property
    @abstractmethod
    def bottom(self): ...

    @property
    @abstractmethod
    def top(self): ...

    @abstractmethod
    def leq(self, x, y) -> bool: ...

    @abstractmethod
    def join(self, x, y): ...

    @abstractmethod
    def meet(self, x, y): ...

    @property
    @abstractmethod
    def size(self) -> int: ...

    @abstractmethod
    def _iter_elements(self) -> Iterable: ...

    @abstractmethod
    def __contains__(self, x) -> bool: ...

    def label(self, x) -> str:
        return str(x)

    # derived API

    @property
    def enumerable(self) -> bool:
        return self.size <= max_carrier()

    @cached_property
    def elements(self) -> tuple:
        cap = max_carrier()
        if self.size > cap:
            raise CarrierTooLarge(self.size, cap)
        return tuple(self._iter_elements())

    def __len__(self):
        return self.size

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise ForeignElement(x, self) from None

    def element(self, label: str):
        """Look an element up by its printed label."""
        for x in self.elements:
            if self.label(x) == label:
                return x
        raise UnknownLabel(label)

    def check(self, x):
        if x not in self:
            raise ForeignElement(x, self)
        return x

    def join_all(self, xs: Iterable):
        return reduce(self.join, xs, self.bottom)

    def meet_all(self, xs: Iterable):
        return reduce(self.meet, xs, self.top)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        els = self.elements
        m = np.array([[self.leq(x, y) for y in els] for x in els], dtype=bool)
        m.flags.writeable = False
        return m

    @cached_property
    def join_irreducibles(self) -> tuple:
        """Elements that are not the join of the elements strictly below them."""
        out = []
        for x in self.elements:
            below = [y for y in self.elements if self.lt(y, x)]
            if self.join_all(below) != x:
                out.append(x)
        return tuple(out)

    @property
    def join_generators(self) -> tuple:
        """Elements whose joins exhaust the lattice (join-irreducibles by default).

        Two join-preserving maps agree everywhere iff they agree here, which
        is what lets laws be checked on lattices too large to enumerate.
        """
        return self.join_irreducibles

    def random_element(self, rng: np.random.Generator):
        els = self.elements
        return els[int(rng.integers(len(els)))]


def join(L: SupLattice, xs: Iterable):
    """Least upper bound of ``xs`` in ``L`` (bottom for the empty set)."""
    return L.join_all(L.check(x) for x in xs)


def meet(L: SupLattice, xs: Iterable):
    """Greatest lower bound of ``xs`` in ``L`` (top for the empty set)."""
    return L.meet_all(L.check(x) for x in xs)


def _linear_extension(leq: np.ndarray) -> np.ndarray:
    # sorting by down-set size is a linear extension of a partial order
    return np.lexsort((np.arange(len(leq)), leq.sum(axis=0)))


class FiniteLattice(SupLattice):
    """Explicit lattice on ``0..n-1`` with a boolean order matrix.

    Elements are plain integer indices in input label order.
    """

    def __init__(self, labels: Sequence[str], leq: np.ndarray, *, join_table=None, meet_table=None):
        self.labels = tuple(labels)
        leq = np.array(leq, dtype=bool)
        leq.flags.writeable = False
        self._leq = leq
        n = len(self.labels)
        self._n = n
        self._order = _linear_extension(leq)
        self._rank = np.empty(n, dtype=np.int64)
        self._rank[self._order] = np.arange(n)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._join_rows: dict[int, np.ndarray] = {}
        self._meet_rows: dict[int, np.ndarray] = {}
        if join_table is not None:
            self.__dict__["join_table"] = np.asarray(join_table)
        if meet_table is not None:
            self.__dict__["meet_table"] = np.asarray(meet_table)

    def __repr__(self):
        if self._n <= 8:
            return f"FiniteLattice({list(self.labels)})"
        return f"FiniteLattice(<{self._n} elements>)"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLattice)
            and self.labels == other.labels
            and np.array_equal(self._leq, other._leq)
        )

    def __hash__(self):
        return hash((self.labels, self._leq.tobytes()))

    @property
    def size(self):
        return self._n

    def _iter_elements(self):
        return range(self._n)

    @cached_property
    def elements(self):
        return tuple(range(self._n))

    def index(self, x):
        return self.check(x)

    def __contains__(self, x):
        return isinstance(x, (int, np.integer)) and not isinstance(x, bool) and 0 <= x < self._n

    def label(self, x):
        return self.labels[x]

    def element(self, label):
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    @property
    def leq_matrix(self):
        return self._leq

    @cached_property
    def bottom(self):
        return int(self._order[0])

    @cached_property
    def top(self):
        return int(self._order[-1])

    def leq(self, x, y):
        return bool(self._leq[x, y])

    def _join_row(self, x):
        row = self._join_rows.get(x)
        if row is None:
            common = self._leq[x][None, :] & self._leq  # common[y, z]: x<=z and y<=z
            ranked = np.where(common, self._rank[None, :], self._n)
            row = np.where(ranked.min(axis=1) < self._n, ranked.argmin(axis=1), -1)
            self._join_rows[x] = row
        return row

    def _meet_row(self, x):
        row = self._meet_rows.get(x)
        if row is None:
            common = self._leq[:, x][None, :] & self._leq.T
            ranked = np.where(common, self._rank[None, :], -1)
            row = np.where(ranked.max(axis=1) >= 0, ranked.argmax(axis=1), -1)
            self._meet_rows[x] = row
        return row

    def join(self, x, y):
        try:
            return self._join_list[x][y]
        except AttributeError:
            pass
        if "join_table" in self.__dict__:
            # nested lists: element lookups are the innermost loop of everything
            self._join_list = self.join_table.tolist()
            return self._join_list[x][y]
        return int(self._join_row(x)[y])

    def meet(self, x, y):
        try:
            return self._meet_list[x][y]
        except AttributeError:
            pass
        if "meet_table" in self.__dict__:
            self._meet_list = self.meet_table.tolist()
            return self._meet_list[x][y]
        return int(self._meet_row(x)[y])

    @cached_property
    def join_table(self) -> np.ndarray:
        return np.stack([self._join_row(x) for x in range(self._n)])

    @cached_property
    def meet_table(self) -> np.ndarray:
        return np.stack([self._meet_row(x) for x in range(self._n)])

    def join_mask(self, mask: np.ndarray) -> int:
        """Join of the elements selected by a boolean mask."""
        acc = self.bottom
        for x in np.flatnonzero(mask):
            acc = self.join(acc, int(x))
        return acc

    @cached_property
    def join_irreducibles(self):
        lt = self._leq & ~np.eye(self._n, dtype=bool)
        out = []
        for x in range(self._n):
            below = np.flatnonzero(lt[:, x])
            acc = self.bottom
            for y in below:
                acc = self.join(acc, int(y))
            if acc != x:
                out.append(x)
        return tuple(out)


def _transitive_closure(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    for k in range(len(m)):
        m |= m[:, k, None] & m[None, k, :]
    return m


def validate_lattice(labels: Sequence[Hashable], order_pairs: Iterable[tuple]) -> FiniteLattice:
    """Build a lattice from labels and generating order pairs ``(lo, hi)``.

    The order is the reflexive-transitive closure of the pairs. Raises
    ``CycleError``, ``NoBottom`` or ``NoJoin`` when the result is not a lattice.
    """
    labels = [str(lab) for lab in labels]
    if not labels:
        raise NoBottom()
    index = {}
    for lab in labels:
        if lab in index:
            raise DuplicateLabel(lab)
        index[lab] = len(index)
    n = len(labels)
    m = np.eye(n, dtype=bool)
    for k, (lo, hi) in enumerate(order_pairs):
        for lab in (lo, hi):
            if str(lab) not in index:
                raise UnknownLabel(lab, f"order pair {k}")
        m[index[str(lo)], index[str(hi)]] = True
    m = _transitive_closure(m)

    both = m & m.T & ~np.eye(n, dtype=bool)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        raise CycleError(labels[i], labels[j])
    if not m.all(axis=1).any():
        raise NoBottom()

    order = _linear_extension(m)
    rank = np.empty(n, dtype=np.int64)
    rank[order] = np.arange(n)
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        common = m[x][None, :] & m
        ranked = np.where(common, rank[None, :], n)
        cand = ranked.argmin(axis=1)
        # candidate must exist and lie below every common upper bound
        ok = (ranked.min(axis=1) < n) & ~(common & ~m[cand]).any(axis=1)
        if not ok.all():
            y = int(np.flatnonzero(~ok)[0])
            raise NoJoin(labels[x], labels[y])
        table[x] = cand
    return FiniteLattice(labels, m, join_table=table)


def chain(n: int) -> FiniteLattice:
    """The ``n``-element chain labelled ``0..n-1``."""
    return validate_lattice([str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)])


class PowerLattice(SupLattice):
    """The pointwise-ordered power ``L^T`` of a lattice over a node set.

    Elements are tuples aligned with ``nodes``; the canonical order is
    lexicographic over the base order with the first node most significant.
    """

    def __init__(self, base: SupLattice, nodes: Sequence[Hashable]):
        nodes = tuple(nodes)
        if not nodes:
            raise EmptyNodeSet()
        self.base = base
        self.nodes = nodes
        self._pos = {t: k for k, t in enumerate(nodes)}

    def __repr__(self):
        return f"PowerLattice({self.base!r}, {list(self.nodes)})"

    def __eq__(self, other):
        return isinstance(other, PowerLattice) and self.base == other.base and self.nodes == other.nodes

    def __hash__(self):
        return hash((self.base, self.nodes))

    @property
    def size(self):
        return self.base.size ** len(self.nodes)

    @property
    def enumerable(self) -> bool:
        return self.base.enumerable and self.size <= max_carrier()

    def _iter_elements(self):
        return itertools.product(self.base.elements, repeat=len(self.nodes))

    def __contains__(self, x):
        return (
            isinstance(x, tuple)
            and len(x) == len(self.nodes)
            and all(v in self.base for v in x)
        )

    def label(self, x):
        return "(" + ",".join(self.base.label(v) for v in x) + ")"

    def position(self, node) -> int:
        return self._pos[node]

    def at(self, x, node):
        return x[self._pos[node]]

    def from_mapping(self, mapping) -> tuple:
        return tuple(mapping[t] for t in self.nodes)

    def constant(self, v) -> tuple:
        return (v,) * len(self.nodes)

    def point(self, v, node) -> tuple:
        """``v`` at ``node`` and bottom elsewhere."""
        b = self.base.bottom
        k = self._pos[node]
        return tuple(v if p == k else b for p in range(len(self.nodes)))

    @cached_property
    def join_generators(self) -> tuple:
        return tuple(self.point(g, t) for t in self.nodes for g in self.base.join_generators)

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in self.nodes)

    @cached_property
    def bottom(self):
        return self.constant(self.base.bottom)

    @cached_property
    def top(self):
        return self.constant(self.base.top)

    def leq(self, x, y):
        return all(map(self.base.leq, x, y))

    def join(self, x, y):
        return tuple(map(self.base.join, x, y))

    def meet(self, x, y):
        return tuple(map(self.base.meet, x, y))

    def index(self, x):
        if x not in self:
            raise ForeignElement(x, self)
        i = 0
        n = self.base.size
        for v in x:
            i = i * n + self.base.index(v)
        return i

    @cached_property
    def digits(self) -> np.ndarray:
        """Base-lattice indices of every element, shape ``(size, len(nodes))``."""
        n = self.base.size
        k = len(self.nodes)
        if self.size > max_carrier():
            raise CarrierTooLarge(self.size, max_carrier())
        idx = np.arange(self.size)
        out = np.empty((self.size, k), dtype=np.int64)
        for pos in range(k - 1, -1, -1):
            out[:, pos] = idx % n
            idx //= n
        return out

    def _from_digits(self, d: np.ndarray) -> np.ndarray:
        n = self.base.size
        out = np.zeros(d.shape[:-1], dtype=np.int64)
        for pos in range(d.shape[-1]):
            out = out * n + d[..., pos]
        return out

    @cached_property
    def leq_matrix(self):
        d = self.digits
        bl = self.base.leq_matrix
        m = np.ones((self.size, self.size), dtype=bool)
        for pos in range(d.shape[1]):
            m &= bl[d[:, pos][:, None], d[:, pos][None, :]]
        m.flags.writeable = False
        return m

    def _table(self, base_table):
        d = self.digits
        out = base_table[d[:, None, :], d[None, :, :]]
        return self._from_digits(out)

    def as_finite(self) -> FiniteLattice:
        """Materialise as an explicit lattice on canonical indices."""
        base = self.base if isinstance(self.base, FiniteLattice) else as_finite(self.base)
        return FiniteLattice(
            [self.label(x) for x in self.elements],
            self.leq_matrix,
            join_table=self._table(base.join_table),
            meet_table=self._table(base.meet_table),
        )


def power_lattice(L: SupLattice, nodes: Iterable[Hashable]) -> PowerLattice:
    """``L^T`` with the pointwise order."""
    return PowerLattice(L, tuple(nodes))


def as_finite(L: SupLattice) -> FiniteLattice:
    """Explicit copy of an enumerable lattice, indexed by ``L.elements``."""
    if isinstance(L, FiniteLattice):
        return L
    if isinstance(L, PowerLattice):
        return L.as_finite()
    els = L.elements
    idx = {x: i for i, x in enumerate(els)}
    n = len(els)
    jt = np.empty((n, n), dtype=np.int64)
    mt = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(els):
        for j in range(i, n):
            y = els[j]
            jt[i, j] = jt[j, i] = idx[L.join(x, y)]
            mt[i, j] = mt[j, i] = idx[L.meet(x, y)]
    return FiniteLattice([L.label(x) for x in els], L.leq_matrix, join_table=jt, meet_table=mt)
