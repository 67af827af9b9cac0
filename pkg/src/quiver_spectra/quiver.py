"""Quivers: finite multigraphs with self-loops, and their Kirchhoff matrices.

Vertices are 1-based everywhere.  Edges are stored as an unordered pair
``(u, v)`` with ``u <= v`` mapped to a positive multiplicity; ``u == v`` is a
loop.  A loop adds one to the degree of its vertex and never enters the
adjacency matrix, so ``trace(K)`` is the degree sum.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Quiver",
    "Classification",
    "from_edge_list",
    "adjacency",
    "degree_matrix",
    "kirchhoff",
    "gradient",
    "delete_vertex",
    "classify",
    "jacobi_quiver",
    "principal_submatrix",
]

Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Quiver:
    """Immutable quiver on vertices ``1..n``.

    ``edge_items`` is the canonical sorted tuple of ``((u, v), multiplicity)``
    with ``u <= v``.  Build instances with :func:`from_edge_list` or
    :meth:`from_multiplicities` rather than by hand.
    """

    n: int
    edge_items: tuple[tuple[Edge, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        prev = None
        for (u, v), mult in self.edge_items:
            for w in (u, v):
                if not 1 <= w <= self.n:
                    raise ValueError(f"endpoint {w} outside 1..{self.n}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) is not canonical (u <= v)")
            if mult < 1:
                raise ValueError(f"edge ({u}, {v}) has multiplicity {mult} < 1")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edge_items must be strictly sorted")
            prev = (u, v)

    @classmethod
    def from_multiplicities(cls, n: int, mults: Mapping[Edge, int]) -> "Quiver":
        acc: Counter = Counter()
        for (u, v), k in mults.items():
            if k < 0:
                raise ValueError(f"negative multiplicity {k} for ({u}, {v})")
            if k:
                acc[_canon(int(u), int(v))] += int(k)
        return cls(int(n), tuple(sorted(acc.items())))

    @property
    def edges(self) -> dict[Edge, int]:
        return dict(self.edge_items)

    @property
    def m(self) -> int:
        """Total number of edge instances, loops included."""
        return sum(k for _, k in self.edge_items)

    def multiplicity(self, u: int, v: int) -> int:
        return self.edges.get(_canon(u, v), 0)

    def loops(self, v: int) -> int:
        return self.multiplicity(v, v)

    def edge_instances(self) -> list[Edge]:
        """Every edge instance in canonical order, repeated by multiplicity."""
        out: list[Edge] = []
        for e, k in self.edge_items:
            out.extend([e] * k)
        return out

    def degrees(self) -> list[int]:
        """Vertex degrees in vertex order (index 0 is vertex 1)."""
        deg = [0] * self.n
        for (u, v), k in self.edge_items:
            if u == v:
                deg[u - 1] += k
            else:
                deg[u - 1] += k
                deg[v - 1] += k
        return deg

    def degree_sequence(self) -> list[int]:
        """Ascending degrees d_1 <= ... <= d_n."""
        return sorted(self.degrees())

    def neighbors(self, v: int) -> list[int]:
        out = []
        for (a, b), _ in self.edge_items:
            if a == v and b != v:
                out.append(b)
            elif b == v and a != v:
                out.append(a)
        return sorted(out)

    def is_connected(self) -> bool:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = self.n
        for (u, v), _ in self.edge_items:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return comps == 1

    def add_edges(self, pairs: Iterable[Edge]) -> "Quiver":
        mults = Counter(self.edges)
        for u, v in pairs:
            mults[_canon(u, v)] += 1
        return Quiver.from_multiplicities(self.n, mults)

    def relabel(self, mapping: Mapping[int, int], n: int | None = None) -> "Quiver":
        """Rename vertices through ``mapping`` (old label -> new label)."""
        n = self.n if n is None else n
        mults: Counter = Counter()
        for (u, v), k in self.edge_items:
            mults[_canon(mapping[u], mapping[v])] += k
        return Quiver.from_multiplicities(n, mults)

    def __str__(self):
        parts = []
        for (u, v), k in self.edge_items:
            parts.append(f"({u}{v})" if k == 1 else f"({u}{v})x{k}")
        return f"Quiver(n={self.n}, {{{', '.join(parts)}}})"


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Quiver:
    """Build a quiver from a list of (u, v) pairs; repeats add multiplicity."""
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    mults: Counter = Counter()
    for pair in pairs:
        u, v = (int(x) for x in pair)
        for w in (u, v):
            if not 1 <= w <= n:
                raise ValueError(f"endpoint {w} in edge ({u}, {v}) outside 1..{n}")
        mults[_canon(u, v)] += 1
    return Quiver.from_multiplicities(n, mults)


def adjacency(q: Quiver) -> np.ndarray:
    """Adjacency matrix; loops do not appear in it."""
    a = np.zeros((q.n, q.n), dtype=np.int64)
    for (u, v), k in q.edge_items:
        if u != v:
            a[u - 1, v - 1] += k
            a[v - 1, u - 1] += k
    return a


def degree_matrix(q: Quiver) -> np.ndarray:
    return np.diag(np.array(q.degrees(), dtype=np.int64))


def kirchhoff(q: Quiver) -> np.ndarray:
    """The Kirchhoff matrix ``K = B - A`` as an int64 array."""
    return degree_matrix(q) - adjacency(q)


def gradient(q: Quiver, orientation: Sequence[Edge] | None = None) -> np.ndarray:
    """Signed incidence (gradient) matrix ``F`` with ``F.T @ F == K``.

    ``orientation`` lists one ordered pair ``(a, b)`` per edge instance; it
    fixes both the direction of each edge and the row order.  The row of an
    oriented edge ``(a, b)`` with ``a != b`` has ``+1`` at ``a`` and ``-1`` at
    ``b``; a loop row has a single ``+1``.  Without an orientation the
    canonical instances ``u <= v`` are used in sorted order.
    """
    if orientation is None:
        orientation = q.edge_instances()
    else:
        orientation = [(int(a), int(b)) for a, b in orientation]
        got = Counter(_canon(a, b) for a, b in orientation)
        if got != Counter(q.edges):
            raise ValueError("orientation is not a permutation of the quiver's edge instances")
    f = np.zeros((len(orientation), q.n), dtype=np.int64)
    for row, (a, b) in enumerate(orientation):
        if a == b:
            f[row, a - 1] = 1
        else:
            f[row, a - 1] = 1
            f[row, b - 1] = -1
    return f


def principal_submatrix(m: np.ndarray, v: int) -> np.ndarray:
    """Drop row and column ``v`` (1-based)."""
    keep = [i for i in range(m.shape[0]) if i != v - 1]
    return m[np.ix_(keep, keep)]


def delete_vertex(q: Quiver, v: int) -> Quiver:
    """Remove vertex ``v``; each edge (v, w) becomes a loop at w.

    Remaining vertices keep their relative order and are renumbered
    ``1..n-1``.  The Kirchhoff matrix of the result is the principal
    submatrix of ``kirchhoff(q)`` with row and column ``v`` deleted.
    """
    if q.n < 2:
        raise ValueError("cannot delete a vertex from a single-vertex quiver")
    if not 1 <= v <= q.n:
        raise ValueError(f"vertex {v} outside 1..{q.n}")

    def new(w):
        return w if w < v else w - 1

    mults: Counter = Counter()
    for (a, b), k in q.edge_items:
        if a == v and b == v:
            continue
        if a == v:
            mults[(new(b), new(b))] += k
        elif b == v:
            mults[(new(a), new(a))] += k
        else:
            mults[_canon(new(a), new(b))] += k
    return Quiver.from_multiplicities(q.n - 1, mults)


class Classification(NamedTuple):
    is_simple: bool
    is_multigraph: bool
    has_multiple_connections: bool
    multiple_connections: tuple[Edge, ...]


def classify(q: Quiver) -> Classification:
    has_loops = any(u == v for (u, v), _ in q.edge_items)
    multi = tuple(e for e, k in q.edge_items if e[0] != e[1] and k >= 2)
    return Classification(
        is_simple=not has_loops and not multi,
        is_multigraph=not has_loops,
        has_multiple_connections=bool(multi),
        multiple_connections=multi,
    )


def jacobi_quiver(a: Sequence[int], d: Sequence[int]) -> Quiver:
    """Quiver of a periodic Jacobi operator.

    ``a[k]`` parallel edges join vertex k+1 to k+2 (cyclically) and ``d[k]``
    loops sit at vertex k+1, so the Kirchhoff matrix has diagonal
    ``a[k] + a[k-1] + d[k]`` and off-diagonal ``-a[k]``.
    """
    n = len(a)
    if len(d) != n:
        raise ValueError("a and d must have the same length")
    if n < 3:
        raise ValueError("periodic Jacobi quiver needs at least 3 sites")
    if any(x < 0 for x in a) or any(x < 0 for x in d):
        raise ValueError("entries must be non-negative")
    mults: Counter = Counter()
    for k in range(n):
        if a[k]:
            mults[_canon(k + 1, (k + 1) % n + 1)] += int(a[k])
        if d[k]:
            mults[(k + 1, k + 1)] += int(d[k])
    return Quiver.from_multiplicities(n, mults)
