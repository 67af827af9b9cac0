"""Spanning tree and forest counts, matrix route versus enumeration.

Parallel edges are distinct edge instances throughout: the doubled edge on
two vertices has two spanning trees.  Enumerations are capped by explicit
budgets and raise instead of truncating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Literal

import numpy as np

from .quiver import Quiver, classify, kirchhoff
from .spectral import _interpolate_integer, bareiss_det, char_poly, det_shifted, int_rows, pseudo_det

__all__ = [
    "ForestCount",
    "BudgetExceeded",
    "count_matrix",
    "count_brute_trees",
    "count_brute_forests",
    "count_deletion_contraction",
    "rooted_tree_count",
    "det_leibniz",
    "CauchyBinetVerdict",
    "cauchy_binet_check",
    "pythagorean_check",
    "tree_forest_ratio_series",
    "cycle_forest_counts",
]

TREE_EDGE_BUDGET = 24
FOREST_EDGE_BUDGET = 20


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ForestCount:
    trees_rooted: int
    trees_unrooted: int
    forests_rooted: int
    ratio: Fraction | None  # forests / trees; None when there are no trees

    def to_dict(self) -> dict:
        return {
            "trees_rooted": self.trees_rooted,
            "trees_unrooted": self.trees_unrooted,
            "forests_rooted": self.forests_rooted,
            "ratio": None if self.ratio is None else str(self.ratio),
            "ratio_float": None if self.ratio is None else float(self.ratio),
        }


def _require_loop_free(q: Quiver):
    if not classify(q).is_multigraph:
        raise ValueError("tree and forest counts need a loop-free quiver")


def count_matrix(q: Quiver) -> ForestCount:
    """Rooted trees as ``Det(K)`` and rooted forests as ``det(1 + K)``."""
    _require_loop_free(q)
    k = kirchhoff(q)
    forests = det_shifted(k, 1)
    if not q.is_connected():
        return ForestCount(0, 0, forests, None)
    rooted = pseudo_det(k)
    unrooted, rem = divmod(rooted, q.n)
    if rem:
        raise ArithmeticError(f"Det(K) = {rooted} is not divisible by n = {q.n}")
    return ForestCount(rooted, unrooted, forests, Fraction(forests, rooted))


def rooted_tree_count(q: Quiver) -> int:
    """``n * det`` of the reduced Kirchhoff matrix; O(n^3) for larger graphs."""
    _require_loop_free(q)
    if q.n == 1:
        return 1
    k = int_rows(kirchhoff(q))
    return q.n * bareiss_det([row[1:] for row in k[1:]])


class _UnionFind:
    """Union-find with rollback, tracking component sizes."""

    def __init__(self, n):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.history = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append(rb)
        return True

    def undo(self):
        rb = self.history.pop()
        ra = self.parent[rb]
        self.size[ra] -= self.size[rb]
        self.parent[rb] = rb


def count_brute_trees(q: Quiver, budget: int = TREE_EDGE_BUDGET) -> int:
    """Rooted spanning trees by checking every (n-1)-subset of edge instances."""
    _require_loop_free(q)
    edges = q.edge_instances()
    if len(edges) > budget:
        raise BudgetExceeded(f"{len(edges)} edge instances exceed the tree budget {budget}")
    count = 0
    for subset in combinations(edges, q.n - 1):
        uf = _UnionFind(q.n)
        if all(uf.union(a, b) for a, b in subset):
            count += 1
    return q.n * count


def count_brute_forests(q: Quiver, budget: int = FOREST_EDGE_BUDGET) -> int:
    """Rooted spanning forests by walking every acyclic subset of edge instances.

    Each forest contributes the product of its component sizes (one root per
    tree).
    """
    _require_loop_free(q)
    edges = q.edge_instances()
    if len(edges) > budget:
        raise BudgetExceeded(f"{len(edges)} edge instances exceed the forest budget {budget}")
    uf = _UnionFind(q.n)
    roots = range(1, q.n + 1)

    def weight():
        return math.prod(uf.size[v] for v in roots if uf.parent[v] == v)

    def walk(i):
        if i == len(edges):
            return weight()
        total = walk(i + 1)
        a, b = edges[i]
        if uf.union(a, b):
            total += walk(i + 1)
            uf.undo()
        return total

    return walk(0)


def count_deletion_contraction(q: Quiver) -> int:
    """Unrooted spanning trees via ``t(G) = t(G - e) + t(G / e)``.

    Parallel copies are handled together, ``t(G) = t(G - all copies) + k t(G / e)``;
    contraction drops the loops it creates.
    """
    _require_loop_free(q)
    pairs = tuple(((u - 1, v - 1), k) for (u, v), k in q.edge_items)
    return _dc(q.n, pairs)


@lru_cache(maxsize=None)
def _dc(n: int, pairs: tuple) -> int:
    if not pairs:
        return 1 if n == 1 else 0
    if not _connected(n, pairs):
        return 0
    (a, b), k = pairs[0]
    rest = pairs[1:]
    deleted = _dc(n, rest)

    def relabel(x):
        x = a if x == b else x
        return x - 1 if x > b else x

    merged: dict = {}
    for (u, v), m in rest:
        u, v = relabel(u), relabel(v)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0) + m
    return deleted + k * _dc(n - 1, tuple(sorted(merged.items())))


def _connected(n, pairs) -> bool:
    uf = _UnionFind(n)
    comps = n
    for (u, v), _ in pairs:
        if uf.union(u + 1, v + 1):
            comps -= 1
    return comps == 1


def det_leibniz(rows) -> int:
    """Determinant by permutation expansion; an oracle independent of elimination."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term *= rows[i][p]
            if not term:
                break
        total += term
    return total


@dataclass(frozen=True)
class CauchyBinetVerdict:
    lhs: tuple[int, ...]          # coefficients of det(1 + x F^T G)
    rhs: tuple[int, ...]          # sum over |P| = j of det(F_P) det(G_P)
    pseudo_det: int               # Det(F^T G), product of nonzero eigenvalues
    pseudo_order: int             # number of nonzero eigenvalues of F^T G
    rank: int

    @property
    def polynomial_ok(self) -> bool:
        return self.lhs == self.rhs

    @property
    def pseudo_ok(self) -> bool:
        return self.pseudo_det == self.rhs[self.pseudo_order]

    @property
    def ok(self) -> bool:
        return self.polynomial_ok and self.pseudo_ok


def _minor_sums(f, g, rows: int, cols: int) -> list[int]:
    out = [0] * (cols + 1)
    for j in range(0, min(rows, cols) + 1):
        acc = 0
        for rs in combinations(range(rows), j):
            for cs in combinations(range(cols), j):
                fm = [[f[r][c] for c in cs] for r in rs]
                gm = [[g[r][c] for c in cs] for r in rs]
                df = det_leibniz(fm)
                if df:
                    acc += df * det_leibniz(gm)
        out[j] = acc
    return out


def cauchy_binet_check(F, G, max_dim: int = 5) -> CauchyBinetVerdict:
    """Compare ``det(1 + x F^T G)`` with the sum of products of matching minors.

    ``F`` and ``G`` have the same shape.  The left side is evaluated by exact
    elimination at ``x = 0..m`` and interpolated; the right side sums
    ``det(F_P) det(G_P)`` over all pairs of equal-size row and column subsets.
    """
    f = np.asarray(F, dtype=np.int64)
    g = np.asarray(G, dtype=np.int64)
    if f.ndim != 2 or f.shape != g.shape:
        raise ValueError(f"F and G must be matrices of equal shape, got {f.shape} and {g.shape}")
    if max(f.shape) > max_dim:
        raise BudgetExceeded(f"shape {f.shape} exceeds the minor budget {max_dim}")
    cols = f.shape[1]
    a = [[int(x) for x in row] for row in (f.T @ g).tolist()]
    values = []
    for x in range(cols + 1):
        values.append(bareiss_det([[(1 if i == j else 0) + x * a[i][j] for j in range(cols)] for i in range(cols)]))
    lhs = _interpolate_integer(values) if cols else [1]
    rhs = _minor_sums(f.tolist(), g.tolist(), *f.shape) if cols else [1]
    cp = char_poly(a) if cols else None
    if cp is None or cp.nullity == cp.degree:
        order, pdet = 0, 1
    else:
        order = cp.degree - cp.nullity
        pdet = (-1) ** order * cp.coeffs[cp.nullity]
    rank = int(np.linalg.matrix_rank(np.asarray(a, dtype=float))) if cols else 0
    return CauchyBinetVerdict(tuple(lhs), tuple(rhs), pdet, order, rank)


def pythagorean_check(F, max_dim: int = 8) -> CauchyBinetVerdict:
    """``det(1 + F^T F) = sum det(F_P)^2`` and ``Det(F^T F) = sum_{|P|=rank} det(F_P)^2``."""
    return cauchy_binet_check(F, F, max_dim=max_dim)


def tree_forest_ratio_series(family: Literal["cycle", "complete"], n_max: int) -> list[tuple[int, Fraction, float]]:
    """Exact ``tau = det(1 + K) / Det(K)`` along a family, with ``log(tau) / n``."""
    from .families import complete, cycle

    if family == "cycle":
        if n_max > 64:
            raise BudgetExceeded("cycle series is capped at n = 64")
        make, start = cycle, 3
    elif family == "complete":
        if n_max > 14:
            raise BudgetExceeded("complete-graph series is capped at n = 14")
        make, start = complete, 2
    else:
        raise ValueError(f"unknown family {family!r}")
    out = []
    for n in range(start, n_max + 1):
        q = make(n)
        tau = Fraction(det_shifted(kirchhoff(q), 1), rooted_tree_count(q))
        out.append((n, tau, (math.log(tau.numerator) - math.log(tau.denominator)) / n))
    return out


def cycle_forest_counts(n_max: int) -> dict[int, int]:
    """Rooted forest counts of the cycle family, starting from the doubled edge at n = 2."""
    from .families import cycle
    from .quiver import from_edge_list

    out = {2: det_shifted(kirchhoff(from_edge_list(2, [(1, 2), (1, 2)])), 1)}
    for n in range(3, n_max + 1):
        out[n] = det_shifted(kirchhoff(cycle(n)), 1)
    return out
