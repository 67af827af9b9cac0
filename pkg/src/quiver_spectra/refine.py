"""Barycentric refinement, tree-forest ratio traces and potential curves.

The refinement of a simple graph has one vertex per non-empty clique
(singletons and non-maximal cliques included); two cliques are joined when
one strictly contains the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .counting import rooted_tree_count
from .quiver import Quiver, classify, from_edge_list, kirchhoff
from .spectral import det_shifted, eigenvalues_sym, pseudo_det

__all__ = [
    "CLIQUE_BUDGET",
    "EXACT_VERTEX_BUDGET",
    "cliques",
    "barycentric_refine",
    "TraceStep",
    "RefinementTrace",
    "refinement_trace",
    "PotentialRow",
    "potential_curve",
]

CLIQUE_BUDGET = 200_000
# Exact determinants on larger Kirchhoff matrices get slow in pure Python.
EXACT_VERTEX_BUDGET = 400
LOG2 = math.log(2.0)


class CliqueBudgetExceeded(ValueError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"found {count} cliques, over the budget of {budget}")
        self.count = count


def _require_simple(g: Quiver):
    if not classify(g).is_simple:
        raise ValueError("barycentric refinement needs a simple graph (no loops, no parallel edges)")


def cliques(g: Quiver, budget: int = CLIQUE_BUDGET) -> list[tuple[int, ...]]:
    """All non-empty cliques, each as an ascending vertex tuple, sorted by (size, tuple)."""
    _require_simple(g)
    later = {v: {w for w in g.neighbors(v) if w > v} for v in range(1, g.n + 1)}
    out: list[tuple[int, ...]] = []

    # Each clique is reached once, by adding vertices in increasing order.
    def grow(clique, candidates):
        out.append(clique)
        if len(out) > budget:
            raise CliqueBudgetExceeded(len(out), budget)
        for w in sorted(candidates):
            grow(clique + (w,), candidates & later[w])

    for v in range(1, g.n + 1):
        grow((v,), later[v])
    out.sort(key=lambda c: (len(c), c))
    return out


def barycentric_refine(g: Quiver, budget: int = CLIQUE_BUDGET) -> Quiver:
    """The graph of cliques of ``g`` under strict containment.

    Vertex ``i`` of the result is the ``i``-th clique in (size, tuple) order,
    so singletons come first and keep their labels.
    """
    cl = cliques(g, budget)
    index = {c: i + 1 for i, c in enumerate(cl)}
    edges = []
    for c in cl:
        k = len(c)
        # every proper non-empty subset of a clique is itself a clique
        for mask in range(1, (1 << k) - 1):
            sub = tuple(c[j] for j in range(k) if mask >> j & 1)
            edges.append((index[sub], index[c]))
    return from_edge_list(len(cl), edges)


def _dimension(g: Quiver) -> int:
    return max(len(c) for c in cliques(g)) - 1


@dataclass(frozen=True)
class TraceStep:
    step: int
    vertices: int
    edges: int
    forests: int              # det(1 + K)
    trees_rooted: int         # Det(K)
    log_tau_per_vertex: float
    u_minus1: float           # U(-1) = log det(1 + K) / n
    u0_pseudo: float          # log Det(K) / n

    @property
    def tau(self) -> Fraction:
        return Fraction(self.forests, self.trees_rooted)

    def row(self) -> list:
        return [self.step, self.vertices, self.edges, self.log_tau_per_vertex, self.u_minus1, self.u0_pseudo]


@dataclass
class RefinementTrace:
    base: str
    dimension: int
    steps: list[TraceStep] = field(default_factory=list)
    truncated: bool = False
    truncation_reason: str | None = None

    COLUMNS = ("step", "V", "E", "log_tau_per_vertex", "U_minus1", "U0_pseudo")

    def rows(self) -> list[list]:
        return [s.row() for s in self.steps]

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "dimension": self.dimension,
            "truncated": self.truncated,
            "truncation_reason": self.truncation_reason,
            "steps": [
                {
                    "step": s.step,
                    "vertices": s.vertices,
                    "edges": s.edges,
                    "forests_rooted": s.forests,
                    "trees_rooted": s.trees_rooted,
                    "tau": str(s.tau),
                    "log_tau_per_vertex": s.log_tau_per_vertex,
                    "U_minus1": s.u_minus1,
                    "U0_pseudo": s.u0_pseudo,
                }
                for s in self.steps
            ],
        }


def _trace_step(step: int, g: Quiver) -> TraceStep:
    k = kirchhoff(g)
    forests = det_shifted(k, 1)
    trees = rooted_tree_count(g) if g.is_connected() else pseudo_det(k)
    n = g.n
    u1 = math.log(forests) / n
    u0 = math.log(trees) / n
    return TraceStep(step, n, g.m, forests, trees, u1 - u0, u1, u0)


def refinement_trace(g: Quiver, steps: int, base: str | None = None,
                     clique_budget: int = CLIQUE_BUDGET,
                     vertex_budget: int = EXACT_VERTEX_BUDGET) -> RefinementTrace:
    """Exact tree-forest data for ``g`` and its first ``steps`` refinements.

    Step 0 is the base graph.  If a refinement or an exact count would blow
    a budget the trace stops there and says so.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    _require_simple(g)
    if g.m == 0 and g.n > 1:
        raise ValueError("refinement trace needs a graph with spanning trees; got isolated vertices")
    trace = RefinementTrace(base or str(g), _dimension(g))
    current = g
    for step in range(steps + 1):
        if current.n > vertex_budget:
            trace.truncated = True
            trace.truncation_reason = f"step {step}: {current.n} vertices exceed the exact budget {vertex_budget}"
            break
        trace.steps.append(_trace_step(step, current))
        if step == steps:
            break
        try:
            current = barycentric_refine(current, clique_budget)
        except CliqueBudgetExceeded as exc:
            trace.truncated = True
            trace.truncation_reason = f"step {step + 1}: {exc}"
            break
    return trace


@dataclass(frozen=True)
class PotentialRow:
    z: float
    potential: float            # U(z); the pseudo variant at z = 0 for a singular K
    diagonal: float             # (1/n) sum log(d_k - z), over d_k > 0 when pseudo
    pseudo: bool
    holds: bool                 # U <= log 2 + diagonal
    slack: float
    holds_printed: bool         # U <= 2 + diagonal, the looser printed constant

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "U": self.potential,
            "diagonal": self.diagonal,
            "pseudo": self.pseudo,
            "bound_log2": LOG2 + self.diagonal,
            "holds_log2": self.holds,
            "slack": self.slack,
            "holds_printed_constant": self.holds_printed,
        }


def potential_curve(q: Quiver, z_grid: Sequence[float]) -> list[PotentialRow]:
    """``U(z)`` against the diagonal comparison ``log 2 + (1/n) sum log(d_k - z)``.

    At ``z = 0`` a singular ``K`` switches to the pseudo variant: the exact
    pseudo-determinant against the product of the positive degrees.
    """
    for z in z_grid:
        if z > 0:
            raise ValueError(f"potential grid values must be <= 0, got {z}")
    k = kirchhoff(q)
    n = q.n
    spectrum = eigenvalues_sym(k)
    d = np.asarray(q.degree_sequence(), dtype=float)
    rows = []
    for z in z_grid:
        z = float(z)
        if z < 0:
            u = float(np.sum(np.log(spectrum.values - z))) / n
            diag = float(np.sum(np.log(d - z))) / n
            pseudo = False
        else:
            # exact determinants at the spectrum's edge
            det = det_shifted(k, 0)
            pseudo = det == 0
            if pseudo:
                u = math.log(pseudo_det(k)) / n
                diag = float(np.sum(np.log(d[d > 0]))) / n
            else:
                u = math.log(det) / n
                diag = float(np.sum(np.log(d))) / n
        slack = LOG2 + diag - u
        rows.append(PotentialRow(z, u, diag, pseudo, slack >= -1e-12, slack, 2.0 + diag - u >= -1e-12))
    return rows
