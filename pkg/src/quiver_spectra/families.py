"""Named graph families and the builtin-name parser used by the CLI."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .quiver import Quiver, from_edge_list

__all__ = [
    "cycle",
    "path",
    "star",
    "wheel",
    "complete",
    "complete_bipartite",
    "petersen",
    "grid",
    "erdos_renyi",
    "koenigsberg",
    "good_will_hunting",
    "gradient_example",
    "GRADIENT_EXAMPLE_ORIENTATION",
    "builtin",
    "BUILTIN_NAMES",
]


def cycle(n: int) -> Quiver:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return from_edge_list(n, [(k, k % n + 1) for k in range(1, n + 1)])


def path(n: int) -> Quiver:
    return from_edge_list(n, [(k, k + 1) for k in range(1, n)])


def star(n: int) -> Quiver:
    """Hub 1 joined to ``n - 1`` spikes."""
    return from_edge_list(n, [(1, k) for k in range(2, n + 1)])


def wheel(n: int) -> Quiver:
    """Hub 1 joined to every vertex of a cycle on ``2..n``."""
    if n < 4:
        raise ValueError("wheel needs n >= 4")
    rim = n - 1
    edges = [(1, k) for k in range(2, n + 1)]
    edges += [(k + 2, (k + 1) % rim + 2) for k in range(rim)]
    return from_edge_list(n, edges)


def complete(n: int) -> Quiver:
    return from_edge_list(n, combinations(range(1, n + 1), 2))


def complete_bipartite(a: int, b: int) -> Quiver:
    return from_edge_list(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def petersen() -> Quiver:
    outer = [(k, k % 5 + 1) for k in range(1, 6)]
    spokes = [(k, k + 5) for k in range(1, 6)]
    inner = [(6 + k, 6 + (k + 2) % 5) for k in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def grid(a: int, b: int) -> Quiver:
    def idx(i, j):
        return i * b + j + 1

    edges = []
    for i in range(a):
        for j in range(b):
            if i + 1 < a:
                edges.append((idx(i, j), idx(i + 1, j)))
            if j + 1 < b:
                edges.append((idx(i, j), idx(i, j + 1)))
    return from_edge_list(a * b, edges)


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Quiver:
    """Sample G(n, p); pairs are drawn in lexicographic order."""
    pairs = list(combinations(range(1, n + 1), 2))
    keep = rng.random(len(pairs)) < p
    return from_edge_list(n, [e for e, k in zip(pairs, keep) if k])


def koenigsberg() -> Quiver:
    """The seven bridges: parallel pairs 1-2 and 1-4 plus 2-3, 2-4, 3-4."""
    return from_edge_list(4, [(1, 2), (1, 2), (1, 4), (1, 4), (2, 3), (2, 4), (3, 4)])


def good_will_hunting() -> Quiver:
    return from_edge_list(4, [(1, 2), (2, 4), (1, 4), (2, 3), (2, 3)])


# Row order and directions of the 3-vertex factorization example.
GRADIENT_EXAMPLE_ORIENTATION = [(1, 1), (1, 1), (1, 2), (1, 2), (1, 2), (2, 1), (2, 2), (2, 3)]


def gradient_example() -> Quiver:
    return from_edge_list(3, GRADIENT_EXAMPLE_ORIENTATION)


def _ints(args, count, name):
    if len(args) != count:
        raise ValueError(f"builtin {name!r} takes {count} integer parameter(s)")
    return [int(x) for x in args]


def builtin(spec: str) -> Quiver:
    """Parse a builtin graph name such as ``cycle:4`` or ``bipartite:2,3``."""
    name, _, params = spec.partition(":")
    args = [s for s in params.split(",") if s] if params else []
    name = name.strip().lower()
    if name == "star":
        return star(*_ints(args, 1, name))
    if name == "cycle":
        return cycle(*_ints(args, 1, name))
    if name == "path":
        return path(*_ints(args, 1, name))
    if name == "wheel":
        return wheel(*_ints(args, 1, name))
    if name == "complete":
        return complete(*_ints(args, 1, name))
    if name == "bipartite":
        return complete_bipartite(*_ints(args, 2, name))
    if name == "grid":
        return grid(*_ints(args, 2, name))
    if name == "petersen":
        _ints(args, 0, name)
        return petersen()
    if name == "random":
        if len(args) != 3:
            raise ValueError("builtin 'random' takes n,p,seed")
        n, p, seed = int(args[0]), float(args[1]), int(args[2])
        return erdos_renyi(n, p, np.random.default_rng(seed))
    if name == "koenigsberg":
        return koenigsberg()
    if name == "goodwillhunting":
        return good_will_hunting()
    if name == "gradient-example":
        return gradient_example()
    raise ValueError(f"unknown builtin graph {spec!r}")


BUILTIN_NAMES = (
    "star:n", "cycle:n", "path:n", "wheel:n", "complete:n", "bipartite:m,n",
    "petersen", "grid:a,b", "random:n,p,seed", "koenigsberg", "goodwillhunting",
    "gradient-example",
)
