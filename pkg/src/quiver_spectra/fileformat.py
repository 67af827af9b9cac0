"""Plain-text quiver files.

::

    # Koenigsberg bridges
    n 4
    1 2
    1 2
    ...

The first non-comment line is ``n <N>``; every further line is one edge
instance ``u v`` with 1-based endpoints.  Repeated lines add multiplicity and
``u == v`` is a loop.  ``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

import os
from typing import Iterable

from .quiver import Quiver

__all__ = ["QuiverFormatError", "parse_quiver", "read_quiver", "format_quiver", "write_quiver"]


class QuiverFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line
        self.source = source


def parse_quiver(lines: Iterable[str] | str, source: str = "<string>") -> Quiver:
    if isinstance(lines, str):
        lines = lines.splitlines()
    n = None
    mults: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise QuiverFormatError(f"expected 'n <N>' header, got {text!r}", lineno, source)
            try:
                n = int(parts[1])
            except ValueError:
                raise QuiverFormatError(f"vertex count {parts[1]!r} is not an integer", lineno, source) from None
            if n < 1:
                raise QuiverFormatError(f"vertex count must be positive, got {n}", lineno, source)
            continue
        if len(parts) != 2:
            raise QuiverFormatError(f"expected an edge 'u v', got {text!r}", lineno, source)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise QuiverFormatError(f"edge endpoints must be integers, got {text!r}", lineno, source) from None
        for w in (u, v):
            if not 1 <= w <= n:
                raise QuiverFormatError(f"endpoint {w} outside 1..{n}", lineno, source)
        key = (u, v) if u <= v else (v, u)
        mults[key] = mults.get(key, 0) + 1
    if n is None:
        raise QuiverFormatError("missing 'n <N>' header", None, source)
    return Quiver.from_multiplicities(n, mults)


def read_quiver(path: str | os.PathLike) -> Quiver:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver(fh, source=os.fspath(path))


def format_quiver(q: Quiver, comment: str | None = None) -> str:
    """Canonical text: sorted edge instances, one per line."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"n {q.n}")
    out.extend(f"{u} {v}" for u, v in q.edge_instances())
    return "\n".join(out) + "\n"


def write_quiver(q: Quiver, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_quiver(q, comment))
