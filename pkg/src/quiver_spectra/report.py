"""Serialization of run results: JSON and CSV with a config header, SVG band plots.

Output is a pure function of the config and the payload so that repeated
runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

__all__ = ["to_json", "to_csv", "Panel", "band_svg", "PANEL_WIDTH", "PANEL_HEIGHT"]

PANEL_WIDTH = 600
PANEL_HEIGHT = 400


def _clean(x):
    """Make a payload JSON-safe: tuples to lists, non-finite floats to strings."""
    if isinstance(x, Mapping):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):  # numpy scalars
        return _clean(x.item())
    return x


def to_json(config: Mapping, payload: Mapping) -> str:
    doc = {"config": _clean(config), "result": _clean(payload)}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return x


def to_csv(config: Mapping, columns: Sequence[str], rows: Sequence[Sequence], notes: Sequence[str] = ()) -> str:
    """CSV body preceded by a ``# config: {...}`` comment line and ``# note:`` lines."""
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(_clean(config), sort_keys=True) + "\n")
    for note in notes:
        buf.write(f"# note: {note}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


@dataclass
class Panel:
    title: str
    eigenvalues: Sequence[float]
    upper: dict[str, Sequence] = field(default_factory=dict)
    lower: dict[str, Sequence] = field(default_factory=dict)


_UPPER_COLORS = ("#1f4fd1", "#6a8ff0", "#2aa198")
_LOWER_COLORS = ("#c0392b", "#e67e22", "#8e44ad", "#7f8c8d")
_MARGIN = (50, 20, 40, 40)  # left, right, top, bottom


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _polyline(points, color, width, dash=None) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline fill="none" stroke="{color}" stroke-width="{width}"{extra} points="{pts}"/>'


def _panel_svg(panel: Panel, y0: int) -> list[str]:
    n = len(panel.eigenvalues)
    series = [list(panel.eigenvalues)]
    series += [list(v) for v in panel.upper.values()] + [list(v) for v in panel.lower.values()]
    finite = [float(v) for s in series for v in s if v is not None]
    lo = min(0.0, min(finite, default=0.0))
    hi = max(finite, default=1.0)
    if hi <= lo:
        hi = lo + 1.0
    left, right, top, bottom = _MARGIN
    w = PANEL_WIDTH - left - right
    h = PANEL_HEIGHT - top - bottom

    def px(k):  # k is 1-based
        return left + (w * (k - 1) / (n - 1) if n > 1 else w / 2)

    def py(v):
        return top + h * (1 - (float(v) - lo) / (hi - lo))

    def pts(vals):
        return [(px(i + 1), py(v)) for i, v in enumerate(vals) if v is not None]

    out = [f'<svg x="0" y="{y0}" width="{PANEL_WIDTH}" height="{PANEL_HEIGHT}" '
           f'viewBox="0 0 {PANEL_WIDTH} {PANEL_HEIGHT}">']
    out.append(f'<rect x="0" y="0" width="{PANEL_WIDTH}" height="{PANEL_HEIGHT}" fill="white" stroke="#cccccc"/>')
    out.append(f'<text x="{PANEL_WIDTH // 2}" y="22" text-anchor="middle" font-family="sans-serif" '
               f'font-size="14">{escape(panel.title)}</text>')
    out.append(f'<line x1="{left}" y1="{_fmt(top + h)}" x2="{left + w}" y2="{_fmt(top + h)}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + h}" stroke="black"/>')
    for frac in (0.0, 0.5, 1.0):
        v = lo + frac * (hi - lo)
        out.append(f'<text x="{left - 6}" y="{_fmt(py(v) + 4)}" text-anchor="end" font-family="sans-serif" '
                   f'font-size="10">{v:.3g}</text>')
    out.append(f'<text x="{left + w // 2}" y="{PANEL_HEIGHT - 8}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="10">k = 1..{n}</text>')
    legend = []
    for i, (name, vals) in enumerate(panel.upper.items()):
        color = _UPPER_COLORS[i % len(_UPPER_COLORS)]
        out.append(_polyline(pts(vals), color, 1.5))
        legend.append((name, color))
    for i, (name, vals) in enumerate(panel.lower.items()):
        color = _LOWER_COLORS[i % len(_LOWER_COLORS)]
        out.append(_polyline(pts(vals), color, 1.5, dash="4 3"))
        legend.append((name, color))
    out.append(_polyline(pts(panel.eigenvalues), "black", 3.5))
    legend.append(("eigenvalues", "black"))
    for i, (name, color) in enumerate(legend):
        y = top + 8 + 14 * i
        out.append(f'<line x1="{left + 10}" y1="{y}" x2="{left + 30}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + 34}" y="{y + 4}" font-family="sans-serif" font-size="10">{escape(name)}</text>')
    out.append("</svg>")
    return out


def band_svg(panels: Sequence[Panel], header: Mapping | None = None) -> str:
    """Panels stacked vertically, each a fixed 600x400 viewport; no external assets."""
    total = PANEL_HEIGHT * max(1, len(panels))
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL_WIDTH}" height="{total}" '
             f'viewBox="0 0 {PANEL_WIDTH} {total}">']
    if header is not None:
        # '--' is not allowed inside an XML comment
        lines.append("<!-- config: " + json.dumps(_clean(header), sort_keys=True).replace("--", "- -") + " -->")
    for i, panel in enumerate(panels):
        lines.extend(_panel_svg(panel, i * PANEL_HEIGHT))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
