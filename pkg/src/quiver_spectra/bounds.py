"""Eigenvalue inequalities for Kirchhoff matrices, as checkable reports.

Every check compares float eigenvalues against bounds that are exact
integers or rationals.  A float difference within ``band`` of a bound, or
beyond it, is settled on the exact characteristic polynomial: a violation
must be confirmed by an exact root count and an equality needs ``p(b) == 0``.
Checks given only raw spectral data (no matrix) use the float band alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .quiver import Quiver, adjacency, classify, gradient, kirchhoff
from .spectral import (
    CharPoly,
    Spectrum,
    below_exactly,
    char_poly,
    det_shifted,
    edge_form_matrix,
    eigenvalues_sym,
    exceeds_exactly,
    max_abs_column_sum,
    pseudo_det,
)

__all__ = [
    "BAND",
    "Violation",
    "BoundReport",
    "SpectralData",
    "check_theorem1",
    "check_theorem1_matrix",
    "theorem1_from_data",
    "check_theorem2",
    "lower_bound_brouwer_haemers",
    "lower_bound_horn_johnson",
    "schur_horn",
    "schur_horn_error",
    "schur_horn_error_from_data",
    "GershgorinReport",
    "gershgorin_compare",
    "gershgorin_from_data",
    "DetBoundReport",
    "det_bounds",
    "schroedinger_check",
    "SpectralRadiusChain",
    "spectral_radius_chain",
    "edge_degree_bound",
    "combine",
]

BAND = 1e-6


@dataclass(frozen=True)
class Violation:
    bound: str
    k: int
    slack: float  # how far the inequality is broken, always > 0


@dataclass
class BoundReport:
    """Per-index eigenvalue data with named lower/upper bounds.

    ``upper`` and ``lower`` map a bound name to a length-n list (``None`` where
    the bound does not apply).  ``subject`` records what a bound constrains:
    ``"lambda"`` (the k-th eigenvalue) or ``"partial_sum"`` (the sum of the
    k smallest).
    """

    name: str
    n: int
    eigenvalues: list[float]
    degrees: list
    upper: dict[str, list] = field(default_factory=dict)
    lower: dict[str, list] = field(default_factory=dict)
    subject: dict[str, str] = field(default_factory=dict)
    equalities: list[tuple[str, int]] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    exceptions: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def equality_indices(self, bound: str) -> list[int]:
        return [k for b, k in self.equalities if b == bound]

    def rows(self) -> list[dict]:
        out = []
        for i in range(self.n):
            row = {"k": i + 1, "lambda": self.eigenvalues[i], "d": _num(self.degrees[i])}
            for name, vals in self.lower.items():
                row[f"lower_{name}"] = _num(vals[i])
            for name, vals in self.upper.items():
                row[f"upper_{name}"] = _num(vals[i])
            out.append(row)
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "lambda": [float(x) for x in self.eigenvalues],
            "d": [_num(x) for x in self.degrees],
            "upper": {k: [_num(x) for x in v] for k, v in self.upper.items()},
            "lower": {k: [_num(x) for x in v] for k, v in self.lower.items()},
            "subject": dict(self.subject),
            "equalities": [[b, k] for b, k in self.equalities],
            "violations": [[v.bound, v.k, v.slack] for v in self.violations],
            "exceptions": [[v.bound, v.k, v.slack] for v in self.exceptions],
            "notes": list(self.notes),
            "ok": self.ok,
        }


def _num(x):
    if x is None:
        return None
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


class SpectralData:
    """Kirchhoff matrix, float spectrum and lazily computed exact char poly."""

    def __init__(self, matrix, spectrum: Spectrum | None = None, diagonal=None):
        self.matrix = np.asarray(matrix)
        self.spectrum = spectrum if spectrum is not None else eigenvalues_sym(self.matrix)
        diag = np.diag(self.matrix) if diagonal is None else diagonal
        self.diagonal = sorted(int(x) for x in diag)

    @classmethod
    def of(cls, q: Quiver, spectrum: Spectrum | None = None) -> "SpectralData":
        return cls(kirchhoff(q), spectrum)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> list[float]:
        return self.spectrum.tolist()

    @cached_property
    def cp(self) -> CharPoly:
        return char_poly(self.matrix)


def _pad(d: Sequence, k: int):
    """``d_k`` with 1-based k and ``d_k = 0`` for ``k <= 0``."""
    return d[k - 1] if k >= 1 else 0


def _evaluate(report: BoundReport, name: str, kind: str, bounds: Sequence, lam: Sequence[float],
              cp: CharPoly | None, band: float, *, exception_at: Sequence[int] = ()):
    """Compare ``lam[k]`` to ``bounds[k]`` and record equalities and violations."""
    (report.upper if kind == "upper" else report.lower)[name] = list(bounds)
    report.subject[name] = "lambda"
    for i, b in enumerate(bounds):
        if b is None:
            continue
        k = i + 1
        diff = (lam[i] - float(b)) if kind == "upper" else (float(b) - lam[i])
        if diff < -band:
            continue
        if cp is None:
            broken = diff > band
            tied = not broken
        else:
            broken = exceeds_exactly(cp, k, b) if kind == "upper" else below_exactly(cp, k, b)
            tied = not broken and abs(diff) <= band and cp(_exact(b)) == 0
            if diff > band and not broken:
                report.notes.append(f"{name}: float exceedance {diff:.3g} at k={k} not confirmed exactly")
        if broken:
            target = report.exceptions if k in exception_at else report.violations
            target.append(Violation(name, k, max(diff, 0.0)))
        elif tied:
            report.equalities.append((name, k))


def _exact(b):
    return b if isinstance(b, (int, Fraction)) else Fraction(b)


def _upper_theorem1(report: BoundReport, d: Sequence, lam, cp, band):
    n = len(d)
    _evaluate(report, "theorem1", "upper", [d[k - 1] + _pad(d, k - 1) for k in range(1, n + 1)], lam, cp, band)
    _evaluate(report, "twice_degree", "upper", [2 * x for x in d], lam, cp, band)


def check_theorem1(q: Quiver, spectrum: Spectrum | None = None, band: float = BAND,
                   data: SpectralData | None = None) -> BoundReport:
    """``lam_k <= d_k + d_{k-1}`` (with ``d_0 = 0``) and its corollary ``lam_k <= 2 d_k``."""
    data = data or SpectralData.of(q, spectrum)
    rep = BoundReport("theorem1", data.n, data.eigenvalues, data.diagonal)
    _upper_theorem1(rep, data.diagonal, data.eigenvalues, _Lazy(data), band)
    return rep


def check_theorem1_matrix(m, band: float = BAND) -> BoundReport:
    """Apply the Theorem-1 test to an arbitrary symmetric integer matrix.

    The sorted diagonal plays the role of the degrees.  Used as a negative
    control: the inequality fails for general symmetric matrices.
    """
    data = SpectralData(m)
    rep = BoundReport("theorem1", data.n, data.eigenvalues, data.diagonal)
    _upper_theorem1(rep, data.diagonal, data.eigenvalues, _Lazy(data), band)
    return rep


def theorem1_from_data(eigenvalues: Sequence[float], degrees: Sequence[int], band: float = BAND) -> BoundReport:
    lam = sorted(float(x) for x in eigenvalues)
    d = sorted(degrees)
    if len(lam) != len(d):
        raise ValueError("eigenvalue and degree lists differ in length")
    rep = BoundReport("theorem1", len(d), lam, d)
    _upper_theorem1(rep, d, lam, None, band)
    return rep


class _Lazy:
    """Stand-in for a CharPoly that computes it on first use."""

    def __init__(self, data: SpectralData):
        self._data = data

    def __getattr__(self, item):
        return getattr(self._data.cp, item)

    def __call__(self, x):
        return self._data.cp(x)


def check_theorem2(q: Quiver, spectrum: Spectrum | None = None, band: float = BAND,
                   data: SpectralData | None = None) -> BoundReport:
    """``lam_k >= d_k - (n - k)`` for quivers without multiple connections."""
    cls = classify(q)
    if cls.has_multiple_connections:
        u, v = cls.multiple_connections[0]
        raise ValueError(
            f"lower bound needs a quiver without multiple connections; "
            f"edge ({u}, {v}) has multiplicity {q.multiplicity(u, v)}"
        )
    data = data or SpectralData.of(q, spectrum)
    d, n = data.diagonal, data.n
    rep = BoundReport("theorem2", n, data.eigenvalues, d)
    _evaluate(rep, "theorem2", "lower", [d[k - 1] - (n - k) for k in range(1, n + 1)],
              data.eigenvalues, _Lazy(data), band)
    return rep


def lower_bound_brouwer_haemers(q: Quiver, spectrum: Spectrum | None = None, band: float = BAND,
                                data: SpectralData | None = None) -> BoundReport:
    """``lam_k >= d_k - (n - k) + 1``.

    Checked for k >= 2 as the real test.  The k = 1 comparison is recorded
    under ``exceptions`` (complete graphs break it) and never counts as a
    violation.
    """
    data = data or SpectralData.of(q, spectrum)
    d, n = data.diagonal, data.n
    rep = BoundReport("brouwer_haemers", n, data.eigenvalues, d)
    _evaluate(rep, "brouwer_haemers", "lower", [d[k - 1] - (n - k) + 1 for k in range(1, n + 1)],
              data.eigenvalues, _Lazy(data), band, exception_at=(1,))
    if not classify(q).is_simple:
        rep.notes.append("not a simple graph: the bound is conjectural here")
    return rep


def lower_bound_horn_johnson(q: Quiver, spectrum: Spectrum | None = None, band: float = BAND,
                             data: SpectralData | None = None) -> BoundReport:
    """``lam_k(K) >= lam_k(-A)``; both sides are floats, so only the band applies."""
    data = data or SpectralData.of(q, spectrum)
    neg_a = eigenvalues_sym(-adjacency(q)).tolist()
    rep = BoundReport("horn_johnson", data.n, data.eigenvalues, data.diagonal)
    _evaluate(rep, "horn_johnson", "lower", neg_a, data.eigenvalues, None, band)
    # pure float comparison: ties inside the band are not meaningful equalities
    rep.equalities = [e for e in rep.equalities if e[0] != "horn_johnson"]
    return rep


def schur_horn(q: Quiver, sharpened: bool = False, spectrum: Spectrum | None = None,
               band: float = BAND, data: SpectralData | None = None) -> BoundReport:
    """Partial sums ``sum_{j<=k} lam_j <= sum_{j<=k} d_j``.

    The sharpened form subtracts 1 for ``1 <= k <= n - 1`` and is applied only
    to connected loop-free quivers with at least one edge; elsewhere its
    entries are ``None``.  Partial sums of irrational eigenvalues have no cheap
    exact test, so these comparisons use the float band.
    """
    data = data or SpectralData.of(q, spectrum)
    lam, d, n = data.eigenvalues, data.diagonal, data.n
    rep = BoundReport("schur_horn_sharpened" if sharpened else "schur_horn", n, lam, d)
    partial = np.cumsum(lam).tolist()
    dsum = np.cumsum(d).tolist() if n else []
    bounds = [int(x) for x in dsum]
    _evaluate(rep, "schur_horn", "upper", bounds, partial, None, band)
    rep.subject["schur_horn"] = "partial_sum"
    if abs(partial[-1] - bounds[-1]) > band:
        rep.violations.append(Violation("trace", n, abs(partial[-1] - bounds[-1])))
    if sharpened:
        applicable = q.m > 0 and q.is_connected() and classify(q).is_multigraph
        sharp = [b - 1 if applicable and k < n else None for k, b in enumerate(bounds, start=1)]
        _evaluate(rep, "schur_horn_sharpened", "upper", sharp, partial, None, band)
        rep.subject["schur_horn_sharpened"] = "partial_sum"
        if not applicable:
            rep.notes.append("sharpened form skipped: needs a connected loop-free quiver with an edge")
    return rep


def schur_horn_error_from_data(eigenvalues: Sequence[float], degrees: Sequence[int],
                               band: float = BAND) -> BoundReport:
    lam = sorted(float(x) for x in eigenvalues)
    d = sorted(degrees)
    n = len(d)
    rep = BoundReport("schur_horn_error", n, lam, d)
    err = (np.cumsum(d) - np.cumsum(lam)).tolist() if n else []
    _evaluate(rep, "schur_horn_error", "upper", list(d), err, None, band)
    rep.subject["schur_horn_error"] = "schur_horn_error"
    rep.notes.append("upper bound d_k applies to sum_{j<=k} (d_j - lam_j)")
    return rep


def schur_horn_error(q: Quiver, spectrum: Spectrum | None = None, band: float = BAND,
                     data: SpectralData | None = None) -> BoundReport:
    """Schur-Horn error ``sum_{j<=k} d_j - sum_{j<=k} lam_j <= d_k`` (conjectural)."""
    data = data or SpectralData.of(q, spectrum)
    rep = schur_horn_error_from_data(data.eigenvalues, data.diagonal, band)
    if not classify(q).is_simple:
        rep.notes.append("not a simple graph: outside the conjecture's scope")
    return rep


@dataclass
class GershgorinReport:
    eigenvalues: list[float]
    degrees: list[int]
    intervals: list[tuple[int, int]]
    count_inside: list[int]
    some_inside: list[bool]       # what the circle theorem guarantees
    kth_inside: list[bool]        # lam_k <= 2 d_k
    theorem1_aligned: list[bool]  # lam_k <= d_k + d_{k-1}

    @property
    def gershgorin_ok(self) -> bool:
        return all(self.some_inside)

    @property
    def theorem1_ok(self) -> bool:
        return all(self.theorem1_aligned)

    def to_dict(self) -> dict:
        return {
            "lambda": self.eigenvalues,
            "d": self.degrees,
            "intervals": [list(iv) for iv in self.intervals],
            "count_inside": self.count_inside,
            "some_inside": self.some_inside,
            "kth_inside": self.kth_inside,
            "theorem1_aligned": self.theorem1_aligned,
        }


def gershgorin_from_data(eigenvalues: Sequence[float], degrees: Sequence[int], band: float = BAND) -> GershgorinReport:
    lam = sorted(float(x) for x in eigenvalues)
    d = sorted(int(x) for x in degrees)
    ivs = [(0, 2 * x) for x in d]
    counts = [sum(1 for x in lam if lo - band <= x <= hi + band) for lo, hi in ivs]
    return GershgorinReport(
        eigenvalues=lam,
        degrees=d,
        intervals=ivs,
        count_inside=counts,
        some_inside=[c > 0 for c in counts],
        kth_inside=[lam[i] <= ivs[i][1] + band for i in range(len(d))],
        theorem1_aligned=[lam[i] <= d[i] + _pad(d, i) + band for i in range(len(d))],
    )


def gershgorin_compare(q: Quiver, spectrum: Spectrum | None = None, band: float = BAND) -> GershgorinReport:
    data = SpectralData.of(q, spectrum)
    return gershgorin_from_data(data.eigenvalues, data.diagonal, band)


@dataclass
class DetBoundReport:
    n: int
    degrees: list[int]
    pseudo_det: int
    tree_bound: int
    forest_det: int
    forest_bound: int
    forest_bound_loose: int

    @property
    def trees_ok(self) -> bool:
        return self.pseudo_det <= self.tree_bound

    @property
    def forests_ok(self) -> bool:
        return self.forest_det <= self.forest_bound <= self.forest_bound_loose

    @property
    def ok(self) -> bool:
        return self.trees_ok and self.forests_ok

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.degrees,
            "pseudo_det": self.pseudo_det,
            "tree_bound": self.tree_bound,
            "forest_det": self.forest_det,
            "forest_bound": self.forest_bound,
            "forest_bound_loose": self.forest_bound_loose,
            "trees_ok": self.trees_ok,
            "forests_ok": self.forests_ok,
        }


def det_bounds(q: Quiver, cp: CharPoly | None = None) -> DetBoundReport:
    """Exact ``Det(K) <= 2^n prod d_k`` and ``det(1 + K) <= prod (1 + 2 d_k)``.

    Zero degrees are left out of the tree bound's product: an isolated vertex
    contributes only a zero eigenvalue, which the pseudo-determinant skips.
    For graphs without isolated vertices this is the plain product.
    """
    k = kirchhoff(q)
    d = q.degree_sequence()
    pd = pseudo_det(k, cp if cp is not None else char_poly(k))
    tree_bound = 2 ** q.n * math.prod(x for x in d if x > 0)
    return DetBoundReport(
        n=q.n,
        degrees=d,
        pseudo_det=pd,
        tree_bound=tree_bound,
        forest_det=det_shifted(k, 1),
        forest_bound=math.prod(1 + 2 * x for x in d),
        forest_bound_loose=2 ** q.n * math.prod(1 + x for x in d),
    )


def _as_fraction(x) -> Fraction:
    f = Fraction(x) if not isinstance(x, float) else Fraction(str(x))
    if f < 0:
        raise ValueError(f"potential values must be non-negative, got {x}")
    return f


def schroedinger_check(q: Quiver, V: Sequence | None = None, W: Mapping | None = None,
                       band: float = BAND) -> BoundReport:
    """Theorem-1 bound for ``L = K + V - W`` with non-negative rational V, W.

    ``V`` holds one scalar potential per vertex.  ``W`` maps vertex pairs
    ``(u, v)``, ``u != v``, to extra coupling that enters L exactly like
    additional parallel edges.  Rational inputs are scaled by the common
    denominator to an integer quiver, checked exactly there, and reported in
    the original units; the bounds use the sorted diagonal of L.
    """
    V = [_as_fraction(x) for x in (V if V is not None else [0] * q.n)]
    if len(V) != q.n:
        raise ValueError(f"V needs {q.n} entries, got {len(V)}")
    W = {tuple(sorted((int(a), int(b)))): _as_fraction(w) for (a, b), w in (W or {}).items()}
    for (a, b) in W:
        if a == b or not (1 <= a <= q.n and 1 <= b <= q.n):
            raise ValueError(f"W entry ({a}, {b}) is not a pair of distinct vertices")
    scale = math.lcm(1, *(x.denominator for x in V), *(w.denominator for w in W.values()))
    mults = {e: scale * k for e, k in q.edges.items()}
    for v, x in enumerate(V, start=1):
        if x:
            mults[(v, v)] = mults.get((v, v), 0) + int(x * scale)
    for e, w in W.items():
        if w:
            mults[e] = mults.get(e, 0) + int(w * scale)
    scaled = Quiver.from_multiplicities(q.n, mults)
    inner = check_theorem1(scaled, band=band * scale)
    rep = BoundReport(
        "schroedinger",
        q.n,
        [x / scale for x in inner.eigenvalues],
        [Fraction(x, scale) for x in inner.degrees],
        upper={k: [Fraction(x, scale) for x in v] for k, v in inner.upper.items()},
        subject=dict(inner.subject),
        equalities=list(inner.equalities),
        violations=[Violation(v.bound, v.k, v.slack / scale) for v in inner.violations],
        notes=inner.notes + [f"checked exactly on the integer quiver scaled by {scale}"],
    )
    return rep


@dataclass(frozen=True)
class SpectralRadiusChain:
    """``lam_n(K) == lam_max(F F^T) <= max column sum of |F F^T| <= d_n + d_{n-1}``."""

    lambda_max: float
    lambda_max_edge_form: float
    column_sum: int
    degree_bound: int

    @property
    def ok(self) -> bool:
        return (abs(self.lambda_max - self.lambda_max_edge_form) <= BAND
                and self.lambda_max <= self.column_sum + BAND
                and self.column_sum <= self.degree_bound)


def spectral_radius_chain(q: Quiver) -> SpectralRadiusChain:
    f = gradient(q)
    k1 = edge_form_matrix(f)
    lam = eigenvalues_sym(kirchhoff(q)).values
    lam1 = eigenvalues_sym(k1).values if k1.size else np.zeros(1)
    d = q.degree_sequence()
    return SpectralRadiusChain(
        lambda_max=float(lam[-1]),
        lambda_max_edge_form=float(lam1[-1]) if len(lam1) else 0.0,
        column_sum=max_abs_column_sum(k1),
        degree_bound=d[-1] + _pad(d, len(d) - 1),
    )


def edge_degree_bound(q: Quiver) -> int:
    """Diagnostic ``max over edges (x, y), x != y, of d(x) + d(y)``."""
    deg = q.degrees()
    vals = [deg[u - 1] + deg[v - 1] for (u, v), _ in q.edge_items if u != v]
    return max(vals) if vals else max(deg)


def combine(reports: Sequence[BoundReport], name: str = "combined") -> BoundReport:
    """Merge several reports about the same spectrum into one table."""
    first = reports[0]
    out = BoundReport(name, first.n, first.eigenvalues, first.degrees)
    for r in reports:
        out.upper.update(r.upper)
        out.lower.update(r.lower)
        out.subject.update(r.subject)
        out.equalities += r.equalities
        out.violations += r.violations
        out.exceptions += r.exceptions
        out.notes += r.notes
    return out
