"""Exhaustive labeled-graph census, random corpora and conjecture harnesses.

Graphs on n vertices are indexed by a bitmask over the n(n-1)/2 vertex
pairs in lexicographic order; enumeration runs in ascending mask order.
Spectra are computed in batches with one LAPACK call per vertex count.
All randomness goes through ``numpy.random.default_rng`` (PCG64) with an
explicit seed.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import bounds
from .bounds import BAND, SpectralData
from .families import complete, erdos_renyi
from .quiver import Quiver, classify, kirchhoff
from .spectral import Spectrum, below_exactly, char_poly, exceeds_exactly

log = logging.getLogger(__name__)

__all__ = [
    "MAX_CENSUS_N",
    "connected_masks",
    "mask_to_quiver",
    "enumerate_connected_labeled",
    "connected_graphs_upto",
    "batch_spectra",
    "CensusResult",
    "equality_census",
    "SuiteResult",
    "theorem_suite",
    "random_quiver",
    "random_corpus",
    "loop_decorations",
    "ConjectureReport",
    "conjecture_a_scan",
    "conjecture_b_scan",
    "conjecture_c_estimate",
    "conjecture_d_scan",
    "quiver_payload",
]

MAX_CENSUS_N = 7


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def connected_masks(n: int, lo: int = 0, hi: int | None = None) -> list[int]:
    """Edge masks in ``[lo, hi)`` whose graph on n vertices is connected."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_CENSUS_N:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_CENSUS_N}")
    pairs = _pairs(n)
    hi = (1 << len(pairs)) if hi is None else hi
    out = []
    for mask in range(lo, hi):
        parent = list(range(n + 1))
        comps = n
        bit = 0
        m = mask
        while m:
            if m & 1:
                a, b = pairs[bit]
                while parent[a] != a:
                    a = parent[a]
                while parent[b] != b:
                    b = parent[b]
                if a != b:
                    parent[a] = b
                    comps -= 1
            m >>= 1
            bit += 1
        if comps == 1:
            out.append(mask)
    return out


def mask_to_quiver(n: int, mask: int) -> Quiver:
    pairs = _pairs(n)
    return Quiver(n, tuple((pairs[i], 1) for i in range(len(pairs)) if mask >> i & 1))


def enumerate_connected_labeled(n: int) -> Iterator[Quiver]:
    """Every connected labeled simple graph on n vertices, once, by ascending mask."""
    for mask in connected_masks(n):
        yield mask_to_quiver(n, mask)


def connected_graphs_upto(n_max: int, n_min: int = 1) -> list[Quiver]:
    return [q for n in range(n_min, n_max + 1) for q in enumerate_connected_labeled(n)]


def _mask_kirchhoffs(n: int, masks: Sequence[int]) -> np.ndarray:
    pairs = _pairs(n)
    bits = np.array([[mask >> i & 1 for i in range(len(pairs))] for mask in masks], dtype=np.int64)
    basis = np.zeros((len(pairs), n, n), dtype=np.int64)
    for i, (a, b) in enumerate(pairs):
        basis[i, a - 1, a - 1] = basis[i, b - 1, b - 1] = 1
        basis[i, a - 1, b - 1] = basis[i, b - 1, a - 1] = -1
    if not len(masks):
        return np.zeros((0, n, n), dtype=np.int64)
    return np.einsum("gp,pij->gij", bits, basis)


def _batch(mats: np.ndarray) -> list[Spectrum]:
    if mats.shape[0] == 0:
        return []
    a = mats.astype(float)
    w, v = np.linalg.eigh(a)
    r = np.linalg.norm(a @ v - v * w[:, None, :], axis=1).max(axis=1)
    scale = np.maximum(1.0, np.abs(w).max(axis=1))
    res = r / scale
    return [Spectrum(w[i], float(res[i])) for i in range(len(w))]


def batch_spectra(quivers: Sequence[Quiver]) -> list[Spectrum]:
    """Spectra of many Kirchhoff matrices, one batched solve per vertex count."""
    out: list[Spectrum | None] = [None] * len(quivers)
    by_n: dict[int, list[int]] = {}
    for i, q in enumerate(quivers):
        by_n.setdefault(q.n, []).append(i)
    for n, idx in by_n.items():
        mats = np.stack([kirchhoff(quivers[i]) for i in idx])
        for i, s in zip(idx, _batch(mats)):
            out[i] = s
    return out


def quiver_payload(q: Quiver) -> dict:
    """JSON-ready description that rebuilds the quiver exactly."""
    return {"n": q.n, "edges": [[u, v, k] for (u, v), k in q.edge_items]}


@dataclass
class CensusResult:
    n: int
    total_connected: int = 0
    theorem1_equality_graphs: int = 0
    two_dk_equality_graphs: int = 0
    theorem1_index_histogram: Counter = field(default_factory=Counter)
    equality_index_histogram: Counter = field(default_factory=Counter)  # for lam_k = 2 d_k
    near_misses: list[dict] = field(default_factory=list)
    band: float = BAND

    def merge(self, other: "CensusResult") -> "CensusResult":
        self.total_connected += other.total_connected
        self.theorem1_equality_graphs += other.theorem1_equality_graphs
        self.two_dk_equality_graphs += other.two_dk_equality_graphs
        self.theorem1_index_histogram.update(other.theorem1_index_histogram)
        self.equality_index_histogram.update(other.equality_index_histogram)
        self.near_misses.extend(other.near_misses)
        return self

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total_connected,
            "thm1_eq": self.theorem1_equality_graphs,
            "two_d_eq": self.two_dk_equality_graphs,
            "thm1_eq_histogram": {str(k): v for k, v in sorted(self.theorem1_index_histogram.items())},
            "two_d_eq_histogram": {str(k): v for k, v in sorted(self.equality_index_histogram.items())},
            "near_misses": self.near_misses,
            "band": self.band,
        }


def _census_chunk(n: int, lo: int, hi: int, band: float) -> CensusResult:
    masks = connected_masks(n, lo, hi)
    mats = _mask_kirchhoffs(n, masks)
    res = CensusResult(n, band=band)
    res.total_connected = len(masks)
    if not masks:
        return res
    w = np.linalg.eigvalsh(mats.astype(float))
    d = np.sort(np.diagonal(mats, axis1=1, axis2=2), axis=1)
    dprev = np.concatenate([np.zeros((len(masks), 1), dtype=np.int64), d[:, :-1]], axis=1)
    thm1 = d + dprev
    two = 2 * d
    cand = (np.abs(w - thm1) <= band) | (np.abs(w - two) <= band)
    for g in np.flatnonzero(cand.any(axis=1)):
        cp = char_poly(mats[g])
        eq1, eq2 = [], []
        for i in range(n):
            for bound, hits in ((int(thm1[g, i]), eq1), (int(two[g, i]), eq2)):
                if abs(w[g, i] - bound) <= band:
                    if cp(bound) == 0:
                        hits.append(i + 1)
                    else:
                        res.near_misses.append({"mask": masks[g], "k": i + 1, "bound": bound,
                                                "lambda": float(w[g, i])})
        if eq1:
            res.theorem1_equality_graphs += 1
            res.theorem1_index_histogram.update(eq1)
        if eq2:
            res.two_dk_equality_graphs += 1
            res.equality_index_histogram.update(eq2)
    return res


def equality_census(n: int, band: float = BAND, jobs: int = 1) -> CensusResult:
    """Count connected labeled graphs with some ``lam_k = d_k + d_{k-1}`` or ``lam_k = 2 d_k``.

    Float eigenvalues within ``band`` of a bound are only candidates; a tie
    counts when the characteristic polynomial vanishes at the integer bound.
    """
    if n > 6:
        raise ValueError("equality census is limited to n <= 6")
    total = 1 << (n * (n - 1) // 2)
    if jobs <= 1 or total < 4096:
        return _census_chunk(n, 0, total, band)
    step = -(-total // (jobs * 4))
    ranges = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    res = CensusResult(n, band=band)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_census_chunk, [n] * len(ranges), *zip(*ranges), [band] * len(ranges)):
            res.merge(part)
    return res


@dataclass
class SuiteResult:
    checked: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not sum(self.violations.values())

    def to_dict(self) -> dict:
        return {"checked": dict(self.checked), "violations": dict(self.violations),
                "failures": self.failures, "ok": self.ok}


def theorem_suite(quivers: Sequence[Quiver], band: float = BAND) -> SuiteResult:
    """Run the proven inequalities over a corpus and tally violations.

    Covers the upper bound and its 2d corollary, the lower bound on quivers
    without multiple connections, Schur-Horn (plain and sharpened) and both
    determinant bounds.
    """
    out = SuiteResult()
    for q, spec in zip(quivers, batch_spectra(quivers)):
        data = SpectralData.of(q, spec)
        reports = [bounds.check_theorem1(q, data=data), bounds.schur_horn(q, sharpened=True, data=data)]
        if not classify(q).has_multiple_connections:
            reports.append(bounds.check_theorem2(q, data=data))
        for rep in reports:
            for name in list(rep.upper) + list(rep.lower):
                vals = rep.upper.get(name) or rep.lower.get(name)
                if any(v is not None for v in vals):
                    out.checked[name] += 1
            for v in rep.violations:
                out.violations[v.bound] += 1
                out.failures.append({"quiver": quiver_payload(q), "bound": v.bound, "k": v.k, "slack": v.slack})
        det = bounds.det_bounds(q, cp=data.cp)
        out.checked["det_trees"] += 1
        out.checked["det_forests"] += 1
        if not det.trees_ok:
            out.violations["det_trees"] += 1
            out.failures.append({"quiver": quiver_payload(q), "bound": "det_trees"})
        if not det.forests_ok:
            out.violations["det_forests"] += 1
            out.failures.append({"quiver": quiver_payload(q), "bound": "det_forests"})
    return out


def random_quiver(n: int, max_mult: int, max_loops: int, seed: int) -> Quiver:
    """Independent uniform multiplicities in ``[0, max_mult]`` per pair and loops in ``[0, max_loops]``."""
    if n < 1 or max_mult < 0 or max_loops < 0:
        raise ValueError("n must be positive and bounds non-negative")
    rng = np.random.default_rng(seed)
    pairs = _pairs(n)
    mult = rng.integers(0, max_mult + 1, size=len(pairs))
    loops = rng.integers(0, max_loops + 1, size=n)
    mults = {e: int(k) for e, k in zip(pairs, mult) if k}
    mults.update({(v, v): int(k) for v, k in enumerate(loops, start=1) if k})
    return Quiver.from_multiplicities(n, mults)


def random_corpus(count: int, n_max: int, max_mult: int, max_loops: int, seed: int,
                  n_min: int = 1) -> list[Quiver]:
    """``count`` random quivers with vertex counts drawn uniformly from ``[n_min, n_max]``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        out.append(random_quiver(n, max_mult, max_loops, int(rng.integers(0, 2**63 - 1))))
    return out


def loop_decorations(graphs: Iterable[Quiver], max_loops: int = 1) -> Iterator[Quiver]:
    """Every way of adding ``0..max_loops`` loops at each vertex."""
    for g in graphs:
        for pattern in product(range(max_loops + 1), repeat=g.n):
            mults = g.edges
            for v, k in enumerate(pattern, start=1):
                if k:
                    mults[(v, v)] = mults.get((v, v), 0) + k
            yield Quiver.from_multiplicities(g.n, mults)


@dataclass
class ConjectureReport:
    conjecture: str
    parameters: dict
    graphs_checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    counterexample_graphs: dict[str, int] = field(default_factory=dict)
    success_fraction: dict | None = None

    @property
    def found(self) -> bool:
        return any(self.counterexample_graphs.values()) or bool(self.counterexamples)

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "parameters": self.parameters,
            "graphs_checked": self.graphs_checked,
            "counterexample_graphs": self.counterexample_graphs,
            "counterexamples": self.counterexamples,
            "success_fraction": self.success_fraction,
        }


def _counterexample(q: Quiver, spec: Spectrum, k: int, slack: float, rule: str) -> dict:
    return {"rule": rule, "quiver": quiver_payload(q), "spectrum": spec.tolist(), "k": k, "slack": slack}


def conjecture_a_scan(n_max: int = 6, random_graphs: int = 0, random_n_max: int = 12, p: float = 0.5,
                      seed: int = 0, complete_n_max: int = 0, band: float = BAND,
                      max_examples: int = 25) -> ConjectureReport:
    """Search for ``sum_{j<=k} (d_j - lam_j) > d_k`` among simple graphs.

    Exhaustive over connected labeled graphs up to ``n_max`` (at most 6),
    then the complete graphs up to ``complete_n_max`` and ``random_graphs``
    seeded G(n, p) samples with n in ``[2, random_n_max]``.  Every failing
    graph is counted; payloads are kept for the first ``max_examples``.
    """
    if n_max > 6:
        raise ValueError("exhaustive part is limited to n_max <= 6; use random_graphs beyond that")
    corpus = connected_graphs_upto(n_max, n_min=2) if n_max >= 2 else []
    corpus += [complete(n) for n in range(2, complete_n_max + 1)]
    if random_graphs:
        rng = np.random.default_rng(seed)
        for _ in range(random_graphs):
            corpus.append(erdos_renyi(int(rng.integers(2, random_n_max + 1)), p, rng))
    rep = ConjectureReport("A", {"n_max": n_max, "random_graphs": random_graphs, "random_n_max": random_n_max,
                                 "p": p, "seed": seed, "complete_n_max": complete_n_max, "band": band})
    hits = 0
    for q, spec in zip(corpus, batch_spectra(corpus)):
        r = bounds.schur_horn_error_from_data(spec.values, q.degree_sequence(), band)
        rep.graphs_checked += 1
        if r.violations:
            hits += 1
            if len(rep.counterexamples) < max_examples:
                v = r.violations[0]
                rep.counterexamples.append(_counterexample(q, spec, v.k, v.slack, "schur_horn_error"))
    rep.counterexample_graphs["schur_horn_error"] = hits
    return rep


def _lower_rules(A: Fraction, B: Fraction) -> dict:
    def pad(d, k):
        return d[k - 1] if k >= 1 else 0

    return {
        "affine": lambda d, k: A * d[k - 1] - B,
        "half_prev": lambda d, k: Fraction(pad(d, k - 1), 2),
        "half_prev2": lambda d, k: Fraction(pad(d, k - 2), 2),
        "third_prev2": lambda d, k: Fraction(pad(d, k - 2), 3),
    }


def conjecture_b_scan(A, B, corpus: Sequence[Quiver], band: float = BAND,
                      max_examples: int = 25) -> ConjectureReport:
    """Counterexample search for ``A d_k - B <= lam_k`` and the three rules of thumb.

    ``counterexample_graphs`` counts graphs failing each rule somewhere;
    violations are confirmed by an exact root count below the rational bound.
    At most ``max_examples`` payloads are kept per rule.
    """
    A, B = Fraction(A), Fraction(B)
    rules = _lower_rules(A, B)
    rep = ConjectureReport("B", {"A": str(A), "B": str(B), "band": band, "corpus_size": len(corpus)})
    counts = Counter()
    for q, spec in zip(corpus, batch_spectra(corpus)):
        rep.graphs_checked += 1
        d = q.degree_sequence()
        cp = None
        for rule, fn in rules.items():
            for k in range(1, q.n + 1):
                b = fn(d, k)
                if spec.values[k - 1] >= float(b) + band:
                    continue
                cp = cp or char_poly(kirchhoff(q))
                if below_exactly(cp, k, b):
                    counts[rule] += 1
                    if sum(1 for c in rep.counterexamples if c["rule"] == rule) < max_examples:
                        rep.counterexamples.append(
                            _counterexample(q, spec, k, float(b) - float(spec.values[k - 1]), rule))
                    break
    rep.counterexample_graphs = {rule: counts.get(rule, 0) for rule in rules}
    return rep


def conjecture_c_estimate(C, p: float, n: int | Sequence[int], trials: int, seed: int,
                          band: float = BAND) -> ConjectureReport:
    """Fraction of G(n, p) samples with ``lam_k <= C d_k`` for every k.

    One generator seeded with ``seed`` drives all samples, sizes in the
    given order.  A float exceedance beyond ``band`` is decisive (the
    residual certificate is far smaller); ties inside the band are settled on
    the exact characteristic polynomial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    sizes = [n] if isinstance(n, int) else list(n)
    C = Fraction(str(C)) if isinstance(C, float) else Fraction(C)
    rng = np.random.default_rng(seed)
    rep = ConjectureReport("C", {"C": str(C), "p": p, "n": sizes, "trials": trials, "seed": seed,
                                 "band": band, "generator": "numpy PCG64"})
    fractions = {}
    for size in sizes:
        graphs = [erdos_renyi(size, p, rng) for _ in range(trials)]
        good = 0
        for q, spec in zip(graphs, batch_spectra(graphs)):
            rep.graphs_checked += 1
            d = q.degree_sequence()
            ok = True
            cp = None
            for k in range(1, size + 1):
                b = C * d[k - 1]
                diff = spec.values[k - 1] - float(b)
                if diff > band:
                    ok = False
                    break
                if diff >= -band:
                    cp = cp or char_poly(kirchhoff(q))
                    if exceeds_exactly(cp, k, b):
                        ok = False
                        break
            good += ok
        fractions[str(size)] = good / trials
    rep.success_fraction = fractions
    return rep


def conjecture_d_scan(corpus: Sequence[Quiver], band: float = BAND, max_examples: int = 25) -> ConjectureReport:
    """Search for ``lam_k < d_k - (n - k) + 1`` with k >= 2 on quivers without multiple connections."""
    for q in corpus:
        cls = classify(q)
        if cls.has_multiple_connections:
            raise ValueError(f"corpus contains a multiple connection {cls.multiple_connections[0]} in {q}")
    rep = ConjectureReport("D", {"band": band, "corpus_size": len(corpus)})
    hits = 0
    for q, spec in zip(corpus, batch_spectra(corpus)):
        rep.graphs_checked += 1
        r = bounds.lower_bound_brouwer_haemers(q, data=SpectralData.of(q, spec), band=band)
        if r.violations:
            hits += 1
            if len(rep.counterexamples) < max_examples:
                v = r.violations[0]
                rep.counterexamples.append(_counterexample(q, spec, v.k, v.slack, "brouwer_haemers"))
    rep.counterexample_graphs["brouwer_haemers"] = hits
    return rep
