"""Command-line interface: ``quiver-spectra <command> [options]``.

Exit codes: 0 success (conjecture counterexamples included, they are
flagged in the output), 1 input or budget error, 2 a proven inequality or
identity failed.  argparse also exits with 2 on malformed command lines.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__, bounds, census, counting, refine
from .bounds import BAND
from .families import BUILTIN_NAMES, builtin
from .fileformat import QuiverFormatError, read_quiver
from .quiver import Quiver, classify, kirchhoff
from .report import Panel, band_svg, to_csv, to_json
from .spectral import DEFAULT_TOL, EigensolverError, eigenvalues_sym

log = logging.getLogger("quiver_spectra")

SEED_ENV = "QUIVER_SPECTRA_SEED"
EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2

# The ten-vertex panels of the band-plot figure.
FIGURE_GRAPHS = ("star:10", "cycle:10", "path:10", "wheel:10", "complete:10", "bipartite:5,5",
                 "petersen", "grid:2,5", "random:10,0.5,{seed}")


class InputError(Exception):
    pass


@dataclass
class Outcome:
    payload: dict
    columns: Sequence[str] = ()
    rows: list = field(default_factory=list)
    panels: list = field(default_factory=list)
    violation: bool = False
    flagged: bool = False
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------- inputs

def _load_graphs(args) -> list[tuple[str, Quiver]]:
    out = []
    for name in args.builtin or []:
        try:
            out.append((name, builtin(name)))
        except (ValueError, TypeError) as exc:
            raise InputError(f"builtin {name!r}: {exc}") from None
    for path in args.input or []:
        try:
            out.append((path, read_quiver(path)))
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        except (QuiverFormatError, ValueError) as exc:
            raise InputError(str(exc)) from None
    return out


def _require_graphs(args, graphs):
    if not graphs:
        raise InputError(f"{args.command}: give at least one --builtin NAME or --input FILE")


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"{SEED_ENV}={env!r} is not an integer") from None


def run_config(args) -> dict:
    """Everything that determines the output, in a fixed key order."""
    cfg = {"command": args.command, "version": __version__}
    skip = {"command", "func", "format", "output", "verbose"}
    for key in sorted(vars(args)):
        if key not in skip:
            cfg[key] = getattr(args, key)
    return cfg


# ---------------------------------------------------------------- commands

def _spectrum_report(name: str, q: Quiver, tol: float, band: float) -> tuple[dict, list, Panel, bool]:
    spec = eigenvalues_sym(kirchhoff(q), tol=tol)
    data = bounds.SpectralData.of(q, spec)
    cls = classify(q)
    reports = [bounds.check_theorem1(q, data=data)]
    proven = {"theorem1", "twice_degree", "horn_johnson"}
    if not cls.has_multiple_connections:
        reports.append(bounds.check_theorem2(q, data=data, band=band))
        proven.add("theorem2")
    else:
        d, n = data.diagonal, data.n
        # shown for comparison only; the bound does not apply here
        reports.append(bounds.BoundReport("theorem2", n, data.eigenvalues, d,
                                          lower={"theorem2": [d[k - 1] - (n - k) for k in range(1, n + 1)]},
                                          notes=["theorem2 bound shown only: multiple connections present"]))
    bh = bounds.lower_bound_brouwer_haemers(q, data=data, band=band)
    if cls.is_simple:
        proven.add("brouwer_haemers")
    reports.append(bh)
    reports.append(bounds.lower_bound_horn_johnson(q, data=data, band=band))
    rep = bounds.combine(reports, name)
    hard = [v for v in rep.violations if v.bound in proven]
    soft = [v for v in rep.violations if v.bound not in proven]
    payload = {
        "graph": name,
        "quiver": census.quiver_payload(q),
        "simple": cls.is_simple,
        "multiple_connections": cls.has_multiple_connections,
        "residual_bound": spec.residual_bound,
        "table": rep.rows(),
        "equalities": [[b, k] for b, k in rep.equalities],
        "violations": [[v.bound, v.k, v.slack] for v in hard],
        "conjectural_failures": [[v.bound, v.k, v.slack] for v in soft],
        "exceptions": [[v.bound, v.k, v.slack] for v in rep.exceptions],
        "notes": rep.notes,
        "ok": not hard,
    }
    rows = [[name] + list(r.values()) for r in rep.rows()]
    upper = {"d_k + d_(k-1)": rep.upper["theorem1"], "2 d_k": rep.upper["twice_degree"]}
    lower = {"d_k - (n-k)": rep.lower["theorem2"], "d_k - (n-k) + 1": rep.lower["brouwer_haemers"],
             "lambda_k(-A)": rep.lower["horn_johnson"]}
    panel = Panel(name, data.eigenvalues, upper, lower)
    return payload, rows, panel, bool(hard)


def cmd_spectrum(args) -> Outcome:
    graphs = _load_graphs(args)
    if args.figure:
        seed = resolve_seed(args.seed)
        graphs += [(g.format(seed=seed), builtin(g.format(seed=seed))) for g in FIGURE_GRAPHS]
    _require_graphs(args, graphs)
    out = Outcome({"graphs": []})
    for name, q in graphs:
        payload, rows, panel, bad = _spectrum_report(name, q, args.tol, args.band)
        out.payload["graphs"].append(payload)
        if not out.columns:
            out.columns = ["graph"] + list(payload["table"][0].keys())
        out.rows.extend(rows)
        out.panels.append(panel)
        out.violation |= bad
    out.payload["ok"] = not out.violation
    return out


def cmd_census(args) -> Outcome:
    if not 1 <= args.n <= census.MAX_CENSUS_N - 1:
        raise InputError("census needs 1 <= n <= 6")
    res = census.equality_census(args.n, band=args.band, jobs=args.jobs)
    payload = res.to_dict()
    out = Outcome(payload, ["n", "total", "thm1_eq", "two_d_eq"],
                  [[payload["n"], payload["total"], payload["thm1_eq"], payload["two_d_eq"]]])
    if args.suite:
        corpus = census.connected_graphs_upto(args.n)
        corpus += census.random_corpus(args.random, args.n + 1, 3, 3, seed=resolve_seed(args.seed))
        suite = census.theorem_suite(corpus, band=args.band)
        payload["theorem_suite"] = suite.to_dict()
        payload["theorem_suite"]["corpus_size"] = len(corpus)
        out.violation = not suite.ok
    return out


def cmd_conjecture(args) -> Outcome:
    seed = resolve_seed(args.seed)
    which = args.which.upper()
    if which == "A":
        rep = census.conjecture_a_scan(args.n_max, random_graphs=args.random, random_n_max=args.random_n_max,
                                       p=args.p, seed=seed, complete_n_max=args.complete_n_max, band=args.band)
    elif which == "B":
        corpus = census.connected_graphs_upto(args.n_max, n_min=1)
        rep = census.conjecture_b_scan(args.A, args.B, corpus, band=args.band)
    elif which == "C":
        rep = census.conjecture_c_estimate(args.C, args.p, args.sizes, args.trials, seed, band=args.band)
    else:
        base = census.connected_graphs_upto(min(args.n_max, 5), n_min=1)
        corpus = base if args.max_loops == 0 else list(census.loop_decorations(base, args.max_loops))
        rep = census.conjecture_d_scan(corpus, band=args.band)
    payload = rep.to_dict()
    payload["counterexamples_found"] = rep.found
    rows = [[which, rule, rep.graphs_checked, count] for rule, count in rep.counterexample_graphs.items()]
    rows += [[which, f"fraction_n={size}", args.trials, frac] for size, frac in (rep.success_fraction or {}).items()]
    return Outcome(payload, ["conjecture", "rule", "graphs_checked", "counterexample_graphs_or_fraction"],
                   rows, flagged=rep.found)


def cmd_count(args) -> Outcome:
    graphs = _load_graphs(args)
    _require_graphs(args, graphs)
    out = Outcome({"graphs": []}, ["graph", "n", "m", "trees_rooted", "trees_unrooted", "forests_rooted",
                                   "ratio", "brute_trees", "brute_forests", "deletion_contraction", "agree"])
    for name, q in graphs:
        try:
            fc = counting.count_matrix(q)
        except ValueError as exc:
            raise InputError(f"{name}: {exc}") from None
        entry = {"graph": name, "n": q.n, "m": q.m, **fc.to_dict()}
        checks = {}
        try:
            checks["brute_trees"] = counting.count_brute_trees(q)
        except counting.BudgetExceeded:
            checks["brute_trees"] = None
        try:
            checks["brute_forests"] = counting.count_brute_forests(q)
        except counting.BudgetExceeded:
            checks["brute_forests"] = None
        checks["deletion_contraction"] = counting.count_deletion_contraction(q) if q.m <= 40 else None
        agree = (checks["brute_trees"] in (None, fc.trees_rooted)
                 and checks["brute_forests"] in (None, fc.forests_rooted)
                 and checks["deletion_contraction"] in (None, fc.trees_unrooted))
        entry.update(checks)
        entry["agree"] = agree
        out.payload["graphs"].append(entry)
        out.rows.append([name, q.n, q.m, fc.trees_rooted, fc.trees_unrooted, fc.forests_rooted,
                         entry["ratio"], checks["brute_trees"], checks["brute_forests"],
                         checks["deletion_contraction"], agree])
        out.violation |= not agree
    return out


def cmd_refine(args) -> Outcome:
    graphs = _load_graphs(args)
    _require_graphs(args, graphs)
    out = Outcome({"traces": []}, ["graph"] + list(refine.RefinementTrace.COLUMNS))
    for name, q in graphs:
        try:
            trace = refine.refinement_trace(q, args.steps, base=name)
        except ValueError as exc:
            raise InputError(f"{name}: {exc}") from None
        out.payload["traces"].append(trace.to_dict())
        if trace.truncated:
            out.notes.append(f"{name} truncated at {trace.truncation_reason}")
        out.rows.extend([name] + r for r in trace.rows())
    return out


def cmd_potential(args) -> Outcome:
    graphs = _load_graphs(args)
    _require_graphs(args, graphs)
    out = Outcome({"graphs": []}, ["graph", "z", "U", "diagonal", "pseudo", "bound_log2", "holds_log2",
                                   "slack", "holds_printed_constant"])
    for name, q in graphs:
        try:
            rows = refine.potential_curve(q, args.z)
        except ValueError as exc:
            raise InputError(f"{name}: {exc}") from None
        dicts = [r.to_dict() for r in rows]
        out.payload["graphs"].append({"graph": name, "rows": dicts})
        out.rows.extend([name] + list(d.values()) for d in dicts)
        out.violation |= not all(r.holds for r in rows)
    return out


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", metavar="FILE", help="quiver text file (repeatable)")
    common.add_argument("--builtin", action="append", metavar="NAME",
                        help="builtin graph (repeatable): " + ", ".join(BUILTIN_NAMES))
    common.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    common.add_argument("--output", "-o", metavar="FILE", help="write here instead of stdout")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigenpair residual tolerance")
    common.add_argument("--band", type=float, default=BAND, help="float band for candidate ties")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (fallback: ${SEED_ENV}, then 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for census sweeps")
    common.add_argument("--verbose", "-v", action="store_true")

    p = argparse.ArgumentParser(prog="quiver-spectra", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues against the degree bounds")
    s.add_argument("--figure", action="store_true", help="add the nine ten-vertex band-plot graphs")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("census", parents=[common], help="equality census over connected labeled graphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--suite", action="store_true", help="also run every proven bound on graphs up to n")
    s.add_argument("--random", type=int, default=200, help="random quivers added to the suite")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("conjecture", parents=[common], help="counterexample searches")
    s.add_argument("which", choices=("A", "B", "C", "D", "a", "b", "c", "d"))
    s.add_argument("--n-max", type=int, default=6, help="exhaustive corpus size (A, B, D)")
    s.add_argument("--random", type=int, default=0, help="extra random graphs (A)")
    s.add_argument("--random-n-max", type=int, default=12)
    s.add_argument("--complete-n-max", type=int, default=0)
    s.add_argument("--A", type=str, default="1/3", help="rational slope (B)")
    s.add_argument("--B", type=str, default="0", help="rational offset (B)")
    s.add_argument("--C", type=str, default="3/2", help="rational factor (C)")
    s.add_argument("--p", type=float, default=0.5, help="edge probability (A, C)")
    s.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 24], help="vertex counts (C)")
    s.add_argument("--trials", type=int, default=500, help="samples per size (C)")
    s.add_argument("--max-loops", type=int, default=1, help="loops per vertex in the corpus (D)")
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("count", parents=[common], help="spanning trees and forests, with oracles")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("refine", parents=[common], help="Barycentric refinement trace")
    s.add_argument("--steps", type=int, default=3)
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("potential", parents=[common], help="spectral potential against the degree bound")
    s.add_argument("--z", type=float, nargs="+", default=[-4.0, -2.0, -1.0, -0.5, 0.0])
    s.set_defaults(func=cmd_potential)
    return p


def render(out: Outcome, fmt: str, config: dict) -> str:
    if fmt == "csv":
        return to_csv(config, out.columns, out.rows, out.notes)
    if fmt == "svg":
        if not out.panels:
            raise InputError("--format svg is only available for the spectrum command")
        return band_svg(out.panels, header=config)
    return to_json(config, out.payload)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if hasattr(args, "seed"):
            args.seed = resolve_seed(args.seed)
        config = run_config(args)
        out = args.func(args)
        text = render(out, args.format, config)
    except InputError as exc:
        print(f"quiver-spectra: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (counting.BudgetExceeded, refine.CliqueBudgetExceeded, EigensolverError) as exc:
        print(f"quiver-spectra: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for note in out.notes:
        print(f"quiver-spectra: note: {note}", file=sys.stderr)
    if out.flagged:
        print("quiver-spectra: COUNTEREXAMPLES FOUND (see counterexample_graphs in the output)", file=sys.stderr)
    if out.violation:
        print("quiver-spectra: a proven bound or identity FAILED", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
