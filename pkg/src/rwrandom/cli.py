"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 capacity error, 3 I/O or parse error.
The default seed for randomized subcommands comes from ``RWRANDOM_SEED``
(0 if unset); ``--seed`` overrides it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import expansion, experiments, matrix_stats, width
from .errors import CapacityError
from .graph import (
    GnpConfig,
    GraphFormatError,
    cutrank,
    format_graph,
    make_rng,
    read_graph,
    sample_gnp,
    write_graph,
)
from .width import DecompositionError, RankDecomposition

SEED_ENV = "RWRANDOM_SEED"

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _vertex_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _emit(rows: list[dict], fmt: str, out=None, text_lines: list[str] | None = None) -> None:
    out = out or sys.stdout
    if fmt == "json-lines":
        for row in rows:
            out.write(json.dumps({k: _jsonable(v) for k, v in row.items()}) + "\n")
    elif fmt == "csv":
        if rows:
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for row in rows:
                w.writerow({k: " ".join(map(str, v)) if isinstance(v, (list, tuple)) else v
                            for k, v in row.items()})
            out.write(buf.getvalue())
    else:
        if text_lines is None:
            text_lines = [f"{k}: {v}" for row in rows for k, v in row.items()]
        for line in text_lines:
            out.write(line + "\n")


# -- subcommands ---------------------------------------------------------------------

def cmd_gnp(args):
    g = sample_gnp(GnpConfig(args.n, args.p, args.seed))
    if args.out:
        write_graph(g, args.out)
    else:
        sys.stdout.write(format_graph(g))
        return
    _emit([{"n": g.n, "m": g.m, "seed": args.seed, "path": args.out}], args.format)


def cmd_rw(args):
    g = read_graph(args.graph)
    w, dec = width.rank_width(g, want_tree=bool(args.tree), cap=args.cap)
    if args.tree and dec is not None:
        with open(args.tree, "w", encoding="utf-8") as fh:
            fh.write(dec.to_text())
    _emit([{"rank_width": w}], args.format, text_lines=[f"rank-width: {w}"])


def cmd_tw(args):
    g = read_graph(args.graph)
    t = width.tree_width(g, cap=args.cap)
    _emit([{"tree_width": t}], args.format, text_lines=[f"tree-width: {t}"])


def cmd_report(args):
    g = read_graph(args.graph)
    r = width.width_report(g, cap=args.cap)
    row = {"rank_width": r.rank_width, "tree_width": r.tree_width,
           "cw_lower": r.cw_lower, "cw_upper": r.cw_upper}
    _emit([row], args.format)


def cmd_cutrank(args):
    g = read_graph(args.graph)
    r = cutrank(g, args.v1, args.v2)
    _emit([{"cutrank": r}], args.format, text_lines=[f"cutrank: {r}"])


def cmd_cheeger(args):
    g = read_graph(args.graph)
    rep = expansion.cheeger_exact(g)
    row = {"phi": rep.phi, "witness": list(rep.witness), "cut_edges": rep.cut_edges,
           "d_S": rep.d_S, "d_comp": rep.d_comp}
    if args.alternative:
        row["phi_alternative"] = expansion.cheeger_alternative(g)
    lines = [f"phi: {rep.phi}", "witness: " + " ".join(map(str, rep.witness)),
             f"cut_edges: {rep.cut_edges}", f"d_S: {rep.d_S}", f"d_comp: {rep.d_comp}"]
    if args.alternative:
        lines.append(f"phi_alternative: {row['phi_alternative']}")
    _emit([row], args.format, text_lines=lines)


def cmd_separate(args):
    g = read_graph(args.graph)
    if args.decomposition:
        with open(args.decomposition, encoding="utf-8") as fh:
            dec = RankDecomposition.from_text(fh.read())
    else:
        _, dec = width.rank_width(g, want_tree=True, cap=args.cap)
        if dec is None:
            raise UsageError("separate needs a graph with at least two vertices")
    v1, v2, rho = width.balanced_separation(g, dec)
    d_width = width.width_of_decomposition(g, dec)
    row = {"v1": v1, "v2": v2, "rho": rho, "decomposition_width": d_width}
    lines = ["v1: " + " ".join(map(str, v1)), "v2: " + " ".join(map(str, v2)),
             f"rho: {rho}", f"decomposition_width: {d_width}"]
    _emit([row], args.format, text_lines=lines)


def cmd_certify(args):
    g = read_graph(args.graph)
    core = expansion.core_candidate(g) if args.core == "auto" else _vertex_list(args.core)
    if len(core) < 2:
        raise UsageError("core needs at least two vertices")
    if args.cap == "auto":
        cert = expansion.best_certificate(g, core)
    else:
        try:
            M = int(args.cap)
        except ValueError:
            raise UsageError(f"--cap must be an integer or 'auto', got {args.cap!r}") from None
        cert = expansion.certified_rw_lower_bound(g, core, M)
    row = {"core": list(cert.core), "alpha": cert.alpha, "delta": cert.delta,
           "degree_cap": cert.degree_cap, "filtered_edge_count": cert.filtered_edge_count,
           "bound": cert.bound}
    _emit([row], args.format, text_lines=cert.to_text().rstrip("\n").split("\n"))


def cmd_matrix_stats(args):
    if args.mode == "prop1":
        rng = make_rng(args.seed)
        rows = []
        for _ in range(args.samples):
            k = int(rng.integers(0, args.n + 1)) if args.k is None else args.k
            basis = matrix_stats.random_subspace(args.n, k, rng)
            model = matrix_stats.BiasedVectorModel(args.n, args.p)
            prob, bound, holds = matrix_stats.check_membership_bound(model, basis)
            rows.append({"n": args.n, "k": k, "p": args.p, "probability": prob,
                         "bound": bound, "holds": holds})
        fmt = args.format if args.format != "text" else "csv"
        _emit(rows, fmt)
        return
    if args.mode == "tail":
        cfg = matrix_stats.DefectTailConfig(args.n, args.p, args.C, args.samples, args.seed)
        records = [matrix_stats.defect_tail_experiment(cfg)]
    else:
        n_list = [int(x) for x in args.n_list.split(",")]
        records = matrix_stats.dense_defect_sweep(n_list, args.p, args.C, args.samples, args.seed)
    if args.out:
        matrix_stats.write_tail_csv(records, args.out)
    rows = [dict(zip(matrix_stats.CSV_COLUMNS, [getattr(r, c) for c in matrix_stats.CSV_COLUMNS]))
            for r in records]
    _emit(rows, args.format if args.format != "text" else "csv")


def cmd_experiment(args):
    cfg = experiments.RegimeConfig(
        regime=args.regime, n=args.n, p=args.p, c=args.c, samples=args.samples,
        seed=args.seed, exact_width_cap=args.cap, workers=args.workers, timing=args.timing)
    runner = {
        "dense": experiments.run_dense,
        "neardense": experiments.run_dense,
        "supercritical": experiments.run_supercritical,
        "critical": experiments.run_critical,
        "subcritical": experiments.run_subcritical,
    }[cfg.regime]
    records = runner(cfg)
    if args.out:
        experiments.write_records(records, args.out)
    if args.format == "json-lines":
        _emit([r.__dict__ for r in records], "json-lines")
    elif args.format == "csv" or not args.out:
        sys.stdout.write(experiments.format_records(records))
    else:
        med, mx = experiments.gap_summary(records)
        simple = sum(r.all_simple for r in records)
        lines = [f"samples: {len(records)}", f"gap_median: {med}", f"gap_max: {mx}",
                 f"all_simple: {simple}/{len(records)}", f"written: {args.out}"]
        _emit([], "text", text_lines=lines)


def cmd_tail_threshold(args):
    M = expansion.degree_tail_threshold(args.c, args.eps)
    tail = expansion.degree_tail_sum(args.c, M)
    _emit([{"M": M, "tail_sum": tail, "half_eps": args.eps / 2}], args.format,
          text_lines=[f"M = {M}"])


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rwrandom", description="Exact width parameters and random-graph experiments.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text, seeded=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("text", "csv", "json-lines"), default="text")
        if seeded:
            p.add_argument("--seed", type=int, default=None,
                           help=f"64-bit seed (default: ${SEED_ENV} or 0)")
        p.set_defaults(func=func, seeded=seeded)
        return p

    p = add("gnp", cmd_gnp, "sample G(n, p) to an edge-list file", seeded=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--out", "-o")

    for name, func, text in (("rw", cmd_rw, "exact rank-width"), ("tw", cmd_tw, "exact treewidth"),
                             ("report", cmd_report, "rank-width, treewidth and clique-width bounds")):
        p = add(name, func, text)
        p.add_argument("graph")
        p.add_argument("--cap", type=int, default=width.DEFAULT_CAP)
        if name == "rw":
            p.add_argument("--tree", help="write the optimal rank-decomposition here")

    p = add("cutrank", cmd_cutrank, "cutrank of two disjoint vertex sets")
    p.add_argument("graph")
    p.add_argument("--v1", type=_vertex_list, required=True)
    p.add_argument("--v2", type=_vertex_list, required=True)

    p = add("cheeger", cmd_cheeger, "exact edgewise Cheeger constant")
    p.add_argument("graph")
    p.add_argument("--alternative", action="store_true", help="also evaluate the random-walk form")

    p = add("separate", cmd_separate, "balanced separation from a rank-decomposition")
    p.add_argument("graph")
    p.add_argument("--decomposition", help="decomposition file (default: an optimal one)")
    p.add_argument("--cap", type=int, default=width.DEFAULT_CAP)

    p = add("certify", cmd_certify, "certified rank-width lower bound from an expanding core")
    p.add_argument("graph")
    p.add_argument("--core", required=True, help="comma-separated vertices, or 'auto'")
    p.add_argument("--cap", required=True, help="degree cap M, or 'auto'")

    p = add("matrix-stats", cmd_matrix_stats, "random GF(2) vector/matrix statistics", seeded=True)
    p.add_argument("--mode", choices=("prop1", "tail", "sweep"), required=True)
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--k", type=int, default=None, help="subspace dimension (prop1; default random)")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--C", type=float, default=matrix_stats.DENSE_SWEEP_C)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--n-list", default="12,15,18", help="comma-separated n values (sweep)")
    p.add_argument("--out", "-o")

    p = add("experiment", cmd_experiment, "Monte Carlo regime run to CSV", seeded=True)
    p.add_argument("--regime", choices=experiments.REGIMES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=width.DEFAULT_CAP)
    p.add_argument("--timing", action="store_true", help="record wall-clock runtime_ms")
    p.add_argument("--out", "-o")

    p = add("tail-threshold", cmd_tail_threshold, "smallest degree cap M for (c, eps)")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.seeded and args.seed is None:
            args.seed = _default_seed()
        config = {k: v for k, v in vars(args).items() if k not in ("func", "seeded")}
        print("config: " + json.dumps(config, sort_keys=True), file=sys.stderr)
        args.func(args)
        return EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (OSError, GraphFormatError, DecompositionError) as exc:
        print(f"input/output error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
