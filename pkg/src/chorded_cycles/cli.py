"""Command line entry point.

Exit codes: 0 success/PASS, 1 property FAIL, 2 usage or precondition error,
3 inconclusive (a time or size limit was hit).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import random
import sys
from pathlib import Path

from . import bounds as bnd
from .construction import (
    DegenerateLengthError,
    FullConstruction,
    LengthRangeError,
    PreconditionError,
    construct,
    min_vertices,
)
from .graph import load_graph, validate_witness
from .oracle import SearchConfig, brute_force_c, verify_property

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger("chorded_cycles")


class UsageError(Exception):
    pass


def _env_int(name: str, default):
    raw = os.environ.get(name)
    return default if raw in (None, "") else int(raw)


def _env_float(name: str, default):
    raw = os.environ.get(name)
    return default if raw in (None, "") else float(raw)


def parse_int_list(text: str) -> list[int]:
    """'16', '6..10', '3,5,10-12' -> sorted unique integers."""
    out = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        sep = ".." if ".." in part else ("-" if "-" in part[1:] else None)
        if sep:
            lo, hi = part.split(sep, 1)
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    if not out:
        raise UsageError(f"empty list: {text!r}")
    return sorted(out)


def select_lengths(args, lo: int, hi: int) -> list[int]:
    """Lengths from --lengths / --sample; 'all' is refused above --max-all-n."""
    if getattr(args, "sample", None):
        pool = range(lo, hi + 1)
        count = min(args.sample, len(pool))
        return sorted(random.Random(args.seed).sample(pool, count))
    choice = args.lengths or "all"
    if choice == "all":
        if hi > args.max_all_n:
            raise UsageError(
                f"refusing to check all lengths for n={hi} > --max-all-n={args.max_all_n}; "
                "use --sample or an explicit --lengths list"
            )
        return list(range(lo, hi + 1))
    return parse_int_list(choice)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _human_construction(full: FullConstruction, lengths: list[int]) -> str:
    p = full.plan
    lines = [
        f"n={p.n} k={p.k} b={p.b} m={p.m} alpha={p.alpha}",
        f"q = {list(p.q)}",
        f"chords: {full.chord_count} ({len(p.chords)} main + {len(full.tail_chords)} tail), "
        f"budget k*b + k^2 = {p.k * p.b + p.k * p.k}",
    ]
    for e, level in enumerate(p.block_chords):
        lines.append(f"  G{e}: {[list(c) for c in level]}")
    lines.append(f"  closing chord: [1, {p.m}]")
    lines.append(f"  tail: {[list(c) for c in full.tail_chords]}")
    for l in lengths:
        w = full.witness(l)
        lines.append(f"l={l}: {w.provenance}; chords {[list(c) for c in w.chord_edges]}")
    return "\n".join(lines) + "\n"


def cmd_construct(args) -> int:
    full = construct(args.n, args.k)
    if args.format == "json":
        _emit(args, full.to_json() + "\n")
    elif args.format == "dot":
        _emit(args, full.to_dot())
    else:
        lengths = select_lengths(args, full.plan.first_length, full.n) if (args.lengths or args.sample) else []
        _emit(args, _human_construction(full, lengths))
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.l < 3 and args.l >= args.k:
        raise DegenerateLengthError(f"l={args.l} excluded by simple-graph convention")
    full = construct(args.n, args.k)
    if not full.plan.first_length <= args.l <= full.n:
        raise LengthRangeError(f"l={args.l} outside {full.plan.first_length}..{full.n}")
    w = full.witness(args.l)
    rep = validate_witness(full.graph, w.vertices, args.k)
    if args.format == "human":
        text = (f"l={w.length} via {w.provenance}\n"
                f"vertices: {list(w.vertices)}\n"
                f"chords: {[list(c) for c in w.chord_edges]}\n"
                f"check: {rep}\n")
    else:
        text = w.to_json() + "\n"
    _emit(args, text)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    g = load_graph(Path(args.graph).read_text())
    k = args.k
    lengths = select_lengths(args, max(k, 3), g.n)
    witnesses = None
    if not args.oracle_only and g.n >= min_vertices(k):
        full = construct(g.n, k)

        def witnesses(l):
            return full.witness(l) if full.plan.first_length <= l <= full.n else None

    default_range = not (args.lengths not in (None, "all") or args.sample)
    report = verify_property(g, k, None if default_range else lengths, witnesses, args.time_limit)
    if args.format == "json":
        _emit(args, report.to_json() + "\n")
    else:
        out = [f"n={report.n} k={report.k} chords={report.chord_count}"]
        for l in report.excluded:
            out.append(f"l={l}: EXCLUDED (simple-graph convention)")
        for l, s in report.statuses.items():
            note = report.notes.get(l)
            out.append(f"l={l}: {s}" + (f" [{note}]" if note else ""))
        out.append("PASS" if report.satisfied else ("INCONCLUSIVE" if report.inconclusive else "FAIL"))
        _emit(args, "\n".join(out) + "\n")
    if report.satisfied:
        return EXIT_OK
    return EXIT_INCONCLUSIVE if report.inconclusive else EXIT_FAIL


def cmd_search(args) -> int:
    cfg = SearchConfig(args.max_chords, args.time_limit, not args.no_symmetry, args.workers)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "c_exact_or_bound", "status", "seconds"])
    code = EXIT_OK
    for n in parse_int_list(args.n):
        hint = construct(n, args.k).chords if n >= min_vertices(args.k) else None
        res = brute_force_c(n, args.k, cfg, hint=hint)
        w.writerow(res.csv_row())
        if not res.exact:
            code = EXIT_INCONCLUSIVE
    _emit(args, buf.getvalue())
    return code


def cmd_bounds(args) -> int:
    instances = []
    for n in parse_int_list(args.n):
        exact = None
        if args.exact and n <= args.exact_max_n:
            res = brute_force_c(n, args.k, SearchConfig(time_limit=args.time_limit))
            exact = res.value if res.exact else None
        instances.append((n, args.k, exact))
    rows = bnd.bounds_table(instances)
    _emit(args, bnd.table_json(rows) + "\n" if args.format == "json" else bnd.table_csv(rows))
    return EXIT_FAIL if any(r.flags for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chorded-cycles",
        description="Chord sets on C_n with a cycle of every length through exactly k chords.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def lengths_opts(sp):
        sp.add_argument("--lengths", help="'all' or a list such as 3,5,10-12")
        sp.add_argument("--sample", type=int, help="check this many seeded-random lengths")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-all-n", type=int, default=_env_int("CHORDED_MAX_ALL_N", 5000))

    sp = sub.add_parser("construct", help="build the chord set for (n, k)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--format", choices=["json", "dot", "human"], default="json")
    sp.add_argument("-o", "--output")
    lengths_opts(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("decode", help="witness cycle for one length")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-l", type=int, required=True)
    sp.add_argument("--format", choices=["json", "human"], default="json")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("verify", help="check a graph file for the k-chord cycle property")
    sp.add_argument("graph", help="graph JSON, construction JSON, or edge list with an 'n=' header")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--oracle-only", action="store_true", help="ignore constructed witnesses")
    sp.add_argument("--time-limit", type=float, default=_env_float("CHORDED_TIME_LIMIT", None))
    sp.add_argument("--format", choices=["json", "human"], default="human")
    sp.add_argument("-o", "--output")
    lengths_opts(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", help="exact c(n, k) by exhaustive search")
    sp.add_argument("-n", required=True, help="e.g. 6 or 6..10")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--time-limit", type=float, default=_env_float("CHORDED_TIME_LIMIT", None))
    sp.add_argument("--workers", type=int, default=_env_int("CHORDED_WORKERS", 1))
    sp.add_argument("--max-chords", type=int)
    sp.add_argument("--no-symmetry", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("bounds", help="lower/upper bounds next to constructed counts")
    sp.add_argument("-n", required=True, help="e.g. 16,256,65536")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--exact", action="store_true", help="add exhaustive values for small n")
    sp.add_argument("--exact-max-n", type=int, default=9)
    sp.add_argument("--time-limit", type=float, default=_env_float("CHORDED_TIME_LIMIT", None))
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionError, LengthRangeError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
