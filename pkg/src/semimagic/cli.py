"""Command-line entry point: ``semimagic <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from math import factorial

from . import hypergraph as hg
from .labels import label_sort_key
from .paths import (
    IdentityReport,
    convolution_check,
    derangement_sum_check,
    latin_rectangle_count,
    latin_square_count,
    path_numbers,
    rank2_law_check,
)
from .poset import (
    EXPERIMENTAL_N,
    SUPPORTED_N,
    RankTable,
    build_rank_tables,
    complement_orbit,
    covering_profile,
    extraction_tree,
    tree_brackets,
    tree_dot,
)
from .rank2 import rank2_census
from .sums import count_distinct_sums, distinct_sum_check, iter_distinct_sums, sum_convolution_check
from .textio import FormatError, hasse_dot, rank_table_json, read_matrix

COMMANDS = ("table", "covering", "count-latin", "verify", "classify", "paths", "sums", "dot", "rank2")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    rank: int | None = None
    matrix: str | None = None
    output: str | None = None
    format: str = "text"
    threads: int = 1
    experimental_n7: bool = False
    list_sums: bool = False
    max_list: int = 10000

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")
        if self.n is not None:
            limit = EXPERIMENTAL_N if self.experimental_n7 else SUPPORTED_N
            if not 1 <= self.n <= limit:
                hint = "" if self.experimental_n7 else " (n = 7 needs --experimental-n7)"
                raise UsageError(f"n must lie in 1..{limit}{hint}")
        if self.rank is not None and self.n is not None and not 0 <= self.rank <= self.n:
            raise UsageError(f"--rank must lie in 0..{self.n}")


def _table(cfg: RunConfig, n: int | None = None) -> RankTable:
    return build_rank_tables(cfg.n if n is None else n, experimental=cfg.experimental_n7)


def _fmt_row(cells, widths):
    return "  ".join(str(c).rjust(w) for c, w in zip(cells, widths)).rstrip()


def _grid(header, rows) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    return "\n".join(_fmt_row(r, widths) for r in [header] + rows) + "\n"


def cmd_table(cfg: RunConfig) -> tuple[str, int]:
    table = _table(cfg)
    v = path_numbers(table)
    if cfg.format == "json":
        return rank_table_json(table, v), 0
    if cfg.format == "dot":
        return hasse_dot(table, v), 0
    rows = [[o.name, o.rank, o.size, v[o.id], o.stabilizer_order]
            for o in sorted(table.orbits, key=label_sort_key)]
    return _grid(["orbit", "rank", "size", "paths", "stabilizer"], rows), 0


def cmd_covering(cfg: RunConfig) -> tuple[str, int]:
    if cfg.rank is None or cfg.rank < 1:
        raise UsageError("covering needs --rank K with K >= 1")
    table = _table(cfg)
    v = path_numbers(table)
    upper = sorted(table.rank(cfg.rank), key=label_sort_key)
    lower = sorted(table.rank(cfg.rank - 1), key=label_sort_key)
    header = [f"{cfg.rank}/{cfg.rank - 1}"] + [o.name for o in lower] + ["paths"]
    rows = [["paths"] + [v[o.id] for o in lower] + [""]]
    for o in upper:
        prof = covering_profile(o, table)
        rows.append([o.name] + [prof.get(low.id, 0) for low in lower] + [v[o.id]])
    return _grid(header, rows), 0


def cmd_count_latin(cfg: RunConfig) -> tuple[str, int]:
    table = _table(cfg)
    if cfg.rank is None:
        return f"{latin_square_count(cfg.n, table)}\n", 0
    return f"{latin_rectangle_count(cfg.n, cfg.rank, table)}\n", 0


def verification_reports(table: RankTable) -> list[IdentityReport]:
    n = table.n
    reports = [convolution_check(n, k, table) for k in range(n + 1)]
    reports += [sum_convolution_check(n, k, table) for k in range(n + 1)]
    reports += derangement_sum_check(n, table)
    reports += rank2_law_check(n, table)
    for row in rank2_census(table):
        if row["predicted_size"] is not None:
            reports.append(IdentityReport(f"rank-2 orbit size {row['orbit']}", n, 2, row["size"], row["predicted_size"]))
    for o in sorted(table.orbits, key=label_sort_key):
        dual = complement_orbit(o, table)
        ok = dual.rank == n - o.rank
        reports.append(IdentityReport(f"duality {o.name}", n, o.rank, o.size, dual.size, invariant_ok=ok))
    v = path_numbers(table)
    for o in sorted(table.orbits, key=label_sort_key):
        # listing every set is only cheap while |P| stays small
        if v[o.id] // factorial(o.rank) <= 5000:
            reports.append(distinct_sum_check(o, table))
    return reports


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    reports = verification_reports(_table(cfg))
    text = "".join(r.line() + "\n" for r in reports)
    return text, 0 if all(r.holds for r in reports) else 1


def _load(cfg: RunConfig):
    if not cfg.matrix:
        raise UsageError("this command needs --matrix FILE")
    M = read_matrix(cfg.matrix)
    if M.n > SUPPORTED_N and not cfg.experimental_n7:
        raise UsageError(f"matrices larger than {SUPPORTED_N} need --experimental-n7")
    return M


def cmd_classify(cfg: RunConfig) -> tuple[str, int]:
    M = _load(cfg)
    table = _table(cfg, M.n)
    orb = table.orbit_of(M)
    lines = [f"orbit {orb.name}, stabilizer {orb.stabilizer_order}",
             f"rank {orb.rank}, orbit size {orb.size}"]
    H, Hd = hg.hypergraph_pair(M)
    aut, index = hg.stabilizer_split(M)
    lines.append(f"transpose-free stabilizer {aut}, index {index}")
    if M.n == 6 and M.rank == 3:
        label, side = hg.classify_rank3_n6(M)
        lines.append(f"hypergraph class {side} (dual {hg.hypergraph_class(Hd)})")
    lines.append(f"fingerprint H: {hg.fingerprint(H)}")
    lines.append(f"fingerprint H*: {hg.fingerprint(Hd)}")
    if cfg.format == "json":
        payload = {"orbit": orb.name, "rank": orb.rank, "size": orb.size,
                   "stabilizer": orb.stabilizer_order, "automorphisms": aut, "index": index}
        return json.dumps(payload, indent=2) + "\n", 0
    if cfg.format == "dot":
        return hg.to_dot(H), 0
    return "\n".join(lines) + "\n", 0


def cmd_paths(cfg: RunConfig) -> tuple[str, int]:
    M = _load(cfg)
    table = _table(cfg, M.n)
    tree = extraction_tree(M)
    if cfg.format == "dot":
        return tree_dot(tree), 0
    v = path_numbers(table)[table.orbit_of(M).id]
    return f"paths {v}\ntree {tree_brackets(tree)}\n", 0


def cmd_sums(cfg: RunConfig) -> tuple[str, int]:
    M = _load(cfg)
    table = _table(cfg, M.n)
    count = count_distinct_sums(M, table)
    out = [f"distinct sums {count}"]
    if cfg.list_sums:
        shown = 0
        for s in iter_distinct_sums(M):
            if shown == cfg.max_list:
                out.append(f"... listing stopped after {shown} of {count}")
                break
            out.append("")
            out.append(str(s.rectangle()) if s.perms else "(empty sum)")
            shown += 1
    return "\n".join(out) + "\n", 0


def cmd_dot(cfg: RunConfig) -> tuple[str, int]:
    table = _table(cfg)
    return hasse_dot(table, path_numbers(table)), 0


def cmd_rank2(cfg: RunConfig) -> tuple[str, int]:
    table = _table(cfg)
    rows = []
    status = 0
    for r in rank2_census(table):
        pred = "unsupported" if r["predicted_size"] is None else r["predicted_size"]
        if r["predicted_size"] is not None and r["predicted_size"] != r["size"]:
            status = 1
        rows.append([r["orbit"], "".join(f"({p})" for p in r["cycle_type"]), r["class_size"], pred, r["size"], r["paths"]])
    return _grid(["orbit", "cycle type", "class size", "predicted", "enumerated", "2^c"], rows), status


HANDLERS = {
    "table": cmd_table,
    "covering": cmd_covering,
    "count-latin": cmd_count_latin,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "paths": cmd_paths,
    "sums": cmd_sums,
    "dot": cmd_dot,
    "rank2": cmd_rank2,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        text, status = HANDLERS[cfg.command](cfg)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semimagic", description="Exact enumeration in the poset M(n,1).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is single-threaded")
    common.add_argument("--experimental-n7", action="store_true", help="allow n = 7 (very slow, large memory)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_n(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--n", type=int, required=True)
        return p

    with_n("table", "orbit data: rank, size, path number, stabilizer")
    with_n("covering", "covering counts of rank K over rank K-1").add_argument("--rank", type=int, required=True)
    with_n("count-latin", "Latin squares, or k x n rectangles with --rank").add_argument("--rank", type=int)
    with_n("verify", "check every identity; exit 1 on any failure")
    with_n("dot", "orbit Hasse diagram in DOT")
    with_n("rank2", "derangement classes against rank-2 orbits")
    for name, help_ in (("classify", "orbit and hypergraph class of a matrix"),
                        ("paths", "path number and extraction tree of a matrix"),
                        ("sums", "distinct sums of a matrix")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--matrix", required=True, help="file with n lines of n 0/1 tokens")
        if name == "sums":
            p.add_argument("--list", dest="list_sums", action="store_true", help="print each sum as a rectangle")
            p.add_argument("--max-list", type=int, default=10000, help="stop listing after this many")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        rank=getattr(args, "rank", None),
        matrix=getattr(args, "matrix", None),
        output=args.output,
        format=args.format,
        threads=args.threads,
        experimental_n7=args.experimental_n7,
        list_sums=getattr(args, "list_sums", False),
        max_list=getattr(args, "max_list", 10000),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
