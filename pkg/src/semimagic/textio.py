"""Plain-text formats for squares, permutations, rectangles and hypergraphs; JSON and DOT exports."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Permutation, ZeroOneSquare
from .hypergraph import Hypergraph
from .labels import label_sort_key
from .poset import RankTable, covering_profile
from .sums import LatinRectangle


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_matrix(text: str) -> ZeroOneSquare:
    """n lines of n space-separated 0/1 tokens."""
    rows = []
    for ln in _lines(text):
        try:
            rows.append([int(t) for t in ln.split()])
        except ValueError:
            raise FormatError(f"non-integer token in line {ln!r}") from None
    if not rows:
        raise FormatError("empty matrix")
    try:
        return ZeroOneSquare.from_lists(rows)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_matrix(M: ZeroOneSquare) -> str:
    return str(M) + "\n"


def read_matrix(path: str | Path) -> ZeroOneSquare:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    return parse_matrix(text)


def parse_permutation(text: str) -> Permutation:
    try:
        return Permutation(tuple(int(t) for t in text.split()))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_permutation(p: Permutation) -> str:
    return p.one_line(" ")


def parse_rectangle(text: str) -> LatinRectangle:
    """m lines of n space-separated symbols."""
    rows = [[int(t) for t in ln.split()] for ln in _lines(text)]
    if not rows or len({len(r) for r in rows}) != 1:
        raise FormatError("rows of a rectangle must all have the same length")
    return LatinRectangle.from_lists(rows)


def format_rectangle(L: LatinRectangle) -> str:
    return str(L) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """First line ``n m``, then one edge per line as vertex indices."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty hypergraph file")
    try:
        n, m = (int(t) for t in lines[0].split())
        edges = tuple(frozenset(int(t) for t in ln.split()) for ln in lines[1:])
    except ValueError:
        raise FormatError("malformed hypergraph header or edge") from None
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Hypergraph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_hypergraph(H: Hypergraph) -> str:
    out = [f"{H.vertex_count} {len(H.edges)}"]
    out += [" ".join(str(v) for v in sorted(e)) for e in H.edges]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# rank tables

RANK_TABLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "orbit records of M(n,1)",
    "type": "array",
    "items": {
        "type": "object",
        "required": ["rank", "rep", "size", "stabilizer", "label"],
        "additionalProperties": False,
        "properties": {
            "id": {"type": "integer", "minimum": 0},
            "rank": {"type": "integer", "minimum": 0},
            "rep": {"type": "string", "pattern": "^[01]+$"},
            "size": {"type": "integer", "minimum": 1},
            "stabilizer": {"type": "integer", "minimum": 1},
            "label": {"type": ["string", "null"]},
            "path_number": {"type": "integer", "minimum": 1},
        },
    },
}


def rep_string(M: ZeroOneSquare) -> str:
    return "".join(str(e) for row in M.to_lists() for e in row)


def rank_table_records(table: RankTable, path_numbers: dict[int, int] | None = None) -> list[dict]:
    out = []
    for o in table.orbits:
        rec = {
            "id": o.id,
            "rank": o.rank,
            "rep": rep_string(o.rep),
            "size": o.size,
            "stabilizer": o.stabilizer_order,
            "label": o.label,
        }
        if path_numbers is not None:
            rec["path_number"] = path_numbers[o.id]
        out.append(rec)
    return out


def rank_table_json(table: RankTable, path_numbers: dict[int, int] | None = None) -> str:
    return json.dumps(rank_table_records(table, path_numbers), indent=2) + "\n"


def load_rank_table_json(text: str) -> list[dict]:
    """Read records back, checking each against the schema's shape."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise FormatError("expected a JSON array of orbit records")
    for rec in data:
        missing = set(RANK_TABLE_SCHEMA["items"]["required"]) - rec.keys()
        if missing:
            raise FormatError(f"record lacks {sorted(missing)}")
        side = int(round(len(rec["rep"]) ** 0.5))
        if side * side != len(rec["rep"]):
            raise FormatError("rep string length is not a square")
        rec["matrix"] = ZeroOneSquare.from_lists(
            [[int(c) for c in rec["rep"][i * side:(i + 1) * side]] for i in range(side)]
        )
    return data


def hasse_dot(table: RankTable, path_numbers: dict[int, int] | None = None) -> str:
    """Orbit-level Hasse diagram; edge labels count the covers of each representative."""
    lines = [f"digraph M{table.n}_1 {{", "  rankdir=BT;", "  node [shape=box];"]
    for k in range(table.n + 1):
        orbits = sorted(table.rank(k), key=label_sort_key)
        names = " ".join(f"o{o.id}" for o in orbits)
        lines.append(f"  {{ rank=same; {names} }}")
        for o in orbits:
            text = f"{o.name}\\n{o.size}"
            if path_numbers is not None:
                text += f", {path_numbers[o.id]}"
            lines.append(f'  o{o.id} [label="{text}"];')
    for o in table.orbits:
        for lower, count in covering_profile(o, table).items():
            lines.append(f'  o{lower} -> o{o.id} [label="{count}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
