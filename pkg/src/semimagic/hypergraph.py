"""Semi-magic hypergraphs: incidence matrices, duals, invariants and the rank-3 labeler for n = 6."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

from .algebra import ZeroOneSquare, bitkit
from .poset import closure_keys


class ClassificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``1..vertex_count``; ``edges`` is an ordered multiset of vertex sets."""

    vertex_count: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        for e in self.edges:
            if not all(1 <= v <= self.vertex_count for v in e):
                raise ValueError(f"edge {sorted(e)} has a vertex outside 1..{self.vertex_count}")

    @classmethod
    def from_incidence(cls, rows: Sequence[Sequence[int]]) -> Hypergraph:
        """Columns of the incidence matrix are the edges; rows are vertices."""
        n = len(rows)
        m = len(rows[0]) if n else 0
        edges = tuple(frozenset(i + 1 for i in range(n) if rows[i][j]) for j in range(m))
        return cls(n, edges)

    def incidence(self) -> list[list[int]]:
        return [[int(v in e) for e in self.edges] for v in range(1, self.vertex_count + 1)]

    def dual(self) -> Hypergraph:
        inc = self.incidence()
        return Hypergraph.from_incidence([list(col) for col in zip(*inc)])

    def complement(self) -> Hypergraph:
        everything = frozenset(range(1, self.vertex_count + 1))
        return Hypergraph(self.vertex_count, tuple(everything - e for e in self.edges))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def semi_magic_rank(self) -> int | None:
        """k if the hypergraph is k-uniform and k-regular, else None."""
        sizes = {len(e) for e in self.edges}
        degrees = {self.degree(v) for v in range(1, self.vertex_count + 1)}
        if len(self.edges) != self.vertex_count or len(sizes | degrees) != 1:
            return None
        return sizes.pop()

    def relabel(self, vertex_map: Sequence[int], edge_order: Sequence[int] | None = None) -> Hypergraph:
        """Apply a vertex bijection (``vertex_map[v-1]`` is the new label of v)."""
        edges = [frozenset(vertex_map[v - 1] for v in e) for e in self.edges]
        if edge_order is not None:
            edges = [edges[i] for i in edge_order]
        return Hypergraph(self.vertex_count, tuple(edges))


def hypergraph_pair(M: ZeroOneSquare) -> tuple[Hypergraph, Hypergraph]:
    rows = M.to_lists()
    return Hypergraph.from_incidence(rows), Hypergraph.from_incidence([list(c) for c in zip(*rows)])


def pair_degrees(H: Hypergraph) -> list[list[int]]:
    """d(u, v) = number of edges containing both u and v; the diagonal holds degrees."""
    n = H.vertex_count
    d = [[0] * n for _ in range(n)]
    for e in H.edges:
        for u in e:
            for v in e:
                d[u - 1][v - 1] += 1
    return d


@dataclass(frozen=True)
class Fingerprint:
    column_multiplicities: tuple[int, ...]
    pair_degrees: tuple[int, ...]
    double_edge_components: tuple[tuple[int, int, int], ...]
    triple_edge_count: int


def fingerprint(H: Hypergraph) -> Fingerprint:
    return _fingerprint_masks(_rows_as_masks(H), tuple(H.edges))


def _fingerprint_masks(rows: Sequence[int], edges: Sequence) -> Fingerprint:
    """``rows[u]`` is the set of edges through vertex u as a bit mask; ``edges``
    is any hashable per-edge description used to detect repeats."""
    n = len(rows)
    mult = tuple(sorted(Counter(edges).values()))
    pairs = []
    adj = [[] for _ in range(n)]
    triples = 0
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            d = (ru & rows[v]).bit_count()
            pairs.append(d)
            if d == 2:
                adj[u].append(v)
                adj[v].append(u)
            elif d == 3:
                triples += 1
    pairs.sort()
    comps = []
    seen: set[int] = set()
    for u in range(n):
        if u in seen or not adj[u]:
            continue
        stack, comp = [u], set()
        while stack:
            x = stack.pop()
            if x not in comp:
                comp.add(x)
                stack.extend(adj[x])
        seen |= comp
        edge_count = sum(len(adj[x]) for x in comp) // 2
        comps.append((len(comp), edge_count, max(len(adj[x]) for x in comp)))
    return Fingerprint(mult, tuple(pairs), tuple(sorted(comps)), triples)


def square_fingerprints(key: int, n: int) -> tuple[Fingerprint, Fingerprint]:
    """Fingerprints of H and H* straight from a packed square."""
    kit = bitkit(n)
    rows = kit.rows(key)
    cols = kit.columns(key)
    # for H, vertex u lies in edge j iff entry (u, j) is set: rows are the edge sets
    # through each vertex, columns describe the edges; H* swaps the two roles
    return _fingerprint_masks(rows, cols), _fingerprint_masks(cols, rows)


# ---------------------------------------------------------------------------
# equivalence by closure under row and column swaps (no transpose)


def _rows_as_masks(H: Hypergraph) -> tuple[int, ...]:
    m = len(H.edges)
    return tuple(sum(1 << (m - 1 - j) for j in range(m) if row[j]) for row in H.incidence())


def _transpose_free_orbit(H: Hypergraph):
    """Orbit of the incidence matrix under vertex and edge relabelings, plus its key."""
    n, m = H.vertex_count, len(H.edges)
    rows = _rows_as_masks(H)
    if n == m and n >= 1:
        kit = bitkit(n)
        key = kit.pack(rows)
        return closure_keys(key, kit.transpose_free_generators), key
    # rectangular incidence matrices: plain tuples of row masks
    def row_swap(i):
        def g(x):
            x = list(x)
            x[i], x[i + 1] = x[i + 1], x[i]
            return tuple(x)
        return g

    def col_swap(j):
        a, b = m - 1 - j, m - 2 - j
        def g(x):
            return tuple(r ^ ((((r >> a) ^ (r >> b)) & 1) * ((1 << a) | (1 << b))) for r in x)
        return g

    gens = [row_swap(i) for i in range(n - 1)] + [col_swap(j) for j in range(m - 1)]
    return closure_keys(rows, gens), rows


def equivalent(H1: Hypergraph, H2: Hypergraph) -> bool:
    """True iff some vertex bijection carries the edge multiset of H1 onto that of H2."""
    if H1.vertex_count != H2.vertex_count:
        raise ValueError("hypergraphs on different vertex counts")
    if len(H1.edges) != len(H2.edges) or sorted(map(len, H1.edges)) != sorted(map(len, H2.edges)):
        return False
    if fingerprint(H1) != fingerprint(H2):
        return False
    orb1, _ = _transpose_free_orbit(H1)
    key2 = _rows_as_masks(H2)
    if H2.vertex_count == len(H2.edges):
        key2 = bitkit(H2.vertex_count).pack(key2)
    return key2 in orb1


def automorphism_order(H: Hypergraph) -> int:
    """Number of (vertex, edge) relabeling pairs fixing the incidence matrix."""
    orb, _ = _transpose_free_orbit(H)
    total = factorial(H.vertex_count) * factorial(len(H.edges))
    return total // len(orb)


def stabilizer_split(M: ZeroOneSquare) -> tuple[int, int]:
    """(order of the transpose-free stabilizer, index of it in the full stabilizer)."""
    H, Hd = hypergraph_pair(M)
    index = 2 if equivalent(H, Hd) else 1
    return automorphism_order(H), index


# ---------------------------------------------------------------------------
# rank 3, n = 6

REFERENCE_RANK3: dict[str, tuple[str, ...]] = {
    "Ia": ("110010", "110100", "001110", "001101", "001011", "110001"),
    "Ib": ("100011", "111000", "011100", "001101", "010110", "100011"),
    "II": ("110001", "110010", "101100", "001110", "000111", "011001"),
    "III": ("111000", "110001", "001110", "000111", "001110", "110001"),
    "IV": ("110001", "111000", "011100", "001110", "000111", "100011"),
    "V": ("111000", "111000", "111000", "000111", "000111", "000111"),
    "VI": ("110010", "110001", "101100", "011100", "001011", "000111"),
}

# orbit label for each unordered pair of hypergraph classes
_ORBIT_OF_PAIR = {
    frozenset({"Ia", "Ib"}): "I",
    frozenset({"II"}): "II",
    frozenset({"III"}): "III",
    frozenset({"IV"}): "IV",
    frozenset({"V"}): "V",
    frozenset({"VI"}): "VI",
}


def reference_matrix(label: str) -> ZeroOneSquare:
    return ZeroOneSquare.from_lists([[int(c) for c in row] for row in REFERENCE_RANK3[label]])


@lru_cache(maxsize=None)
def reference_fingerprints() -> dict[Fingerprint, str]:
    out: dict[Fingerprint, str] = {}
    for label in REFERENCE_RANK3:
        fp = fingerprint(hypergraph_pair(reference_matrix(label))[0])
        if fp in out:
            raise ClassificationError(f"reference classes {out[fp]} and {label} share a fingerprint")
        out[fp] = label
    return out


def _lookup(fp: Fingerprint) -> str:
    try:
        return reference_fingerprints()[fp]
    except KeyError:
        raise ClassificationError(f"fingerprint matches no rank-3 reference class: {fp}") from None


def hypergraph_class(H: Hypergraph) -> str:
    return _lookup(fingerprint(H))


def classify_key(key: int) -> tuple[str, str]:
    """Packed-key form of :func:`classify_rank3_n6` (no validation)."""
    fh, fd = square_fingerprints(key, 6)
    a, b = _lookup(fh), _lookup(fd)
    try:
        return _ORBIT_OF_PAIR[frozenset({a, b})], a
    except KeyError:
        raise ClassificationError(f"inconsistent hypergraph pair ({a}, {b})") from None


def classify_rank3_n6(M: ZeroOneSquare) -> tuple[str, str]:
    """Return ``(orbit label, class of H)``; the orbit label is one of I..VI."""
    if M.n != 6 or M.rank != 3:
        raise ValueError("classification is defined for rank-3 squares of size 6")
    return classify_key(M.key)


def to_dot(H: Hypergraph, name: str = "H") -> str:
    """Multigraph of pairs lying in at least two common edges, one DOT edge per extra multiplicity."""
    d = pair_degrees(H)
    n = H.vertex_count
    lines = [f"graph {name} {{"]
    for v in range(1, n + 1):
        lines.append(f'  {v} [label="{v}"];')
    for u in range(n):
        for v in range(u + 1, n):
            if d[u][v] >= 2:
                lines.append(f'  {u + 1} -- {v + 1} [label="{d[u][v]}", penwidth={d[u][v]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
