"""Rank-by-rank construction of M(n,1) and its partition into G-orbits."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import (
    BitKit,
    Permutation,
    ZeroOneSquare,
    bitkit,
    decode,
    group_order,
)

log = logging.getLogger(__name__)

SUPPORTED_N = 6
EXPERIMENTAL_N = 7


def iter_matchings(key: int, kit: BitKit) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield ``(images, perm_key)`` for every permutation matrix under ``key``.

    Columns are filled left to right with candidate rows in ascending order,
    so the output is in lexicographic order of one-line notation.
    """
    n = kit.n
    cols = kit.columns(key)
    cell = kit.cell
    images = [0] * n

    def rec(j: int, used: int, pkey: int):
        if j == n:
            yield tuple(images), pkey
            return
        avail = cols[j] & ~used
        while avail:
            low = avail & -avail
            i = low.bit_length() - 1
            images[j] = i + 1
            yield from rec(j + 1, used | low, pkey | cell[i][j])
            avail ^= low

    yield from rec(0, 0, 0)


def down_matchings(M: ZeroOneSquare) -> list[Permutation]:
    """Permutations ``p`` with ``P_p <= M``, in lexicographic order."""
    if M.rank == 0:
        return []
    return [Permutation(im) for im, _ in iter_matchings(M.key, bitkit(M.n))]


def up_matchings(M: ZeroOneSquare) -> list[Permutation]:
    """Permutations ``p`` with ``M + P_p`` still zero-one."""
    kit = bitkit(M.n)
    if M.rank == M.n:
        return []
    return [Permutation(im) for im, _ in iter_matchings(kit.full & ~M.key, kit)]


def closure_keys(key: int, generators) -> set[int]:
    """Breadth-first closure of ``key`` under the given involutive moves."""
    seen = {key}
    frontier = [key]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def orbit_closure(M: ZeroOneSquare) -> set[ZeroOneSquare]:
    keys = closure_keys(M.key, bitkit(M.n).generators)
    return {decode(k, M.n) for k in keys}


def canonical_rep(M: ZeroOneSquare) -> ZeroOneSquare:
    """Lexicographically smallest element of the orbit of ``M``."""
    return decode(min(closure_keys(M.key, bitkit(M.n).generators)), M.n)


@dataclass
class OrbitRecord:
    id: int
    rank: int
    rep: ZeroOneSquare
    size: int
    stabilizer_order: int
    label: str | None = None

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def name(self) -> str:
        return self.label or f"rk{self.rank}-o{self.id}"


@dataclass
class RankTable:
    n: int
    orbits: list[OrbitRecord]
    by_rank: list[list[int]]
    lookup: dict[int, int]
    # derived data filled in lazily by other modules (path numbers etc.)
    cache: dict = field(default_factory=dict, repr=False)

    def rank(self, k: int) -> list[OrbitRecord]:
        return [self.orbits[i] for i in self.by_rank[k]]

    def orbit_of(self, M: ZeroOneSquare | int) -> OrbitRecord:
        key = M if isinstance(M, int) else M.key
        return self.orbits[self.lookup[key]]

    def by_label(self, label: str) -> OrbitRecord:
        for o in self.orbits:
            if o.label == label:
                return o
        raise KeyError(label)

    def element_count(self, k: int | None = None) -> int:
        if k is None:
            return len(self.lookup)
        return sum(o.size for o in self.rank(k))

    def elements(self, orbit: OrbitRecord) -> list[int]:
        """All keys of one orbit (scans the lookup table)."""
        return [k for k, oid in self.lookup.items() if oid == orbit.id]


def stabilizer_order(orbit: OrbitRecord) -> int:
    order = group_order(orbit.n)
    q, r = divmod(order, orbit.size)
    if r:
        raise AssertionError(f"orbit size {orbit.size} does not divide {order}")
    return q


def build_rank_tables(n: int, experimental: bool = False, labels: bool = True) -> RankTable:
    """Enumerate M(n,1) rank by rank and split each rank into orbits.

    Every rank k+1 orbit contains an element covering some rank-k orbit
    representative, so raising the representatives alone reaches all of them.
    """
    limit = EXPERIMENTAL_N if experimental else SUPPORTED_N
    if not 1 <= n <= limit:
        raise ValueError(f"n must lie in 1..{limit}, got {n}")
    kit = bitkit(n)
    gens = kit.generators
    order = group_order(n)

    found: list[list[tuple[int, set[int]]]] = [[(0, {0})]]
    seen_keys = {0}
    for k in range(n):
        layer = []
        for rep, _ in found[k]:
            for _, pkey in iter_matchings(kit.full & ~rep, kit):
                new = rep | pkey
                if new in seen_keys:
                    continue
                orb = closure_keys(new, gens)
                seen_keys.update(orb)
                layer.append((min(orb), orb))
        layer.sort(key=lambda t: t[0])
        found.append(layer)
        log.info("n=%d rank %d: %d orbits, %d elements", n, k + 1, len(layer), sum(len(o) for _, o in layer))

    orbits: list[OrbitRecord] = []
    by_rank: list[list[int]] = []
    lookup: dict[int, int] = {}
    for k, layer in enumerate(found):
        ids = []
        for rep, orb in layer:
            oid = len(orbits)
            size = len(orb)
            if order % size:
                raise AssertionError(f"orbit size {size} does not divide {order}")
            orbits.append(OrbitRecord(oid, k, decode(rep, n), size, order // size))
            for key in orb:
                lookup[key] = oid
            ids.append(oid)
        by_rank.append(ids)

    table = RankTable(n, orbits, by_rank, lookup)
    if labels:
        from .labels import label_orbits

        label_orbits(table)
    return table


def covering_profile(orbit: OrbitRecord, table: RankTable) -> dict[int, int]:
    """Count the elements covered by the representative, grouped by orbit id."""
    cache = table.cache.setdefault("down_profile", {})
    if orbit.id not in cache:
        kit = bitkit(table.n)
        prof: dict[int, int] = {}
        rep = orbit.rep.key
        if orbit.rank > 0:
            for _, pkey in iter_matchings(rep, kit):
                oid = table.lookup[rep ^ pkey]
                prof[oid] = prof.get(oid, 0) + 1
        cache[orbit.id] = dict(sorted(prof.items()))
    return cache[orbit.id]


def up_profile(orbit: OrbitRecord, table: RankTable) -> dict[int, int]:
    """Count the elements covering the representative, grouped by orbit id."""
    kit = bitkit(table.n)
    prof: dict[int, int] = {}
    rep = orbit.rep.key
    for _, pkey in iter_matchings(kit.full & ~rep, kit):
        oid = table.lookup[rep | pkey]
        prof[oid] = prof.get(oid, 0) + 1
    return dict(sorted(prof.items()))


def complement_orbit(orbit: OrbitRecord, table: RankTable) -> OrbitRecord:
    return table.orbit_of(bitkit(table.n).full & ~orbit.rep.key)


@dataclass
class TreeNode:
    """One step of the matching search: ``label`` is the row picked for the next
    column, or ``"X"`` where no row is left."""

    label: str
    children: list[TreeNode] = field(default_factory=list)


def extraction_tree(M: ZeroOneSquare) -> list[TreeNode]:
    """The search tree behind :func:`down_matchings`, dead ends included."""
    kit = bitkit(M.n)
    n = M.n
    cols = kit.columns(M.key)

    def rec(j: int, used: int) -> list[TreeNode]:
        if j == n:
            return []
        avail = cols[j] & ~used
        if not avail:
            return [TreeNode("X")]
        out = []
        while avail:
            low = avail & -avail
            out.append(TreeNode(str(low.bit_length()), rec(j + 1, used | low)))
            avail ^= low
        return out

    return rec(0, 0) if M.rank else []


def tree_brackets(nodes: list[TreeNode]) -> str:
    """Bracket notation, e.g. ``[1 [2 [3]]] [2 [1 [3]]]``."""
    parts = []
    for node in nodes:
        inner = tree_brackets(node.children)
        parts.append(f"[{node.label}{' ' + inner if inner else ''}]")
    return " ".join(parts)


def tree_dot(nodes: list[TreeNode], name: str = "extraction") -> str:
    lines = [f"digraph {name} {{", '  root [label="", shape=point];']
    counter = 0

    def walk(parent: str, children: list[TreeNode]):
        nonlocal counter
        for node in children:
            counter += 1
            nid = f"t{counter}"
            shape = ', shape=box' if node.label == "X" else ""
            lines.append(f'  {nid} [label="{node.label}"{shape}];')
            lines.append(f"  {parent} -> {nid};")
            walk(nid, node.children)

    walk("root", nodes)
    lines.append("}")
    return "\n".join(lines) + "\n"
