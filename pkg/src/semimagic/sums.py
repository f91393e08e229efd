"""Latin rectangles as paths, and distinct sums (unordered decompositions into permutation matrices)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

from .algebra import Permutation, ZeroOneSquare, bitkit
from .paths import IdentityReport, _table, latin_square_count, path_numbers
from .labels import label_sort_key
from .poset import OrbitRecord, RankTable, iter_matchings


@dataclass(frozen=True)
class LatinRectangle:
    """``rows[r][c]`` is the symbol in row r, column c; symbols run over 1..n."""

    rows: tuple[tuple[int, ...], ...]
    n: int

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> LatinRectangle:
        rows = tuple(tuple(r) for r in rows)
        if n is None:
            n = len(rows[0]) if rows else 0
        return cls(rows, n)

    @property
    def m(self) -> int:
        return len(self.rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def validate_rectangle(L: LatinRectangle) -> bool:
    n = L.n
    symbols = set(range(1, n + 1))
    if L.m > n or any(len(row) != n or set(row) != symbols for row in L.rows):
        return False
    return all(len({row[c] for row in L.rows}) == L.m for c in range(n))


def path_to_rectangle(path: Sequence[Permutation]) -> LatinRectangle:
    """Row r is the one-line notation of the r-th permutation added."""
    if not path:
        raise ValueError("empty path has no dimension; build LatinRectangle directly")
    n = path[0].n
    kit = bitkit(n)
    acc = 0
    for p in path:
        if p.n != n:
            raise ValueError("permutations of different degree in one path")
        pkey = kit.perm_key(p.images)
        if acc & pkey:
            raise ValueError(f"adding {p} leaves the zero-one poset")
        acc |= pkey
    return LatinRectangle(tuple(p.images for p in path), n)


def rectangle_to_path(L: LatinRectangle) -> list[Permutation]:
    if not validate_rectangle(L):
        raise ValueError("not a Latin rectangle")
    return [Permutation(row) for row in L.rows]


def rectangle_matrix(L: LatinRectangle) -> ZeroOneSquare:
    """End point of the path a rectangle encodes."""
    kit = bitkit(L.n)
    return ZeroOneSquare(L.n, kit.rows(sum(kit.perm_key(r) for r in L.rows)))


@dataclass(frozen=True)
class SumSet:
    """Permutations whose matrices are disjoint and sum to one square, sorted by one-line notation."""

    perms: tuple[Permutation, ...]

    def total(self) -> ZeroOneSquare:
        n = self.perms[0].n
        kit = bitkit(n)
        return ZeroOneSquare(n, kit.rows(sum(kit.perm_key(p.images) for p in self.perms)))

    def rectangle(self) -> LatinRectangle:
        return path_to_rectangle(self.perms)


def distinct_sums(M: ZeroOneSquare) -> list[SumSet]:
    """All sets of permutation matrices summing to M, in lexicographic order.

    At each step the remaining support's topmost free cell in column 1 must be
    covered, so each set is found once with its rows already in increasing
    first-entry order.
    """
    return list(iter_distinct_sums(M))


def iter_distinct_sums(M: ZeroOneSquare) -> Iterator[SumSet]:
    """Lazy form of :func:`distinct_sums`."""
    if M.rank == 0:
        yield SumSet(())
        return
    kit = bitkit(M.n)
    candidates = list(iter_matchings(M.key, kit))
    by_first: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    for images, pkey in candidates:
        by_first.setdefault(images[0], []).append((images, pkey))
    col0 = kit.col_bits[0]

    def rec(rest: int, chosen: list):
        if rest == 0:
            yield SumSet(tuple(Permutation(im) for im in chosen))
            return
        # topmost set cell of column 1 lies in the highest row -> largest bit in rest & col0
        top = (rest & col0).bit_length() - 1
        row = kit.n - top // kit.n
        for images, pkey in by_first.get(row, ()):
            if pkey & rest == pkey:
                chosen.append(images)
                yield from rec(rest ^ pkey, chosen)
                chosen.pop()

    yield from rec(M.key, [])


def count_distinct_sums(M: ZeroOneSquare, table: RankTable | None = None) -> int:
    """|P(M)| without listing the sets; memoised per orbit when a table is given."""
    kit = bitkit(M.n)
    col0 = kit.col_bits[0]
    if table is not None and table.n != M.n:
        raise ValueError("table of the wrong dimension")
    memo: dict[int, int] = {table.lookup[0] if table is not None else 0: 1}

    def count(key: int) -> int:
        slot = table.lookup[key] if table is not None else key
        if slot not in memo:
            top = (key & col0).bit_length() - 1
            row_bit = 1 << top
            total = 0
            for _, pkey in iter_matchings(key, kit):
                if pkey & row_bit:
                    total += count(key ^ pkey)
            memo[slot] = total
        return memo[slot]

    return count(M.key)


def distinct_sum_check(orbit: OrbitRecord, table: RankTable, samples: int = 5, seed: int = 0,
                    enumerate_limit: int = 5000) -> IdentityReport:
    """v(M) = rank! * |P(M)| for the representative, with |P| checked on random translates.

    Sets are listed explicitly while the expected count stays under ``enumerate_limit``;
    larger cases use the counting recursion.
    """
    from .algebra import GroupElement, apply

    v = path_numbers(table)[orbit.id]
    expected = v // factorial(orbit.rank)

    def size_of(M):
        if expected <= enumerate_limit:
            return len(distinct_sums(M))
        return count_distinct_sums(M)

    p = size_of(orbit.rep)
    rng = random.Random(seed)
    n = table.n
    stable = True
    for _ in range(samples):
        g = GroupElement(_rand_perm(rng, n), _rand_perm(rng, n), rng.random() < 0.5)
        if size_of(apply(g, orbit.rep)) != p:
            stable = False
    return IdentityReport(f"v = rank!*|P| {orbit.name}", n, orbit.rank, v, factorial(orbit.rank) * p,
                          [(factorial(orbit.rank), p)], invariant_ok=stable)


def _rand_perm(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def distinct_sum_counts(table: RankTable) -> dict[int, int]:
    """|P| for every orbit, keyed by orbit id."""
    if "distinct_sums" not in table.cache:
        table.cache["distinct_sums"] = {o.id: count_distinct_sums(o.rep, table) for o in table.orbits}
    return table.cache["distinct_sums"]


def sum_convolution_check(n: int, k: int, table: RankTable | None = None) -> IdentityReport:
    """v(J) against (n-k)! k! * sum of o_M |P(M)| |P(J-M)| over rank-k orbits."""
    table = _table(n, table)
    counts = distinct_sum_counts(table)
    full = bitkit(n).full
    terms = []
    for o in sorted(table.rank(k), key=label_sort_key):
        dual = table.lookup[full & ~o.rep.key]
        terms.append((o.size, counts[o.id], counts[dual]))
    rhs = factorial(n - k) * factorial(k) * sum(a * b * c for a, b, c in terms)
    return IdentityReport("sum-convolution", n, k, latin_square_count(n, table), rhs, terms)
