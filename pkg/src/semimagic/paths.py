"""Path numbers (maximal chains from the zero matrix) and the identities they satisfy."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .algebra import Permutation, ZeroOneSquare, bitkit, perm_matrix
from .labels import label_sort_key
from .poset import OrbitRecord, RankTable, build_rank_tables, covering_profile, iter_matchings
from .rank2 import derangement_class_sizes


@dataclass
class IdentityReport:
    name: str
    n: int
    k: int | None
    lhs: int
    rhs: int
    # summands of the right-hand side, each a tuple of factors
    terms: list[tuple[int, ...]] = field(default_factory=list)
    # side condition checked alongside the equation (e.g. constancy on an orbit)
    invariant_ok: bool = True

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and self.invariant_ok

    def expansion(self) -> str:
        return " + ".join("*".join(str(f) for f in t) for t in self.terms)

    def line(self) -> str:
        k = "" if self.k is None else f" k={self.k}"
        body = f"{self.lhs} = {self.rhs}"
        if self.terms:
            body += f" ({self.expansion()})"
        return f"{self.name} n={self.n}{k}: {body} {'PASS' if self.holds else 'FAIL'}"


def path_numbers(table: RankTable) -> dict[int, int]:
    """v for every orbit, keyed by orbit id, computed rank by rank."""
    if "paths" not in table.cache:
        v: dict[int, int] = {}
        for k in range(table.n + 1):
            for orb in table.rank(k):
                if k == 0:
                    v[orb.id] = 1
                else:
                    v[orb.id] = sum(c * v[oid] for oid, c in covering_profile(orb, table).items())
        table.cache["paths"] = v
    return table.cache["paths"]


def path_number(orbit: OrbitRecord, table: RankTable) -> int:
    return path_numbers(table)[orbit.id]


def path_number_of(M: ZeroOneSquare, table: RankTable | None = None) -> int:
    """v(M) for an arbitrary square; uses the table when given, else direct recursion."""
    if table is not None:
        return path_number(table.orbit_of(M), table)
    return direct_path_number(M)


def direct_path_number(M: ZeroOneSquare) -> int:
    """Memoised recursion over raw keys, independent of any orbit data."""
    kit = bitkit(M.n)
    memo = {0: 1}

    def v(key: int) -> int:
        if key not in memo:
            memo[key] = sum(v(key ^ pkey) for _, pkey in iter_matchings(key, kit))
        return memo[key]

    return v(M.key)


def _table(n: int, table: RankTable | None) -> RankTable:
    if table is None:
        return build_rank_tables(n)
    if table.n != n:
        raise ValueError(f"table built for n={table.n}, asked about n={n}")
    return table


def latin_square_count(n: int, table: RankTable | None = None) -> int:
    table = _table(n, table)
    return path_number(table.rank(n)[0], table)


def latin_rectangle_count(n: int, k: int, table: RankTable | None = None) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    table = _table(n, table)
    v = path_numbers(table)
    return sum(o.size * v[o.id] for o in table.rank(k))


def convolution_check(n: int, k: int, table: RankTable | None = None) -> IdentityReport:
    """v(J) against the sum over rank-k orbits of o_M * v(M) * v(J - M)."""
    table = _table(n, table)
    v = path_numbers(table)
    full = bitkit(n).full
    terms = []
    for o in sorted(table.rank(k), key=label_sort_key):
        dual = table.lookup[full & ~o.rep.key]
        terms.append((o.size, v[o.id], v[dual]))
    rhs = sum(a * b * c for a, b, c in terms)
    return IdentityReport("convolution", n, k, latin_square_count(n, table), rhs, terms)


def derangement_sum_check(n: int, table: RankTable | None = None) -> list[IdentityReport]:
    """v(J-I) = sum of c_σ v(J-I-P_σ) over derangement classes, and v(J) = n! v(J-I)."""
    table = _table(n, table)
    v = path_numbers(table)
    kit = bitkit(n)
    j_minus_i = kit.full & ~kit.perm_key(range(1, n + 1))
    vji = v[table.lookup[j_minus_i]]
    terms = []
    for t, size in derangement_class_sizes(n).items():
        sigma = Permutation.from_cycles(n, _consecutive_cycles(t))
        m_sigma = j_minus_i & ~perm_matrix(sigma).key
        terms.append((size, v[table.lookup[m_sigma]]))
    weighted = IdentityReport("derangement-sum J-I", n, None, vji, sum(a * b for a, b in terms), terms)
    top = IdentityReport("J = n!*v(J-I)", n, None, latin_square_count(n, table), factorial(n) * vji, [(factorial(n), vji)])
    return [weighted, top]


def _consecutive_cycles(t: tuple[int, ...]) -> list[list[int]]:
    cycles, start = [], 1
    for length in t:
        cycles.append(list(range(start, start + length)))
        start += length
    return cycles


def rank2_law_check(n: int, table: RankTable | None = None) -> list[IdentityReport]:
    from .rank2 import derangement_class

    table = _table(n, table)
    v = path_numbers(table)
    out = []
    if n >= 2:
        for o in table.rank(2):
            c = derangement_class(o.rep).cycle_count
            out.append(IdentityReport(f"rank-2 2^c {o.name}", n, 2, v[o.id], 2**c))
    return out
