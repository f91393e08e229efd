"""Closed-form facts about rank 2: derangement classes, unique summability and orbit sizes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, prod

from .algebra import Permutation, ZeroOneSquare, bitkit, cycle_type
from .poset import iter_matchings


@dataclass(frozen=True)
class DerangementClass:
    cycle_type: tuple[int, ...]
    class_size: int

    def __post_init__(self):
        if any(part < 2 for part in self.cycle_type):
            raise ValueError(f"{self.cycle_type} has a fixed point")

    @property
    def cycle_count(self) -> int:
        return len(self.cycle_type)


def conjugacy_class_size(t: tuple[int, ...]) -> int:
    n = sum(t)
    mult = Counter(t)
    return factorial(n) // (prod(t) * prod(factorial(m) for m in mult.values()))


def derangement_types(n: int) -> list[tuple[int, ...]]:
    """Partitions of n into parts >= 2, each sorted ascending."""
    out = []

    def rec(rest, smallest, parts):
        if rest == 0:
            out.append(tuple(parts))
            return
        for p in range(smallest, rest + 1):
            if rest - p == 0 or rest - p >= p:
                rec(rest - p, p, parts + [p])

    if n >= 2:
        rec(n, 2, [])
    return sorted(out)


def derangement_class_sizes(n: int) -> dict[tuple[int, ...], int]:
    return {t: conjugacy_class_size(t) for t in derangement_types(n)}


def nontrivial_cycle_count(p: Permutation) -> int:
    return sum(1 for length in cycle_type(p) if length > 1)


def uniquely_summable(p: Permutation, q: Permutation) -> bool:
    """True iff ``P_p + P_q`` has a single unordered decomposition.

    Fixed points of ``p^-1 q`` are not counted as cycles.
    """
    if p == q:
        raise ValueError("a uniquely summable pair needs two distinct permutations")
    return nontrivial_cycle_count(p.inverse() * q) == 1


def _factor(M: ZeroOneSquare) -> tuple[Permutation, Permutation]:
    if M.rank != 2:
        raise ValueError(f"expected a rank-2 square, got rank {M.rank}")
    kit = bitkit(M.n)
    images, pkey = next(iter_matchings(M.key, kit))
    rest, _ = next(iter_matchings(M.key ^ pkey, kit))
    return Permutation(images), Permutation(rest)


def derangement_class(M: ZeroOneSquare) -> DerangementClass:
    p, q = _factor(M)
    t = cycle_type(p.inverse() * q)
    return DerangementClass(t, conjugacy_class_size(t))


def ordered_sum_count(M: ZeroOneSquare) -> int:
    """Number of ordered ways to write a rank-2 square as ``P_p + P_q``."""
    return 2 ** derangement_class(M).cycle_count


def predicted_orbit_size(t: tuple[int, ...], n: int) -> int | None:
    """Orbit size of ``I + P_σ`` for σ of cycle type ``t``.

    Returns None for cycle types no closed form is available for; callers then
    fall back to counting the orbit directly.
    """
    t = tuple(sorted(t))
    if sum(t) != n or any(part < 2 for part in t):
        raise ValueError(f"{t} is not a derangement cycle type of degree {n}")
    f = factorial(n)
    if len(t) == 1:
        return factorial(n - 1) * f // 2
    if len(t) == 2 and t[0] != t[1]:
        return f * f // (4 * t[0] * t[1])
    if len(t) == 2 and n > 4:
        return factorial(n - 1) ** 2 // 2
    if all(part == 2 for part in t):
        m = n // 2
        return f * f // (factorial(m) * 2**n)
    return None


def rank2_census(table) -> list[dict]:
    """One row per rank-2 orbit: cycle type, class size, predicted and counted sizes, 2^c."""
    rows = []
    if table.n < 2:
        return rows
    for orb in table.rank(2):
        cls = derangement_class(orb.rep)
        rows.append(
            {
                "orbit": orb.name,
                "cycle_type": cls.cycle_type,
                "class_size": cls.class_size,
                "predicted_size": predicted_orbit_size(cls.cycle_type, table.n),
                "size": orb.size,
                "paths": 2**cls.cycle_count,
            }
        )
    return rows
