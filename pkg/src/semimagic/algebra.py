"""Permutations, zero-one semi-magic squares and the symmetry group acting on them.

Conventions used throughout the package:

* permutations are stored in one-line notation with 1-based images;
* the permutation matrix of ``p`` has a one at ``(i, j)`` iff ``i = p(j)``,
  so reading the row index of the one in each column gives back ``p``;
* a square is packed row-major into one integer, entry ``(0, 0)`` being the
  most significant bit, so integer order is lexicographic order on matrices.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_N = 8


class DimensionError(ValueError):
    """Operands of different sizes, or a size outside what the encoding supports."""


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Read one-line notation: ``"2 1 3 4"`` or, for n <= 9, ``"2134"``."""
        tokens = text.split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        return cls(tuple(int(t) for t in tokens))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def from_cycle_string(cls, n: int, text: str) -> Permutation:
        """Parse cycle notation such as ``"(12)(3456)"`` (single-digit labels)
        or ``"(1 2)(3 4 5 6)"``."""
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            parts = body.split() if " " in body.strip() else list(body.strip())
            if parts:
                cycles.append([int(x) for x in parts])
        return cls.from_cycles(n, cycles)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition ``self ∘ other``: apply ``other`` first."""
        if other.n != self.n:
            raise DimensionError("permutations of different degree")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for j, i in enumerate(self.images, start=1):
            inv[i - 1] = j
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles including fixed points, each starting at its smallest element."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def one_line(self, sep: str = "") -> str:
        return sep.join(str(i) for i in self.images)

    def __str__(self) -> str:
        return self.one_line("" if self.n <= 9 else " ")


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Sorted cycle lengths of ``p``; fixed points count as 1s."""
    return tuple(sorted(len(c) for c in p.cycles()))


def all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


# ---------------------------------------------------------------------------
# bit layout


class BitKit:
    """Precomputed masks and generator moves on packed keys for one dimension."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_N:
            raise DimensionError(f"n must lie in 1..{MAX_N}, got {n}")
        self.n = n
        self.nn = n * n
        self.full = (1 << self.nn) - 1
        self.row_mask = (1 << n) - 1
        # cell[i][j] -> single-bit key for entry (i, j), 0-based
        self.cell = [[1 << (self.nn - 1 - (i * n + j)) for j in range(n)] for i in range(n)]
        self.row_shift = [(n - 1 - i) * n for i in range(n)]
        # column j occupies bit (n-1-j) of each row
        self.col_bits = [sum(1 << (self.row_shift[i] + n - 1 - j) for i in range(n)) for j in range(n)]
        # transpose via per-row lookup: row i with mask r contributes bits (j, i)
        self._tr = []
        for i in range(n):
            table = []
            for r in range(1 << n):
                v = 0
                for j in range(n):
                    if r >> (n - 1 - j) & 1:
                        v |= self.cell[j][i]
                table.append(v)
            self._tr.append(table)
        self.generators = self._make_generators(transpose=True)
        self.transpose_free_generators = self._make_generators(transpose=False)

    def _make_generators(self, transpose: bool):
        n = self.n
        gens = []
        for i in range(n - 1):
            # delta swap of rows i and i+1: lower row block sits at row_shift[i+1]
            m = self.row_mask << self.row_shift[i + 1]
            gens.append(lambda x, m=m, s=n: x ^ (t := ((x >> s) ^ x) & m) ^ (t << s))
        for j in range(n - 1):
            m = self.col_bits[j + 1]
            gens.append(lambda x, m=m: x ^ (t := ((x >> 1) ^ x) & m) ^ (t << 1))
        if transpose:
            gens.append(self.transpose)
        return gens

    def transpose(self, x: int) -> int:
        n, rm = self.n, self.row_mask
        v = 0
        for i in range(n):
            v |= self._tr[i][(x >> self.row_shift[i]) & rm]
        return v

    def rows(self, x: int) -> tuple[int, ...]:
        return tuple((x >> s) & self.row_mask for s in self.row_shift)

    def pack(self, rows: Sequence[int]) -> int:
        v = 0
        for r, s in zip(rows, self.row_shift):
            v |= r << s
        return v

    def columns(self, x: int) -> list[int]:
        """Per column, a mask over rows (bit i set iff entry (i, j) is 1)."""
        cols = [0] * self.n
        for i in range(self.n):
            r = (x >> self.row_shift[i]) & self.row_mask
            for j in range(self.n):
                if r >> (self.n - 1 - j) & 1:
                    cols[j] |= 1 << i
        return cols

    def perm_key(self, images: Sequence[int]) -> int:
        v = 0
        for j, i in enumerate(images):
            v |= self.cell[i - 1][j]
        return v

    def line_sum(self, x: int) -> int:
        return ((x >> self.row_shift[0]) & self.row_mask).bit_count() if self.n else 0


@lru_cache(maxsize=None)
def bitkit(n: int) -> BitKit:
    return BitKit(n)


# ---------------------------------------------------------------------------
# squares


@dataclass(frozen=True, slots=True)
class ZeroOneSquare:
    """An n×n zero-one matrix with all row and column sums equal.

    ``rows`` holds one width-``n`` mask per row, column 0 in the top bit.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise DimensionError(f"n must lie in 1..{MAX_N}, got {self.n}")
        if len(self.rows) != self.n or any(not 0 <= r < (1 << self.n) for r in self.rows):
            raise ValueError("rows do not describe an n×n zero-one matrix")
        sums = {r.bit_count() for r in self.rows}
        sums.update(c.bit_count() for c in bitkit(self.n).columns(self.key))
        if len(sums) != 1:
            raise ValueError("row and column sums are not all equal")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> ZeroOneSquare:
        n = len(entries)
        rows = []
        for line in entries:
            if len(line) != n or any(e not in (0, 1) for e in line):
                raise ValueError("expected a square array of 0/1 entries")
            rows.append(int("".join(str(e) for e in line), 2))
        return cls(n, tuple(rows))

    @classmethod
    def zero(cls, n: int) -> ZeroOneSquare:
        return cls(n, (0,) * n)

    @classmethod
    def ones(cls, n: int) -> ZeroOneSquare:
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def identity(cls, n: int) -> ZeroOneSquare:
        return perm_matrix(Permutation.identity(n))

    @property
    def key(self) -> int:
        return bitkit(self.n).pack(self.rows)

    @property
    def rank(self) -> int:
        return self.rows[0].bit_count()

    def entry(self, i: int, j: int) -> int:
        """Entry at 0-based position (i, j)."""
        return self.rows[i] >> (self.n - 1 - j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def transpose(self) -> ZeroOneSquare:
        return decode(bitkit(self.n).transpose(self.key), self.n)

    def __add__(self, other: ZeroOneSquare) -> ZeroOneSquare:
        _same_n(self, other)
        if self.key & other.key:
            raise ValueError("sum leaves the zero-one poset")
        return decode(self.key | other.key, self.n)

    def __sub__(self, other: ZeroOneSquare) -> ZeroOneSquare:
        _same_n(self, other)
        if other.key & ~self.key:
            raise ValueError("difference has negative entries")
        return decode(self.key & ~other.key, self.n)

    def __le__(self, other: ZeroOneSquare) -> bool:
        _same_n(self, other)
        return self.key & ~other.key == 0

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.to_lists())


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def encode(M: ZeroOneSquare) -> int:
    return M.key


def decode(key: int, n: int) -> ZeroOneSquare:
    kit = bitkit(n)
    if not 0 <= key <= kit.full:
        raise ValueError("key out of range for this dimension")
    return ZeroOneSquare(n, kit.rows(key))


def perm_matrix(p: Permutation) -> ZeroOneSquare:
    return decode(bitkit(p.n).perm_key(p.images), p.n)


def complement(M: ZeroOneSquare) -> ZeroOneSquare:
    return decode(bitkit(M.n).full & ~M.key, M.n)


def matmul(A: ZeroOneSquare, B: ZeroOneSquare) -> list[list[int]]:
    """Ordinary integer matrix product (the result need not be zero-one)."""
    _same_n(A, B)
    a, b = A.to_lists(), B.to_lists()
    n = A.n
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# the group R(σ)C(τ)T^ε


@dataclass(frozen=True, slots=True)
class GroupElement:
    """``R(row) C(col) T^transpose``, acting by ``M -> P_row M^(T?) P_col^-1``."""

    row: Permutation
    col: Permutation
    transpose: bool = False

    def __post_init__(self):
        if self.row.n != self.col.n:
            raise DimensionError("row and column permutations of different degree")

    @property
    def n(self) -> int:
        return self.row.n

    @classmethod
    def identity(cls, n: int) -> GroupElement:
        e = Permutation.identity(n)
        return cls(e, e, False)

    @classmethod
    def pure_transpose(cls, n: int) -> GroupElement:
        e = Permutation.identity(n)
        return cls(e, e, True)


def apply(g: GroupElement, M: ZeroOneSquare) -> ZeroOneSquare:
    if g.n != M.n:
        raise DimensionError(f"dimension mismatch: {g.n} vs {M.n}")
    n = M.n
    src = M.transpose() if g.transpose else M
    rows = [0] * n
    # row r moves to row σ(r); column c moves to column τ(c)
    for r in range(n):
        out = 0
        for c in range(n):
            if src.rows[r] >> (n - 1 - c) & 1:
                out |= 1 << (n - g.col.images[c])
        rows[g.row.images[r] - 1] = out
    return ZeroOneSquare(n, tuple(rows))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as ``g`` after ``h``."""
    if g.n != h.n:
        raise DimensionError(f"dimension mismatch: {g.n} vs {h.n}")
    if not g.transpose:
        return GroupElement(g.row * h.row, g.col * h.col, h.transpose)
    return GroupElement(g.row * h.col, g.col * h.row, not h.transpose)


def inverse(g: GroupElement) -> GroupElement:
    if not g.transpose:
        return GroupElement(g.row.inverse(), g.col.inverse(), False)
    return GroupElement(g.col.inverse(), g.row.inverse(), True)


def all_group_elements(n: int) -> Iterator[GroupElement]:
    perms = list(all_permutations(n))
    for eps in (False, True):
        for s in perms:
            for t in perms:
                yield GroupElement(s, t, eps)


def group_order(n: int) -> int:
    f = 1
    for i in range(2, n + 1):
        f *= i
    return 2 * f * f
