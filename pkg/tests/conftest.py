import random
from math import factorial

import pytest

from semimagic.algebra import GroupElement, Permutation, ZeroOneSquare, bitkit, decode
from semimagic.poset import build_rank_tables, iter_matchings

_TABLES = {}


def table_for(n):
    if n not in _TABLES:
        _TABLES[n] = build_rank_tables(n)
    return _TABLES[n]


@pytest.fixture(scope="session")
def tables():
    return table_for


@pytest.fixture(scope="session")
def t6():
    return table_for(6)


def random_perm(rng, n):
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_group_element(rng, n):
    return GroupElement(random_perm(rng, n), random_perm(rng, n), rng.random() < 0.5)


def random_square(rng, n, k=None):
    """Random element of M(n,1) of rank k, grown by random covers from zero."""
    kit = bitkit(n)
    if k is None:
        k = rng.randint(0, n)
    key = 0
    for _ in range(k):
        ups = [pkey for _, pkey in iter_matchings(kit.full & ~key, kit)]
        key |= rng.choice(ups)
    return decode(key, n)


def all_squares(n):
    """Every element of M(n,1) by brute force over row masks (n <= 5)."""
    out = []
    for k in range(n + 1):
        rows = [r for r in range(1 << n) if r.bit_count() == k]

        def rec(i, chosen, colsum):
            if i == n:
                out.append(ZeroOneSquare(n, tuple(chosen)))
                return
            for r in rows:
                new = [colsum[j] + (r >> (n - 1 - j) & 1) for j in range(n)]
                if max(new) <= k:
                    rec(i + 1, chosen + [r], new)

        rec(0, [], [0] * n)
    return out


def brute_latin_rectangles(k, n, fix_first_row=False):
    """Backtracking count of k x n Latin rectangles, cell by cell."""
    if k == 0:
        return 1
    grid = [[0] * n for _ in range(k)]
    col_used = [set() for _ in range(n)]
    row_used = [set() for _ in range(k)]
    start = 0
    if fix_first_row:
        for c in range(n):
            grid[0][c] = c + 1
            col_used[c].add(c + 1)
            row_used[0].add(c + 1)
        start = n

    def rec(pos):
        if pos == k * n:
            return 1
        r, c = divmod(pos, n)
        total = 0
        for s in range(1, n + 1):
            if s in col_used[c] or s in row_used[r]:
                continue
            col_used[c].add(s)
            row_used[r].add(s)
            total += rec(pos + 1)
            col_used[c].discard(s)
            row_used[r].discard(s)
        return total

    count = rec(start)
    return count * factorial(n) if fix_first_row else count


def derangements(n):
    d = [1, 0]
    for m in range(2, n + 1):
        d.append((m - 1) * (d[-1] + d[-2]))
    return d[n]


@pytest.fixture
def rng():
    return random.Random(20261014)


# one PASS/FAIL line per acceptance criterion at the end of the run
_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        prev = _ACCEPTANCE.get(marker, "PASS")
        _ACCEPTANCE[marker] = "PASS" if prev == "PASS" and report.passed else "FAIL"


def pytest_runtest_setup(item):
    m = item.get_closest_marker("acceptance")
    if m:
        item.user_properties.append(("criterion", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:2d}: {_ACCEPTANCE[num]}")
