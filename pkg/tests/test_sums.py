import random
from math import factorial

import pytest

from conftest import random_perm, random_square
from semimagic.algebra import Permutation, ZeroOneSquare, bitkit, perm_matrix
from semimagic.paths import path_numbers
from semimagic.poset import down_matchings, iter_matchings
from semimagic.sums import (
    LatinRectangle,
    count_distinct_sums,
    distinct_sum_check,
    distinct_sum_counts,
    distinct_sums,
    path_to_rectangle,
    rectangle_matrix,
    rectangle_to_path,
    sum_convolution_check,
    validate_rectangle,
)

FOUR_RECTANGLES = """\
1 2 3 4
2 1 4 3
4 3 2 1

1 2 3 4
2 3 4 1
4 1 2 3

1 2 4 3
2 1 3 4
4 3 2 1

1 3 2 4
2 1 4 3
4 2 3 1"""


def J_minus(cycles, n):
    return ZeroOneSquare.ones(n) - perm_matrix(Permutation.from_cycle_string(n, cycles))


def brute_distinct_sums(M):
    """Sets of permutation matrices summing to M, found from ordered decompositions."""
    kit = bitkit(M.n)
    found = set()

    def rec(key, chosen):
        if key == 0:
            found.add(frozenset(chosen))
            return
        for images, pkey in iter_matchings(key, kit):
            rec(key ^ pkey, chosen + [images])

    rec(M.key, [])
    return found


def test_four_rectangles_byte_exact():
    sums = distinct_sums(J_minus("(13)(24)", 4))
    text = "\n\n".join(str(s.rectangle()) for s in sums)
    assert text == FOUR_RECTANGLES


def test_sum_sets_partition_the_square(rng):
    for n in (4, 5):
        for k in range(n + 1):
            M = random_square(rng, n, k)
            for s in distinct_sums(M):
                assert len(s.perms) == k
                if k:
                    assert s.total() == M
                    assert validate_rectangle(s.rectangle())


@pytest.mark.parametrize("n", [3, 4])
def test_distinct_sums_against_brute_force(tables, n):
    for o in tables(n).orbits:
        sets = distinct_sums(o.rep)
        expected = brute_distinct_sums(o.rep)
        assert {frozenset(p.images for p in s.perms) for s in sets} == expected
        assert len(sets) == len(expected)


def test_known_counts():
    assert count_distinct_sums(J_minus("(13)(24)", 4)) == 4
    assert count_distinct_sums(ZeroOneSquare.ones(4)) == 24
    assert count_distinct_sums(ZeroOneSquare.ones(5)) == 1344
    assert count_distinct_sums(ZeroOneSquare.zero(3)) == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_paths_equal_factorial_times_sums(tables, n):
    t = tables(n)
    for o in t.orbits:
        r = distinct_sum_check(o, t)
        assert r.holds, r.line()


def test_paths_equal_factorial_times_sums_n6_low_ranks(t6):
    v = path_numbers(t6)
    counts = distinct_sum_counts(t6)
    for o in t6.orbits:
        assert v[o.id] == factorial(o.rank) * counts[o.id]
        if o.rank <= 3:
            r = distinct_sum_check(o, t6, samples=2)
            assert r.holds, r.line()


def test_count_with_and_without_table(tables, rng):
    t = tables(5)
    for k in range(6):
        M = random_square(rng, 5, k)
        assert count_distinct_sums(M, t) == count_distinct_sums(M)
    with pytest.raises(ValueError):
        count_distinct_sums(ZeroOneSquare.identity(4), t)


def test_rectangle_round_trip_random_chains(rng):
    n = 4
    kit = bitkit(n)
    for _ in range(1000):
        k = rng.randint(1, n)
        key, path = 0, []
        for _ in range(k):
            images, pkey = rng.choice(list(iter_matchings(kit.full & ~key, kit)))
            key |= pkey
            path.append(Permutation(images))
        L = path_to_rectangle(path)
        assert validate_rectangle(L)
        assert rectangle_to_path(L) == path
        assert rectangle_matrix(L).key == key


def test_rectangle_validation():
    assert not validate_rectangle(LatinRectangle.from_lists([[1, 2, 3], [1, 3, 2]]))
    assert not validate_rectangle(LatinRectangle.from_lists([[1, 1, 3]]))
    with pytest.raises(ValueError):
        rectangle_to_path(LatinRectangle.from_lists([[1, 2], [1, 2]]))
    with pytest.raises(ValueError):
        path_to_rectangle([Permutation.identity(3), Permutation.identity(3)])
    with pytest.raises(ValueError):
        path_to_rectangle([])


def test_count_is_constant_on_orbits(tables):
    t = tables(5)
    rng = random.Random(5)
    from semimagic.algebra import GroupElement, apply

    for o in t.orbits:
        c = count_distinct_sums(o.rep)
        for _ in range(3):
            g = GroupElement(random_perm(rng, 5), random_perm(rng, 5), rng.random() < 0.5)
            assert count_distinct_sums(apply(g, o.rep)) == c


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_sum_convolution(tables, n):
    for k in range(n + 1):
        r = sum_convolution_check(n, k, tables(n))
        assert r.holds, r.line()


def test_sum_convolution_n4_rank2(tables):
    r = sum_convolution_check(4, 2, tables(4))
    assert r.lhs == r.rhs == 576
    assert r.terms == [(18, 2, 2), (72, 1, 1)]


def test_down_matchings_feed_every_sum():
    M = J_minus("(13)(24)", 4)
    allowed = {p.images for p in down_matchings(M)}
    for s in distinct_sums(M):
        assert {p.images for p in s.perms} <= allowed


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_sums_of_J_times_factorial(tables, n):
    from semimagic.paths import latin_square_count

    assert count_distinct_sums(ZeroOneSquare.ones(n), tables(n)) * factorial(n) == latin_square_count(n, tables(n))
