import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_square
from semimagic.algebra import ZeroOneSquare, complement
from semimagic.hypergraph import (
    REFERENCE_RANK3,
    ClassificationError,
    Hypergraph,
    automorphism_order,
    classify_rank3_n6,
    equivalent,
    fingerprint,
    hypergraph_class,
    hypergraph_pair,
    pair_degrees,
    reference_fingerprints,
    reference_matrix,
    square_fingerprints,
    stabilizer_split,
    to_dot,
)

RANK3_SIZES = {"I": 86400, "II": 129600, "III": 16200, "IV": 43200, "V": 200, "VI": 21600}
STABILIZERS = {"I": 12, "II": 8, "III": 64, "IV": 24, "V": 5184, "VI": 48}


def test_incidence_round_trip():
    M = reference_matrix("IV")
    H, Hd = hypergraph_pair(M)
    assert H.incidence() == M.to_lists()
    assert Hd == H.dual()
    assert H.dual().dual() == H
    assert H.semi_magic_rank() == 3


def test_semi_magic_rank_rejects_irregular():
    H = Hypergraph(3, (frozenset({1, 2}), frozenset({1, 3}), frozenset({1})))
    assert H.semi_magic_rank() is None
    with pytest.raises(ValueError):
        Hypergraph(2, (frozenset({3}),))


def test_complement_and_dual_commute():
    rng = random.Random(3)
    for k in range(7):
        M = random_square(rng, 6, k)
        H, _ = hypergraph_pair(M)
        assert H.complement().dual() == H.dual().complement()
        assert H.complement() == hypergraph_pair(complement(M))[0]


def test_pair_degrees_example():
    H, _ = hypergraph_pair(reference_matrix("V"))
    d = pair_degrees(H)
    assert [d[i][i] for i in range(6)] == [3] * 6
    assert d[0][1] == 3 and d[0][3] == 0
    fp = fingerprint(H)
    assert fp.triple_edge_count == 6


def test_references_have_distinct_fingerprints():
    assert len(reference_fingerprints()) == len(REFERENCE_RANK3) == 7
    for label in REFERENCE_RANK3:
        assert reference_matrix(label).rank == 3


def test_reference_classes_and_stabilizers():
    for label, rows in REFERENCE_RANK3.items():
        M = reference_matrix(label)
        orbit, side = classify_rank3_n6(M)
        assert side == label
        assert orbit == label.rstrip("ab")
        aut, index = stabilizer_split(M)
        assert aut * index == STABILIZERS[orbit]


def test_only_class_one_is_chiral():
    Ha, _ = hypergraph_pair(reference_matrix("Ia"))
    Hb, _ = hypergraph_pair(reference_matrix("Ib"))
    assert not equivalent(Ha, Hb)
    assert hypergraph_class(Ha.dual()) == "Ib"
    for label in ("II", "III", "IV", "V", "VI"):
        H, Hd = hypergraph_pair(reference_matrix(label))
        assert equivalent(H, Hd)


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(1, 7)), st.permutations(range(6)), st.sampled_from(sorted(REFERENCE_RANK3)))
def test_fingerprint_invariant_under_relabeling(vmap, eorder, label):
    H, _ = hypergraph_pair(reference_matrix(label))
    G = H.relabel(list(vmap), list(eorder))
    assert fingerprint(G) == fingerprint(H)
    assert hypergraph_class(G) == label


def test_relabeled_copies_are_equivalent(rng):
    for label in REFERENCE_RANK3:
        H, _ = hypergraph_pair(reference_matrix(label))
        vmap = rng.sample(range(1, 7), 6)
        G = H.relabel(vmap, rng.sample(range(6), 6))
        assert equivalent(H, G)


def test_square_fingerprints_agree_with_generic(rng):
    for _ in range(20):
        M = random_square(rng, 6, 3)
        H, Hd = hypergraph_pair(M)
        assert square_fingerprints(M.key, 6) == (fingerprint(H), fingerprint(Hd))


def test_complement_of_class_two():
    M = complement(reference_matrix("II"))
    assert M.rank == 3
    orbit, _ = classify_rank3_n6(M)
    assert orbit in RANK3_SIZES


def test_classify_rejects_other_shapes():
    with pytest.raises(ValueError):
        classify_rank3_n6(ZeroOneSquare.identity(6))
    H = Hypergraph(6, tuple(frozenset({1, 2}) for _ in range(6)))
    with pytest.raises(ClassificationError):
        hypergraph_class(H)


def test_automorphisms_of_identity():
    H, _ = hypergraph_pair(ZeroOneSquare.identity(4))
    assert automorphism_order(H) == 24
    assert stabilizer_split(ZeroOneSquare.identity(4)) == (24, 2)


def test_equivalent_needs_same_vertex_count():
    a, _ = hypergraph_pair(ZeroOneSquare.identity(3))
    b, _ = hypergraph_pair(ZeroOneSquare.identity(4))
    with pytest.raises(ValueError):
        equivalent(a, b)


def test_dot_export():
    H, _ = hypergraph_pair(reference_matrix("V"))
    text = to_dot(H)
    assert text.startswith("graph H {")
    assert text.count(" -- ") == 6


def test_orbit_label_stable_under_translates(rng):
    from conftest import random_group_element
    from semimagic.algebra import apply

    for label in ("Ia", "II", "III", "IV", "V", "VI"):
        M = reference_matrix(label)
        fps = sorted(square_fingerprints(M.key, 6), key=repr)
        orbit, _ = classify_rank3_n6(M)
        for _ in range(100):
            N = apply(random_group_element(rng, 6), M)
            assert sorted(square_fingerprints(N.key, 6), key=repr) == fps
            assert classify_rank3_n6(N)[0] == orbit


def test_complement_flips_semi_magic_rank(rng):
    for n in (4, 5, 6):
        for k in range(n + 1):
            H, _ = hypergraph_pair(random_square(rng, n, k))
            assert H.semi_magic_rank() == k
            assert H.complement().semi_magic_rank() == n - k
