"""Exact enumeration for the poset of zero-one semi-magic squares."""

from .algebra import (
    GroupElement,
    Permutation,
    ZeroOneSquare,
    apply,
    complement,
    compose,
    cycle_type,
    decode,
    encode,
    inverse,
    perm_matrix,
)
from .paths import (
    convolution_check,
    derangement_sum_check,
    latin_rectangle_count,
    latin_square_count,
    path_number,
    path_numbers,
)
from .poset import (
    OrbitRecord,
    RankTable,
    build_rank_tables,
    canonical_rep,
    covering_profile,
    down_matchings,
    orbit_closure,
    stabilizer_order,
    up_matchings,
)

__version__ = "0.1.0"
