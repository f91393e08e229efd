"""Class names for the orbits of M(6,1): 0, P_sigma, A-D, I-VI, A'-D', P_sigma', J."""

from __future__ import annotations

from .algebra import bitkit

RANK2_NAMES = {(2, 4): "A", (6,): "B", (3, 3): "C", (2, 2, 2): "D"}
RANK3_ORDER = ("I", "II", "III", "IV", "V", "VI")


def label_orbits(table) -> None:
    """Attach class names at n = 6; other dimensions keep generic ids."""
    if table.n != 6:
        return
    from .hypergraph import classify_key
    from .rank2 import derangement_class

    full = bitkit(6).full
    fixed = {0: "0", 1: "P_sigma", 5: "P_sigma'", 6: "J"}
    for k, name in fixed.items():
        for o in table.rank(k):
            o.label = name
    for o in table.rank(2):
        o.label = RANK2_NAMES[derangement_class(o.rep).cycle_type]
    for o in table.rank(4):
        o.label = table.orbit_of(full & ~o.rep.key).label + "'"
    for o in table.rank(3):
        o.label = classify_key(o.rep.key)[0]


def label_sort_key(orbit) -> tuple:
    """Order orbits within a rank the way the class tables list them."""
    name = orbit.label or ""
    if orbit.rank == 3 and name in RANK3_ORDER:
        return (orbit.rank, RANK3_ORDER.index(name), name, orbit.id)
    return (orbit.rank, 0, name, orbit.id)
