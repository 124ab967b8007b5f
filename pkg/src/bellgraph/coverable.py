"""t-coverable sets: subsets delta ^ N(omega) with |omega u delta| <= t.

These index the representative phase flips that weight-<=t Pauli errors
reduce to on a graph state. The empty set is always a member (omega = delta
= empty), and for t = 0 it is the only one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graphs import Graph, bits_of, neighborhood_of_set


@dataclass(frozen=True, eq=False)
class CoverableSet:
    n: int
    t: int
    members: frozenset[int]
    indicator: np.ndarray = field(repr=False)  # 0/1 per subset index, length 2^n

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def is_full(self) -> bool:
        """True when every subset is coverable; the Bell operator is then 1."""
        return self.count == 1 << self.n


def _subsets_of(support: int) -> list[int]:
    subs = [0]
    sub = support
    while sub:
        subs.append(sub)
        sub = (sub - 1) & support
    return subs


def coverable_set(g: Graph, t: int) -> CoverableSet:
    """All sets delta ^ N(omega) over pairs with |omega u delta| <= t.

    Enumerates every support U with |U| <= t and all pairs omega, delta
    inside U; duplicates collapse in the indicator array.
    """
    if not 0 <= t <= g.n:
        raise ValueError(f"t={t} outside 0..{g.n}")
    indicator = np.zeros(1 << g.n, dtype=np.int64)
    for size in range(t + 1):
        for support in combinations(range(g.n), size):
            u = bits_of(support)
            subs = _subsets_of(u)
            for omega in subs:
                nw = neighborhood_of_set(g, omega)
                for delta in subs:
                    indicator[delta ^ nw] = 1
    members = frozenset(int(i) for i in np.flatnonzero(indicator))
    return CoverableSet(g.n, t, members, indicator)
