"""Bell operator coefficients in the stabilizer basis and exact LHV bounds.

For a graph g and error weight t the Bell operator expands as

    B_t = (1/2^n) * sum_S k[S] * G_S,      k[S] = sum_{C coverable} (-1)^|C & S|

so k is the (unnormalized) Walsh-Hadamard transform of the coverable-set
indicator. A local-hidden-variable assignment gives each site's X and Y
observables independent signs (Z observables are fixed to +1; flipping signs
around any vertex shows the maximum is unchanged, and `lhv_bound_full`
re-checks that reduction by brute force). Writing each stabilizer element as
sign(S) times its letter string with X letters on S_X, Y letters on S_Y, the
assignment value is

    (1/2^n) * sum_S k[S] sign(S) (-1)^(|S_X & x_neg| + |S_Y & y_neg|)

The maximum over all 4^n assignments is computed either by direct
per-assignment evaluation or by one more Walsh-Hadamard transform over the
2n sign variables; the two engines agree entry for entry.

All LHV values are integers over 2^n and are returned as exact `Dyadic`s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .coverable import coverable_set
from .dyadic import Dyadic
from .graphs import Graph

TRANSFORM_MAX_N = 12  # 4^12 table entries; beyond this use the direct engine


class EngineCapError(MemoryError):
    """Transform table would exceed the memory cap; fall back to engine='direct'."""


def fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform over subset-parity characters."""
    size = a.shape[0]
    h = 1
    while h < size:
        b = a.reshape(-1, 2, h)
        x = b[:, 0, :].copy()
        y = b[:, 1, :]
        b[:, 0, :] = x + y
        b[:, 1, :] = x - y
        h *= 2
    return a


@dataclass(frozen=True, eq=False)
class StabilizerTable:
    """Per-subset data for all 2^n stabilizer elements of one graph."""

    n: int
    nbhd: np.ndarray   # z support of G_S, indexed by S
    signs: np.ndarray  # +-1 letter-string sign of G_S
    sx: np.ndarray     # X-letter support: S minus nbhd
    sy: np.ndarray     # Y-letter support: S & nbhd


@lru_cache(maxsize=512)
def stabilizer_table(g: Graph) -> StabilizerTable:
    """Signs and letter supports of every stabilizer element, by recurrence.

    Splitting off the highest vertex v of S gives G_S = G_{S-v} * G_v, which
    adds 2 to the phase exactly when v lies in the set-neighborhood of S-v.
    Cross-checked in the tests against per-element products in `pauli`.
    """
    n = g.n
    size = 1 << n
    nbhd = np.zeros(size, dtype=np.int64)
    half_phase = np.zeros(size, dtype=np.int64)  # phase/2 mod 2
    nb = nbhd  # local alias
    adj = g.adj
    for s in range(1, size):
        v = s.bit_length() - 1
        rest = s ^ (1 << v)
        nb_rest = int(nb[rest])
        half_phase[s] = half_phase[rest] ^ (nb_rest >> v & 1)
        nb[s] = nb_rest ^ adj[v]
    subsets = np.arange(size, dtype=np.int64)
    sy = subsets & nbhd
    # sign = i^phase * (-1)^(y_count/2); y counts are even (handshake)
    y_half = np.bitwise_count(sy).astype(np.int64) >> 1
    signs = np.where((half_phase ^ y_half) & 1, -1, 1).astype(np.int64)
    return StabilizerTable(n, nbhd, signs, subsets & ~nbhd, sy)


@dataclass(frozen=True, eq=False)
class BellCoefficients:
    """Integer table k with B_t = (1/2^n) sum_S k[S] G_S."""

    n: int
    t: int
    k: np.ndarray = field(repr=False)

    @property
    def coverable_count(self) -> int:
        return int(self.k[0])


def bell_coefficients(g: Graph, t: int) -> BellCoefficients:
    """Transform the coverable indicator into stabilizer-basis coefficients."""
    cov = coverable_set(g, t)
    k = fwht_inplace(cov.indicator.copy())
    return BellCoefficients(g.n, t, k)


@dataclass(frozen=True)
class LhvAssignment:
    """Sites whose X (resp. Y) observable is assigned -1; Z is +1 throughout.

    z_neg is only ever nonzero in results of the unreduced brute-force bound.
    """

    x_neg: int
    y_neg: int
    z_neg: int = 0


@dataclass(frozen=True)
class LhvResult:
    bound: Dyadic
    argmax: LhvAssignment
    valid: bool  # bound < 1: the inequality exists and is violated


def _weights(g: Graph, bc: BellCoefficients) -> np.ndarray:
    table = stabilizer_table(g)
    return bc.k * table.signs


def lhv_value(g: Graph, bc: BellCoefficients, a: LhvAssignment) -> Dyadic:
    """Value of the Bell operator under one sign assignment, exactly."""
    table = stabilizer_table(g)
    parity = np.bitwise_count(table.sx & a.x_neg) + np.bitwise_count(table.sy & a.y_neg)
    if a.z_neg:
        sz = table.nbhd & ~np.arange(1 << g.n, dtype=np.int64)
        parity = parity + np.bitwise_count(sz & a.z_neg)
    terms = _weights(g, bc) * np.where(parity & 1, -1, 1)
    return Dyadic(int(terms.sum()), g.n)


def _table_transform(w: np.ndarray, table: StabilizerTable) -> np.ndarray:
    n = table.n
    h = np.zeros(1 << (2 * n), dtype=np.int64)
    # (sx, sy) determines S, so plain assignment scatters without collisions
    h[(table.sx << n) | table.sy] = w
    return fwht_inplace(h)


def _table_direct(w: np.ndarray, table: StabilizerTable) -> np.ndarray:
    n = table.n
    size = 1 << n
    out = np.empty(1 << (2 * n), dtype=np.int64)
    sx, sy = table.sx, table.sy
    for x_neg in range(size):
        wx = np.where(np.bitwise_count(sx & x_neg) & 1, -w, w)
        base = x_neg << n
        for y_neg in range(size):
            sgn = np.bitwise_count(sy & y_neg) & 1
            out[base | y_neg] = np.where(sgn, -wx, wx).sum()
    return out


def _bound_direct(w: np.ndarray, table: StabilizerTable) -> tuple[int, int]:
    """Streaming per-assignment max; no 4^n table, so any n the type allows."""
    n = table.n
    size = 1 << n
    sx, sy = table.sx, table.sy
    best = None
    best_idx = 0
    for x_neg in range(size):
        wx = np.where(np.bitwise_count(sx & x_neg) & 1, -w, w)
        base = x_neg << n
        for y_neg in range(size):
            sgn = np.bitwise_count(sy & y_neg) & 1
            val = int(np.where(sgn, -wx, wx).sum())
            if best is None or val > best:
                best = val
                best_idx = base | y_neg
    return best, best_idx


def lhv_value_table(
    g: Graph, t: int, engine: str = "auto", transform_max_n: int = TRANSFORM_MAX_N
) -> np.ndarray:
    """Numerators of all 4^n assignment values, indexed (x_neg << n) | y_neg."""
    bc = bell_coefficients(g, t)
    table = stabilizer_table(g)
    w = bc.k * table.signs
    if engine == "auto":
        engine = "transform" if g.n <= transform_max_n else "direct"
    if engine == "transform":
        if g.n > transform_max_n:
            raise EngineCapError(
                f"transform table needs 4^{g.n} entries (cap n={transform_max_n}); "
                "use engine='direct'"
            )
        return _table_transform(w, table)
    if engine == "direct":
        return _table_direct(w, table)
    raise ValueError(f"unknown engine {engine!r}")


def _result_from_table(values: np.ndarray, n: int, full: bool = False) -> LhvResult:
    best = int(values.max())
    idx = int(values.argmax())  # first maximum = lexicographically least assignment
    mask = (1 << n) - 1
    if full:
        argmax = LhvAssignment(idx >> 2 * n, (idx >> n) & mask, idx & mask)
    else:
        argmax = LhvAssignment(idx >> n, idx & mask)
    bound = Dyadic(best, n)
    return LhvResult(bound, argmax, bound < 1)


def lhv_bound(
    g: Graph, t: int, engine: str = "auto", transform_max_n: int = TRANSFORM_MAX_N
) -> LhvResult:
    """Exact LHV bound: maximum assignment value, with its first attainer."""
    if engine == "direct":
        bc = bell_coefficients(g, t)
        table = stabilizer_table(g)
        best, idx = _bound_direct(bc.k * table.signs, table)
        mask = (1 << g.n) - 1
        bound = Dyadic(best, g.n)
        return LhvResult(bound, LhvAssignment(idx >> g.n, idx & mask), bound < 1)
    values = lhv_value_table(g, t, engine=engine, transform_max_n=transform_max_n)
    return _result_from_table(values, g.n)


def lhv_bound_full(g: Graph, t: int) -> LhvResult:
    """Unreduced oracle over independent X, Y and Z signs (8^n assignments).

    Exists to validate the Z=+1 reduction; n is capped at 6.
    """
    if g.n > 6:
        raise ValueError(f"full assignment scan is 8^n; n={g.n} exceeds 6")
    n = g.n
    bc = bell_coefficients(g, t)
    table = stabilizer_table(g)
    w = bc.k * table.signs
    sz = table.nbhd & ~np.arange(1 << n, dtype=np.int64)
    h = np.zeros(1 << (3 * n), dtype=np.int64)
    h[(table.sx << 2 * n) | (table.sy << n) | sz] = w
    values = fwht_inplace(h)
    return _result_from_table(values, n, full=True)


def family_oracle_star_copies(m: int, t: int) -> Dyadic:
    """Closed-form LHV bounds for disjoint unions of m three-vertex stars.

    t=1:    (3+m) * 3^(m-1) / 4^m   (equals 1 at m=1, where no inequality exists)
    t=m-1:  1 - 4^(-m)
    The two rules agree at m=2 (both 15/16).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if t == 1:
        return Dyadic((3 + m) * 3 ** (m - 1), 2 * m)
    if t == m - 1:
        return Dyadic(4**m - 1, 2 * m)
    raise ValueError(f"no closed form for m={m}, t={t}")


def family_oracle_complete(n: int, t: int) -> Dyadic:
    """Complete graphs admit no error-tolerating inequality: bound 1 for t >= 1."""
    if t < 1:
        raise ValueError("closed form covers t >= 1 only")
    if n < 2:
        raise ValueError("need at least 2 vertices")
    return Dyadic(1)


def identity_table(n: int) -> np.ndarray:
    """Coefficient table of the identity operator on n qubits."""
    k = np.zeros(1 << n, dtype=np.int64)
    k[0] = 1 << n
    return k


def tensor_tables(low: np.ndarray, high: np.ndarray) -> np.ndarray:
    """Coefficient table of A (x) B on the disjoint union of their graphs.

    `low` lives on the low vertex block, `high` on the block above it;
    stabilizer elements of a disjoint union factor, so tables combine by
    outer product.
    """
    return np.kron(high, low)
