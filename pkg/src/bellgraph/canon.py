"""Canonical labeling and local-complementation orbits.

The canonical form of a graph is the lexicographically greatest adjacency
bit string reachable by relabeling, where the bit string lists the upper
triangle in graph6 pair order ((0,1),(0,2),(1,2),(0,3),...). It is found by
placing vertices one at a time and keeping, at every step, only candidates
whose adjacency row against the already-placed prefix is maximal. Two
refinements keep the search tree small without changing the result:

  * among row-tied candidates only those of maximal degree are kept (an
    isomorphism-invariant filter, so the resulting code is still canonical);
  * of any two row-tied candidates u, v with N(u)-{v} == N(v)-{u} (twins,
    i.e. the transposition (u v) is an automorphism) only one is explored,
    since both subtrees realize identical codes.

Equal codes hold iff the graphs are isomorphic: the code fully determines
the relabeled graph.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph


class OrbitCapExceeded(RuntimeError):
    """Local-complementation orbit grew past the configured size bound."""


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Relabeling-invariant fingerprint: vertex count plus edge-bit code."""

    n: int
    code: int

    def to_graph(self) -> Graph:
        """Rebuild the canonically labeled graph from the code."""
        rows = [0] * self.n
        nbits = self.n * (self.n - 1) // 2
        idx = nbits - 1
        for j in range(1, self.n):
            for i in range(j):
                if self.code >> idx & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                idx -= 1
        return Graph(self.n, tuple(rows))

    def to_graph6(self) -> str:
        from .graph6 import emit_graph6

        return emit_graph6(self.to_graph())


def _are_twins(adj: tuple[int, ...], u: int, v: int) -> bool:
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


def canonicalize(g: Graph) -> CanonicalForm:
    """Canonical form, constant on isomorphism classes."""
    n = g.n
    adj = g.adj
    if n == 1:
        return CanonicalForm(1, 0)
    nbits = n * (n - 1) // 2
    deg = [adj[v].bit_count() for v in range(n)]
    best_code = -1

    # placed vertices, their count k, and the code over the first tri(k) bits
    def place(placed: list[int], placed_mask: int, code: int):
        nonlocal best_code
        k = len(placed)
        if k == n:
            if code > best_code:
                best_code = code
            return
        rows = []
        best_row = -1
        for v in range(n):
            if placed_mask >> v & 1:
                continue
            row = 0
            for p in placed:
                row = row << 1 | (adj[v] >> p & 1)
            if row > best_row:
                best_row = row
            rows.append((v, row))
        cands = [v for v, row in rows if row == best_row]
        top = max(deg[v] for v in cands)
        cands = [v for v in cands if deg[v] == top]
        reps = []
        for v in cands:
            if not any(_are_twins(adj, u, v) for u in reps):
                reps.append(v)
        code = code << k | best_row
        bits_done = (k + 1) * k // 2
        if best_code >= 0 and code < best_code >> (nbits - bits_done):
            return  # every completion is dominated by the best code found
        for v in reps:
            placed.append(v)
            place(placed, placed_mask | 1 << v, code)
            placed.pop()

    place([], 0, 0)
    return CanonicalForm(n, best_code)


def lc_orbit(g: Graph, max_size: int = 10**6) -> frozenset[CanonicalForm]:
    """Closure of g under local complementation, as canonical forms.

    Breadth-first over isomorphism classes: complementing at every vertex of
    one representative per class reaches every neighboring class, so the
    closure over canonical forms is complete. min() of the result is the
    deterministic orbit representative.
    """
    from .graphs import local_complement

    start = canonicalize(g)
    seen: dict[CanonicalForm, Graph] = {start: start.to_graph()}
    frontier = [start]
    while frontier:
        nxt = []
        for form in frontier:
            h = seen[form]
            for a in range(h.n):
                cand = canonicalize(local_complement(h, a))
                if cand not in seen:
                    if len(seen) >= max_size:
                        raise OrbitCapExceeded(
                            f"orbit exceeds {max_size} isomorphism classes"
                        )
                    seen[cand] = cand.to_graph()
                    nxt.append(cand)
        frontier = nxt
    return frozenset(seen)
