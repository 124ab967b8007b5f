"""graph6 records: the compact ASCII encoding used by graph census files.

A record for a graph on n <= 62 vertices is the byte n+63 followed by the
upper triangle of the adjacency matrix read column by column (pair order
(0,1),(0,2),(1,2),(0,3),...), packed big-endian into 6-bit groups, padded
with zero bits, each group offset by 63. This module only accepts n <= 16.

Census files are plain text, one record per line; no headers, no comments.
"""
from __future__ import annotations

from typing import Iterator

from .graphs import MAX_VERTICES, Graph


class Graph6Error(ValueError):
    """Malformed graph6 record; `offset` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def triangle_pairs(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs (i, j), i < j, in graph6 bit order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 record into a Graph."""
    if not line:
        raise Graph6Error("empty record", 0)
    for off, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)!r} outside graph6 range 63..126", off)
    n = ord(line[0]) - 63
    if n == 63:
        # 126 introduces the multi-byte vertex-count form, always > 62 here
        raise Graph6Error("extended vertex-count form exceeds 16 vertices", 0)
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds {MAX_VERTICES}", 0)
    if n < 1:
        raise Graph6Error(f"vertex count {n} below 1", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(line) - 1 != nbytes:
        raise Graph6Error(
            f"record for n={n} needs {nbytes} data bytes, found {len(line) - 1}",
            min(len(line), 1 + nbytes),
        )
    rows = [0] * n
    pairs = triangle_pairs(n)
    for idx, (i, j) in enumerate(pairs):
        byte = ord(line[1 + idx // 6]) - 63
        if byte >> (5 - idx % 6) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    # padding bits beyond the triangle must be zero
    tail = ord(line[-1]) - 63 if nbytes else 0
    pad = 6 * nbytes - nbits
    if pad and tail & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(line) - 1)
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    """Encode a Graph as one graph6 record."""
    out = [chr(g.n + 63)]
    acc = 0
    filled = 0
    for i, j in triangle_pairs(g.n):
        acc = acc << 1 | (g.adj[i] >> j & 1)
        filled += 1
        if filled == 6:
            out.append(chr(acc + 63))
            acc, filled = 0, 0
    if filled:
        out.append(chr((acc << (6 - filled)) + 63))
    return "".join(out)


def iter_graph6_file(path: str, lenient: bool = False) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Yield (line_number, Graph) per record; malformed lines raise unless lenient.

    Under lenient=True malformed lines yield (line_number, Graph6Error)
    instead of raising, so callers can count and skip them.
    """
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            try:
                yield lineno, parse_graph6(line)
            except Graph6Error as err:
                if lenient:
                    yield lineno, err
                else:
                    raise Graph6Error(f"line {lineno}: {err.args[0]}", err.offset) from None
