import numpy as np
import pytest

from bellgraph.families import complete, ring, star, star_copies, complete_join
from bellgraph.graph6 import Graph6Error, emit_graph6, iter_graph6_file, parse_graph6
from bellgraph.graphs import Graph
from oracles import random_graph

# fixed against an independent encoder before the package was written
GOLDEN = [
    ("A_", complete(2)),
    ("B_", Graph.from_edges(3, [(0, 1)])),
    ("Bg", Graph.from_edges(3, [(0, 1), (1, 2)])),
    ("Bw", complete(3)),
    ("Bo", star(3)),
    ("B?", Graph(3, (0, 0, 0))),
    ("C~", complete(4)),
    ("Cs", star(4)),
    ("Ch", Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])),
    ("Dhc", ring(5)),
    ("EoCO", star_copies(2)),
    ("EwCW", complete_join(3, 3)),
]


@pytest.mark.parametrize("text,graph", GOLDEN, ids=[t for t, _ in GOLDEN])
def test_golden_records(text, graph):
    assert parse_graph6(text) == graph
    assert emit_graph6(graph) == text


def test_roundtrip_reference_census(census5_path):
    with open(census5_path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    assert len(lines) == 34
    for line in lines:
        assert emit_graph6(parse_graph6(line)) == line


def test_roundtrip_random_graphs():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 17))
        g = random_graph(rng, n)
        assert parse_graph6(emit_graph6(g)) == g


def test_parse_empty_is_error():
    with pytest.raises(Graph6Error):
        parse_graph6("")


def test_parse_bad_byte_names_offset():
    with pytest.raises(Graph6Error) as err:
        parse_graph6("B" + chr(20))
    assert err.value.offset == 1


def test_parse_wrong_length():
    with pytest.raises(Graph6Error):
        parse_graph6("B")  # n=3 needs one data byte
    with pytest.raises(Graph6Error):
        parse_graph6("Bww")


def test_parse_oversized_vertex_count():
    with pytest.raises(Graph6Error) as err:
        parse_graph6(chr(63 + 17))
    assert "17" in str(err.value)


def test_parse_nonzero_padding():
    # n=3 uses 3 of 6 bits; set a padding bit
    with pytest.raises(Graph6Error):
        parse_graph6("B" + chr(63 + 0b000001))


def test_file_iteration(tmp_path):
    path = tmp_path / "mini.g6"
    path.write_text("Bw\nBo\n\nDhc\n")
    graphs = [g for _, g in iter_graph6_file(str(path))]
    assert graphs == [complete(3), star(3), ring(5)]


def test_file_strict_raises_with_line_number(tmp_path):
    path = tmp_path / "bad.g6"
    path.write_text("Bw\nB\n")
    with pytest.raises(Graph6Error) as err:
        list(iter_graph6_file(str(path)))
    assert "line 2" in str(err.value)


def test_file_lenient_yields_errors(tmp_path):
    path = tmp_path / "bad.g6"
    path.write_text("Bw\nB\nBo\n")
    items = list(iter_graph6_file(str(path), lenient=True))
    assert isinstance(items[1][1], Graph6Error)
    assert items[0][1] == complete(3) and items[2][1] == star(3)
