"""Edge-list and graph6 serialization."""
import pytest
from hypothesis import given

from balpart.families import complete, cycle, i7c5, path
from balpart.io import (GraphFormatError, from_edge_list, from_graph6,
                        read_graph, to_edge_list, to_graph6, write_graph)
from tests.test_graphs import graphs


def test_edge_list_round_trip():
    g = i7c5()
    assert from_edge_list(to_edge_list(g)) == g


def test_edge_list_byte_stable():
    g = cycle(5)
    assert to_edge_list(g) == "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n"


def test_edge_list_errors_name_lines():
    with pytest.raises(GraphFormatError, match="line 1"):
        from_edge_list("not a header\n")
    with pytest.raises(GraphFormatError, match="line 3"):
        from_edge_list("3 2\n0 1\n1 9\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        from_edge_list("3 1\n0 1 2\n")
    with pytest.raises(GraphFormatError, match="declares m=5"):
        from_edge_list("3 5\n0 1\n")


def test_graph6_known_strings():
    # path on 3 vertices and K4 have well-known encodings
    assert to_graph6(path(3)) == "Bg"
    assert to_graph6(complete(4)) == "C~"
    assert from_graph6("Bg") == path(3)
    assert from_graph6(">>graph6<<C~") == complete(4)


@given(graphs(14))
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)) == g


def test_graph6_large_order_header():
    g = path(100)
    s = to_graph6(g)
    assert s.startswith("~")
    assert from_graph6(s) == g


def test_graph6_body_length_checked():
    with pytest.raises(GraphFormatError, match="expected"):
        from_graph6("D")  # order 5 with no body


def test_file_round_trip_both_formats(tmp_path):
    g = i7c5()
    for fmt in ("edge-list", "graph6"):
        p = tmp_path / f"g.{fmt}"
        write_graph(g, str(p), fmt)
        assert read_graph(str(p)) == g
