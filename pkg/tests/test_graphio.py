import pytest

from src.errors import GraphFormatError
from src.services.graph import Graph
from src.services.graphio import (
    format_edge_list,
    format_graph6,
    parse_edge_list,
    parse_graph6,
    parse_graph_text,
    read_graph,
    resolve_graph,
)
from src.services.patterns import K4STAR, complete_bipartite, cycle, path


def test_parse_edge_list():
    text = "# a path\n3 2\n0 1\n\n1 2  # second edge\n"
    assert parse_edge_list(text) == path(3)


@pytest.mark.parametrize(
    "text",
    [
        "3 2\n0 1\n",
        "3 1\n0 0\n",
        "3 1\n0 3\n",
        "3 2\n0 1\n1 0\n",
        "3\n",
        "3 1\n0 x\n",
        "",
    ],
)
def test_parse_edge_list_rejects(text):
    with pytest.raises(GraphFormatError):
        parse_edge_list(text)


def test_edge_list_text_is_stable(petersen_graph):
    text = format_edge_list(petersen_graph)
    assert text.splitlines()[0] == "10 15"
    assert parse_edge_list(text) == petersen_graph


def test_graph6_known_string():
    assert parse_graph6("Bw") == Graph.complete(3)
    assert parse_graph6(">>graph6<<Bw") == Graph.complete(3)
    assert format_graph6(Graph.complete(3)) == "Bw"


def test_graph6_keeps_vertex_ids(petersen_graph):
    assert parse_graph6(format_graph6(petersen_graph)) == petersen_graph


def test_parse_graph_text_detects_format():
    assert parse_graph_text("2 1\n0 1\n") == Graph.complete(2)
    assert parse_graph_text("Bw\n") == Graph.complete(3)
    with pytest.raises(GraphFormatError):
        parse_graph_text("   \n# nothing\n")


def test_read_graph(tmp_path):
    target = tmp_path / "c5.txt"
    target.write_text(format_edge_list(cycle(5)))
    assert read_graph(target) == cycle(5)
    with pytest.raises(GraphFormatError):
        read_graph(tmp_path / "missing.txt")


def test_resolve_named_shorthands():
    assert resolve_graph("K4STAR") == K4STAR
    assert resolve_graph("c5") == cycle(5)
    assert resolve_graph("K3,3") == complete_bipartite(3, 3)
    assert resolve_graph("Knn:2") == complete_bipartite(2, 2)
    assert resolve_graph("K3") == Graph.complete(3)
    assert resolve_graph("Bw") == Graph.complete(3)
