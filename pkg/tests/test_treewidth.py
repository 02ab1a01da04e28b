import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.approximation import treewidth_min_degree

from src.errors import PreconditionError
from src.services.graph import Graph
from src.services.instances import clique_union_host
from src.services.oracle import WitnessContext, verify_witness
from src.services.patterns import BOWTIE, H1, complete_minus_edge, connected_catalog, cycle, path, star
from src.services.treewidth import (
    clique_constant,
    clique_process,
    clique_ratio_witness,
    embed_via_treewidth,
    smooth_tree_decomposition,
    theorem12_driver,
    treewidth_exact,
)
from src.services.witness import Tag
from src.types import Config
from tests.strategies import graphs

SMALL_PATTERNS = connected_catalog(6, max_excess=4)


@pytest.mark.parametrize(
    ("graph", "width"),
    [
        (Graph.empty(3), 0),
        (path(5), 1),
        (star(4), 1),
        (cycle(6), 2),
        (Graph.complete(4), 3),
        (complete_minus_edge(5), 3),
        (H1, 3),
    ],
)
def test_exact_treewidth(graph, width):
    assert treewidth_exact(graph) == width


def test_petersen_treewidth(petersen_graph):
    assert treewidth_exact(petersen_graph) == 4


def test_treewidth_size_limit():
    with pytest.raises(PreconditionError):
        treewidth_exact(Graph.empty(17))


@given(graphs(min_vertices=1, max_vertices=8))
@settings(max_examples=60, deadline=None)
def test_treewidth_below_heuristic_bound(g):
    upper, _ = treewidth_min_degree(g.to_networkx())
    assert treewidth_exact(g) <= upper


@given(graphs(min_vertices=1, max_vertices=8))
@settings(max_examples=60, deadline=None)
def test_smooth_decomposition_is_valid(g):
    dec = smooth_tree_decomposition(g)
    assert dec.problems(g) == []
    assert dec.is_smooth()
    assert dec.width == treewidth_exact(g)
    assert len(dec.bags) == max(1, g.n - dec.width)


def test_decomposition_problems_are_reported(c5):
    dec = smooth_tree_decomposition(path(5))
    assert any("lies in no bag" in p for p in dec.problems(c5))


# --- clique pruning ---


def test_clique_constants():
    assert [clique_constant(r) for r in (1, 2, 3)] == [4, 96, 3072]
    with pytest.raises(PreconditionError):
        clique_constant(0)


def test_clique_process_keeps_rich_cliques():
    family = clique_process(Graph.complete(6), 2, 1)
    assert len(family.upper) == 20
    assert len(family.lower) == 15
    assert family.terminal_problems(Graph.complete(6)) == []


def test_clique_process_cascades():
    assert clique_process(path(4), 1, 1).upper == frozenset()
    assert clique_process(Graph.complete(4), 2, 2).upper == frozenset()
    assert len(clique_process(Graph.complete(4), 2, 1).upper) == 4
    assert len(clique_process(BOWTIE, 1, 1).upper) == 6


@given(graphs(max_vertices=10), st.integers(1, 2), st.integers(0, 2))
@settings(max_examples=60, deadline=None)
def test_clique_process_terminal_state(g, r, support):
    family = clique_process(g, r, support)
    assert family.terminal_problems(g) == []


def test_clique_ratio_report():
    report = clique_ratio_witness(Graph.complete(5), 1, 2)
    assert (report.lhs, report.rhs_numerator, report.rhs_denominator) == (10, 25, 8)
    assert report.satisfied
    assert report.alpha == 1
    assert not report.precondition


# --- embedding through the decomposition ---


def test_triangle_in_a_clique(cfg):
    g = Graph.complete(6)
    result = embed_via_treewidth(Graph.complete(3), g, 2, cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert result.detail["treewidth"] == 2
    assert verify_witness(result, WitnessContext(host=g, pattern=Graph.complete(3)))


@pytest.mark.parametrize("h", [Graph.complete(3), cycle(4), Graph.complete(4), complete_minus_edge(5), path(5)])
def test_union_of_cliques_forces_a_copy(cfg, h):
    g = clique_union_host(2, 24)
    result = embed_via_treewidth(h, g, 3, cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=h))


def test_edgeless_pattern_and_empty_host(cfg):
    assert embed_via_treewidth(Graph.empty(3), Graph.empty(5), 2, cfg).tag is Tag.PATTERN_COPY
    result = embed_via_treewidth(Graph.complete(3), Graph.empty(10), 3, cfg)
    assert result.tag is Tag.INDEPENDENT_SET
    assert len(result.vertices) == 3


@given(st.sampled_from(SMALL_PATTERNS), graphs(min_vertices=1, max_vertices=12))
@settings(max_examples=60, deadline=None)
def test_treewidth_witnesses_verify(h, g):
    result = embed_via_treewidth(h, g, 3, Config())
    if not result.is_failure:
        assert verify_witness(result, WitnessContext(host=g, pattern=h, n=3))


# --- small excess driver ---


def test_k4_in_a_large_clique(cfg):
    g = Graph.complete(10)
    result = theorem12_driver(Graph.complete(4), g, 3, cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=Graph.complete(4)))


def test_bowtie_against_an_empty_host(cfg):
    g = Graph.empty(20)
    result = theorem12_driver(BOWTIE, g, 3, cfg)
    assert result.tag is Tag.INDEPENDENT_SET
    assert verify_witness(result, WitnessContext(host=g, n=3))


def test_peeling_finds_h1_in_a_clique(cfg):
    g = Graph.complete(9)
    result = theorem12_driver(H1, g, 3, cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=H1))


def test_small_excess_preconditions(cfg):
    g = Graph.complete(8)
    with pytest.raises(PreconditionError):
        theorem12_driver(Graph.empty(2), g, 3, cfg)
    with pytest.raises(PreconditionError):
        theorem12_driver(Graph.complete(6), g, 3, cfg)
    with pytest.raises(PreconditionError):
        theorem12_driver(cycle(4), g, 0, cfg)


@given(st.sampled_from(SMALL_PATTERNS), graphs(min_vertices=1, max_vertices=12))
@settings(max_examples=60, deadline=None)
def test_small_excess_witnesses_verify(h, g):
    result = theorem12_driver(h, g, 3, Config())
    if not result.is_failure:
        assert verify_witness(result, WitnessContext(host=g, pattern=h, n=3))


def test_triangle_free_host_below_the_independence_target(cfg):
    # C20: no triangle, alpha = 10
    result = theorem12_driver(BOWTIE, cycle(20), 11, cfg)
    assert result.is_failure
    assert result.detail["alpha"] == 10


@given(st.sampled_from(SMALL_PATTERNS), st.integers(6, 20))
@settings(max_examples=40, deadline=None)
def test_cycles_with_too_small_independent_sets(h, m):
    g = cycle(m)
    n = m // 2 + 1
    result = theorem12_driver(h, g, n, Config())
    assert result.tag in (Tag.PATTERN_COPY, Tag.FAILURE)
    if not result.is_failure:
        assert verify_witness(result, WitnessContext(host=g, pattern=h))


def test_networkx_agrees_on_connectivity_of_patterns():
    assert all(nx.is_connected(h.to_networkx()) for h in SMALL_PATTERNS)
