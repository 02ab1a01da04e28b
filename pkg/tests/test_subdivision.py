from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import GraphFormatError, PreconditionError
from src.services.graph import Graph
from src.services.oracle import WitnessContext, verify_witness
from src.services.patterns import H1, H2, H3, K4STAR, cycle, k4_subdivision, path, petersen
from src.services.subdivision import (
    assemble_subdivision,
    bad_edge_counts,
    case2_expectation,
    case2_pair,
    classify_subdivision,
    eliminate_triangles,
    path_shortfall,
    plus_triangle_counts,
    property_b_holds,
    replay_matches,
    subdivision_paths,
    subdivision_vs_graph,
)
from src.services.witness import Embedding, Mode, Tag
from src.types import Config
from tests.strategies import graphs


# --- triangle elimination ---


def test_triangle_free_host_has_empty_plus_part(c5):
    trace = eliminate_triangles(c5, 3)
    assert trace.order == ()
    assert trace.plus_edges == set()
    assert trace.minus_edges == set(c5.edges())


def test_dense_clique_keeps_every_edge():
    g = Graph.complete(5)
    trace = eliminate_triangles(g, 2)
    assert trace.order == ()
    assert trace.plus_edges == set(g.edges())
    assert len(trace.surviving) == 10
    assert set(plus_triangle_counts(trace).values()) == {3}


def test_k4_dissolves_with_c0_two():
    trace = eliminate_triangles(Graph.complete(4), 2)
    assert trace.order[0][0] == (0, 1)
    assert len(trace.order) == 3
    assert trace.surviving == frozenset()
    assert trace.plus_edges == set()
    assert eliminate_triangles(Graph.complete(4), 1).plus_edges == set(Graph.complete(4).edges())


def test_elimination_needs_positive_c0(c5):
    with pytest.raises(PreconditionError):
        eliminate_triangles(c5, 0)


@given(graphs(max_vertices=10), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_elimination_invariants(g, c0):
    trace = eliminate_triangles(g, c0)
    assert replay_matches(trace)
    assert trace.plus_edges | trace.minus_edges == set(g.edges())
    assert all(count > c0 for count in plus_triangle_counts(trace).values())
    for _, removed in trace.order:
        assert 1 <= len(removed) <= c0


@given(graphs(max_vertices=9), st.integers(1, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_every_batch_of_minus_edges_has_a_sparse_edge(g, c0, data):
    trace = eliminate_triangles(g, c0)
    minus = sorted(trace.minus_edges)
    batch = set(data.draw(st.lists(st.sampled_from(minus), unique=True))) if minus else set()
    assert property_b_holds(g, trace, batch)


def test_property_b_rejects_plus_edges():
    g = Graph.complete(5)
    trace = eliminate_triangles(g, 2)
    with pytest.raises(PreconditionError):
        property_b_holds(g, trace, {(0, 1)})


def test_bad_edge_counts(c5):
    assert bad_edge_counts(eliminate_triangles(c5, 3)) == [0] * 5
    assert bad_edge_counts(eliminate_triangles(Graph.complete(4), 2)) == [3] * 4


def test_case_two_quantities():
    trace = eliminate_triangles(Graph.complete(5), 2)
    assert case2_expectation(trace) == 3
    assert case2_pair(trace) == (0, 1)
    assert case2_pair(eliminate_triangles(cycle(5), 2)) is None


def test_paths_stay_in_the_plus_neighbourhood():
    trace = eliminate_triangles(Graph.complete(9), 3)
    paths = subdivision_paths(trace, 0, 1, 2)
    assert len(paths) == 2
    seen = set()
    for p in paths:
        assert p[0] == 0 and len(p) == 3
        assert all(trace.in_plus(a, b) for a, b in zip(p, p[1:]))
        assert 1 not in p[1:]
        assert seen.isdisjoint(p[1:])
        seen.update(p[1:])
    with pytest.raises(PreconditionError):
        subdivision_paths(eliminate_triangles(cycle(5), 3), 0, 1, 2)


# --- classification ---


@pytest.mark.parametrize(("graph", "base"), [(Graph.complete(4), "K4"), (K4STAR, "K4STAR"), (H1, "H1"), (H2, "H2"), (H3, "H3")])
def test_classify_named_subdivisions(graph, base):
    pattern = classify_subdivision(graph)
    assert pattern.base == base
    assert sum(pattern.lengths) == graph.edge_count


def test_classify_after_relabelling():
    perm = [3, 5, 0, 1, 4, 2]
    shuffled = Graph.from_edges(6, [(perm[u], perm[v]) for u, v in H2.edges()])
    assert classify_subdivision(shuffled).base == "H2"


def test_classify_longer_subdivision():
    g = k4_subdivision((1, 2, 1, 3, 1, 1))
    pattern = classify_subdivision(g)
    assert g.n == 7
    assert sorted(pattern.lengths) == [1, 1, 1, 1, 2, 3]
    assert len(pattern.subdivided) == 2


@pytest.mark.parametrize("graph", [petersen(), cycle(6), Graph.complete(5), path(4)])
def test_classify_rejects_non_subdivisions(graph):
    with pytest.raises(GraphFormatError):
        classify_subdivision(graph)


# --- assembly ---


@pytest.mark.parametrize(("base", "target"), [(Graph.complete(4), H3), (Graph.complete(4), H1), (K4STAR, H2)])
def test_assembly_in_a_clique(base, target):
    g = Graph.complete(9)
    trace = eliminate_triangles(g, 3)
    core = Embedding(base, g, tuple(range(base.n)), Mode.HOST)
    stretched = assemble_subdivision(core, classify_subdivision(target), trace)
    assert stretched is not None
    assert stretched.pattern == target
    assert stretched.is_valid()


def test_assembly_rejects_foreign_cores():
    g = Graph.complete(6)
    core = Embedding(cycle(4), g, (0, 1, 2, 3), Mode.HOST)
    with pytest.raises(PreconditionError):
        assemble_subdivision(core, classify_subdivision(H3), eliminate_triangles(g, 3))


# --- the driver ---


def test_clique_host_gives_a_copy(cfg):
    g = Graph.complete(20)
    result = subdivision_vs_graph(g, H3, Graph.complete(2), cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=H3))


def test_empty_host_gives_certified_complement_embedding(cfg):
    g = Graph.empty(40)
    result = subdivision_vs_graph(g, H1, path(3), cfg)
    assert result.tag is Tag.COMPLEMENT_EMBEDDING
    assert result.detail["certified"]
    assert verify_witness(result, WitnessContext(host=g, target=path(3)))


def test_path_shortfall():
    assert path_shortfall(36, 6) is None
    assert "C0 >= 36" in path_shortfall(3, 6)


def test_failure_names_the_path_requirement(cfg):
    # no H3 fits in C5 and its complement has no triangle
    result = subdivision_vs_graph(cycle(5), H3, Graph.complete(3), cfg)
    assert result.is_failure
    assert "C0 >= 36" in result.reason
    large = Config(C0=36, C1=36)
    result = subdivision_vs_graph(cycle(5), H3, Graph.complete(3), large)
    assert result.is_failure
    assert "C0 >=" not in result.reason


def test_driver_preconditions(cfg):
    g = Graph.empty(10)
    with pytest.raises(PreconditionError):
        subdivision_vs_graph(g, K4STAR, path(3), cfg)
    with pytest.raises(PreconditionError):
        subdivision_vs_graph(g, H1, Graph.from_edges(3, [(0, 1)]), cfg)
    with pytest.raises(GraphFormatError):
        subdivision_vs_graph(g, cycle(6), path(3), cfg)


@given(graphs(min_vertices=6, max_vertices=12))
@settings(max_examples=25, deadline=None)
def test_driver_witnesses_verify(g):
    target = path(3)
    for h in (H1, H2, H3):
        result = subdivision_vs_graph(g, h, target, Config())
        if not result.is_failure:
            assert verify_witness(result, WitnessContext(host=g, pattern=h, target=target))


def test_minus_edges_cover_pairs_of_k4_triangles():
    trace = eliminate_triangles(Graph.complete(4), 2)
    assert all(property_b_holds(trace.host, trace, set(batch)) for batch in combinations(sorted(trace.minus_edges), 3))
