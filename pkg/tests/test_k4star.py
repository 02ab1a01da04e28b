import pytest
from hypothesis import given, settings

from src.errors import PreconditionError
from src.services.graph import Graph
from src.services.k4star import (
    _case_one,
    cherry_k4star,
    find_k4star,
    find_k4star_bruteforce,
    k4star_vs_biclique,
    k4star_vs_bipartite,
    k4star_vs_clique,
    sparse_pairs,
)
from src.services.oracle import WitnessContext, verify_witness
from src.services.patterns import K4STAR, BipartitePattern, complete_bipartite, cycle, disjoint_union, path, star
from src.services.witness import Mode, Tag
from src.types import Config
from tests.conftest import perfect_matching
from tests.strategies import graphs


def test_k4star_in_small_dense_graphs(w4):
    for g in (Graph.complete(5), w4):
        copy = find_k4star(g)
        assert copy is not None
        assert copy.pattern == K4STAR
        assert copy.is_valid()


def test_no_k4star_in_sparse_graphs(petersen_graph):
    assert find_k4star(Graph.complete(4)) is None
    assert find_k4star(petersen_graph) is None
    assert find_k4star(complete_bipartite(3, 3)) is None


def test_cherry_respects_the_pool(w4):
    assert cherry_k4star(w4, 4) is not None
    assert cherry_k4star(w4, 4, within=0b00011) is None


@given(graphs(max_vertices=7))
@settings(max_examples=120, deadline=None)
def test_structured_search_matches_bruteforce(g):
    found = find_k4star(g)
    assert (found is None) == (find_k4star_bruteforce(g) is None)
    if found is not None:
        assert found.is_valid()


def test_sparse_pairs(petersen_graph):
    assert len(sparse_pairs(Graph.empty(4))) == 6
    assert len(sparse_pairs(Graph.complete(6))) == 0
    pairs = sparse_pairs(petersen_graph)
    assert len(pairs) == 45
    assert (0, 1) in pairs
    assert (3, 3) not in pairs


# --- versus bipartite targets ---


def test_dense_host_gives_a_copy(cfg):
    g = Graph.complete(6)
    result = k4star_vs_bipartite(g, cycle(4), cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=K4STAR))


@pytest.mark.parametrize("host", [Graph.empty(30), perfect_matching(40), cycle(60)])
def test_sparse_host_gives_complement_embedding(cfg, host):
    result = k4star_vs_bipartite(host, cycle(4), cfg)
    assert result.tag is Tag.COMPLEMENT_EMBEDDING
    assert result.embedding.mode is Mode.COMPLEMENT
    assert result.detail["certified"]
    assert verify_witness(result, WitnessContext(host=host, target=cycle(4)))


def test_bipartite_driver_rejects_odd_cycles(cfg):
    with pytest.raises(PreconditionError):
        k4star_vs_bipartite(Graph.empty(10), cycle(5), cfg)
    with pytest.raises(PreconditionError):
        k4star_vs_bipartite(Graph.empty(10), Graph.empty(3), cfg)


def test_case_one_sends_side_a_outside_the_neighbourhood():
    h = disjoint_union(*[complete_bipartite(3, 3)] * 3)
    pattern = BipartitePattern.from_graph(star(3))
    assert pattern.side_a == (0,)
    emb, certified = _case_one(h, pattern, sparse_pairs(h))
    assert certified
    assert emb.is_valid()
    # x = 0, N(x) = {3, 4, 5}; Y' starts at the second copy
    assert emb.mapping[0] == 6
    assert emb.mapping[1] == 3


@given(graphs(min_vertices=4, max_vertices=16))
@settings(max_examples=40, deadline=None)
def test_bipartite_driver_witnesses_verify(g):
    target = star(2)
    result = k4star_vs_bipartite(g, target, cfg=Config())
    if not result.is_failure:
        assert verify_witness(result, WitnessContext(host=g, pattern=K4STAR, target=target))


# --- versus cliques and bicliques ---


def test_clique_driver_examples(cfg, petersen_graph):
    result = k4star_vs_clique(Graph.empty(10), 3, cfg)
    assert result.tag is Tag.INDEPENDENT_SET
    result = k4star_vs_clique(Graph.complete(5), 3, cfg)
    assert result.tag is Tag.PATTERN_COPY
    result = k4star_vs_clique(petersen_graph, 4, cfg)
    assert result.tag is Tag.INDEPENDENT_SET
    assert verify_witness(result, WitnessContext(host=petersen_graph, n=4))


def test_clique_driver_needs_n_at_least_three(cfg):
    with pytest.raises(PreconditionError):
        k4star_vs_clique(Graph.empty(4), 2, cfg)


def test_biclique_driver_examples(cfg):
    result = k4star_vs_biclique(Graph.empty(8), 2, cfg)
    assert result.tag is Tag.BICLIQUE_HOLE
    assert verify_witness(result, WitnessContext(host=Graph.empty(8), n=2))
    result = k4star_vs_biclique(Graph.complete(6), 1, cfg)
    assert result.tag is Tag.PATTERN_COPY
    with pytest.raises(PreconditionError):
        k4star_vs_biclique(path(3), 0, cfg)


@given(graphs(min_vertices=1, max_vertices=14))
@settings(max_examples=40, deadline=None)
def test_clique_and_biclique_witnesses_verify(g):
    cfg = Config()
    for result, ctx in (
        (k4star_vs_clique(g, 3, cfg), WitnessContext(host=g, pattern=K4STAR, n=3)),
        (k4star_vs_biclique(g, 2, cfg), WitnessContext(host=g, pattern=K4STAR, n=2)),
    ):
        if not result.is_failure:
            assert verify_witness(result, ctx)
