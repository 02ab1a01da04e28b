import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import PreconditionError
from src.services.biclique import (
    OrderTag,
    StrongDegeneracyCertificate,
    best_certificate,
    degeneracy_certificate,
    embed_vs_biclique,
    ev_vs_biclique,
    max_degree_certificate,
    required_host_size,
    strong_degeneracy_order,
)
from src.services.graph import Graph
from src.services.instances import random_graph
from src.services.oracle import WitnessContext, verify_witness
from src.services.patterns import BOWTIE, connected_catalog, cycle, path, star
from src.services.witness import Tag
from src.types import Config
from tests.strategies import graphs


# --- certificates ---


def test_clique_needs_its_full_degree():
    assert strong_degeneracy_order(Graph.complete(5), 3) is None
    cert = strong_degeneracy_order(Graph.complete(5), 4)
    assert set(cert.tags) == {OrderTag.LOW_DEGREE}
    assert cert.problems(Graph.complete(5)) == []


def test_certificates_for_a_cycle():
    c4 = cycle(4)
    assert max_degree_certificate(c4).r == 2
    assert degeneracy_certificate(c4).r == 3
    assert best_certificate(c4).r == 2


def test_star_puts_its_centre_first():
    s = star(5)
    cert = degeneracy_certificate(s)
    assert cert.r == 2
    assert cert.order[0] == 0
    assert cert.tags[0] is OrderTag.BACK_DEGREE
    assert best_certificate(s).r == 2
    assert max_degree_certificate(s).r == 5


def test_tampered_certificate_is_rejected():
    cert = StrongDegeneracyCertificate(1, (0, 1, 2), (OrderTag.BACK_DEGREE,) * 3)
    assert cert.problems(path(3))
    with pytest.raises(PreconditionError):
        embed_vs_biclique(path(3), cert, Graph.empty(100), 1)
    with pytest.raises(PreconditionError):
        strong_degeneracy_order(path(3), 0)


@given(graphs(max_vertices=9))
@settings(max_examples=60, deadline=None)
def test_certificates_always_check(h):
    for cert in (max_degree_certificate(h), degeneracy_certificate(h)):
        assert cert.problems(h) == []


# --- the block embedding ---


def test_edge_against_an_empty_host():
    g = Graph.empty(4)
    result = embed_vs_biclique(Graph.complete(2), best_certificate(Graph.complete(2)), g, 1)
    assert result.tag is Tag.BICLIQUE_HOLE
    assert verify_witness(result, WitnessContext(host=g, n=1))


def test_edge_in_a_clique():
    g = Graph.complete(4)
    result = embed_vs_biclique(Graph.complete(2), best_certificate(Graph.complete(2)), g, 1)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=Graph.complete(2)))


def test_host_must_be_large_enough():
    h = cycle(4)
    cert = best_certificate(h)
    assert required_host_size(h, cert, 2) == 64
    with pytest.raises(PreconditionError):
        embed_vs_biclique(h, cert, Graph.empty(63), 2)


@given(st.sampled_from([Graph.complete(2), path(3), cycle(4)]), st.floats(0.0, 1.0), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_block_embedding_never_fails(h, p, seed):
    n = 2
    cert = best_certificate(h)
    g = random_graph(required_host_size(h, cert, n), p, seed)
    result = embed_vs_biclique(h, cert, g, n)
    assert not result.is_failure
    assert verify_witness(result, WitnessContext(host=g, pattern=h, n=n))


# --- bounded excess ---


def test_k4_in_a_clique(cfg):
    g = Graph.complete(20)
    result = ev_vs_biclique(Graph.complete(4), g, 2, 3, cfg)
    assert result.tag is Tag.PATTERN_COPY
    assert verify_witness(result, WitnessContext(host=g, pattern=Graph.complete(4)))


def test_bowtie_against_an_empty_host(cfg):
    g = Graph.empty(30)
    result = ev_vs_biclique(BOWTIE, g, 2, 2, cfg)
    assert result.tag is Tag.BICLIQUE_HOLE
    assert verify_witness(result, WitnessContext(host=g, n=2))


def test_bowtie_against_a_long_cycle(cfg):
    # C20: no bowtie, alpha = 10 < 2n
    result = ev_vs_biclique(BOWTIE, cycle(20), 6, 2, cfg)
    assert result.is_failure
    assert result.detail["alpha"] == 10


def test_base_case_records_its_certificate(cfg):
    h = path(3)
    hole = ev_vs_biclique(h, Graph.empty(9), 1, 2, cfg)
    assert hole.tag is Tag.BICLIQUE_HOLE
    assert hole.detail["certificate"] == "max-degree"
    copy = ev_vs_biclique(h, Graph.complete(9), 1, 2, cfg)
    assert copy.tag is Tag.PATTERN_COPY
    assert copy.detail["certificates"] == ["max-degree"]


def test_bounded_excess_preconditions(cfg):
    g = Graph.complete(6)
    with pytest.raises(PreconditionError):
        ev_vs_biclique(path(3), g, 2, 0, cfg)
    with pytest.raises(PreconditionError):
        ev_vs_biclique(Graph.empty(2), g, 2, 2, cfg)
    with pytest.raises(PreconditionError):
        ev_vs_biclique(Graph.complete(5), g, 2, 2, cfg)
    with pytest.raises(PreconditionError):
        ev_vs_biclique(path(3), g, 0, 2, cfg)


@given(st.sampled_from(connected_catalog(5, max_excess=1)), graphs(min_vertices=1, max_vertices=12))
@settings(max_examples=60, deadline=None)
def test_bounded_excess_witnesses_verify(h, g):
    result = ev_vs_biclique(h, g, 2, 2, Config())
    if not result.is_failure:
        assert verify_witness(result, WitnessContext(host=g, pattern=h, n=2))


@given(st.sampled_from(connected_catalog(6, max_excess=1)), st.integers(8, 20))
@settings(max_examples=40, deadline=None)
def test_cycles_without_large_independent_sets(h, m):
    g = cycle(m)
    n = m // 4 + 1
    result = ev_vs_biclique(h, g, n, 2, Config())
    assert result.tag in (Tag.PATTERN_COPY, Tag.FAILURE)
    if not result.is_failure:
        assert verify_witness(result, WitnessContext(host=g, pattern=h))
