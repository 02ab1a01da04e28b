"""Reproducible hosts and patterns for stress campaigns."""

import random
from dataclasses import dataclass
from functools import cache
from itertools import count
from typing import Iterator

import networkx as nx

from src.errors import PreconditionError
from src.services.biclique import best_certificate, required_host_size
from src.services.graph import Graph
from src.services.graphio import resolve_graph
from src.services.patterns import (
    K4STAR,
    complete_multipartite,
    connected_catalog,
    disjoint_union,
    subdivision_catalog,
)
from src.types import InstanceSpec

# bounds on the catalogs drawn from when no pattern is named
PATTERN_VERTICES = 6
TARGET_VERTICES = 5


@dataclass(frozen=True)
class Instance:
    host: Graph
    pattern: Graph | None = None
    target: Graph | None = None
    n: int | None = None
    k: int | None = None


# --- hosts ---


def random_graph(n: int, p: float, seed: int) -> Graph:
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def planted_independent_set(n: int, p: float, size: int, seed: int) -> Graph:
    """``G(n, p)`` with every edge inside ``{0, .., size - 1}`` removed."""
    g = nx.gnp_random_graph(n, p, seed=seed)
    g.remove_edges_from([(u, v) for u, v in list(g.edges()) if u < size and v < size])
    return Graph.from_networkx(g)


def random_bipartite(n: int, p: float, seed: int) -> Graph:
    """Triangle-free, hence free of every K4-subdivision."""
    left = n // 2
    g = nx.bipartite.random_graph(left, n - left, p, seed=seed)
    return Graph.from_networkx(g)


def disjoint_k4s(n: int) -> Graph:
    """Copies of K4 plus leftover isolated vertices: every neighbourhood is a triangle, yet no K4* appears."""
    return disjoint_union(*([Graph.complete(4)] * (n // 4)), Graph.empty(n % 4))


def clique_union_host(parts: int, vertices: int) -> Graph:
    """Disjoint union of ``parts`` near-equal cliques: independence number ``parts``."""
    sizes = [vertices // parts + (1 if i < vertices % parts else 0) for i in range(parts)]
    return complete_multipartite([s for s in sizes if s]).complement()


# --- patterns ---


@cache
def _bipartite_targets() -> tuple[Graph, ...]:
    return tuple(
        g for g in connected_catalog(TARGET_VERTICES, min_vertices=2) if nx.is_bipartite(g.to_networkx())
    )


@cache
def _targets() -> tuple[Graph, ...]:
    return tuple(connected_catalog(TARGET_VERTICES, min_vertices=2))


@cache
def bounded_excess_catalog(max_vertices: int, max_excess: int) -> tuple[Graph, ...]:
    return tuple(connected_catalog(max_vertices, max_excess=max_excess))


@cache
def _subdivisions(max_vertices: int) -> tuple[Graph, ...]:
    return tuple(g for total in range(6, max_vertices + 1) for _, g in subdivision_catalog(total))


def _named(text: str | None) -> Graph | None:
    return resolve_graph(text) if text else None


def make_instance(driver: str, spec: InstanceSpec, seed: int) -> Instance:
    """One reproducible instance for ``driver``; named ``spec`` patterns override the catalogs."""
    rng = random.Random(seed)
    host_seed = rng.getrandbits(32)
    size, p, n = spec.vertices, spec.density, spec.n
    pattern, target = _named(spec.pattern), _named(spec.target)

    match driver:
        case "k4star":
            target = target or rng.choice(_bipartite_targets())
            if spec.planted:
                host = planted_independent_set(size, p, 2 * target.n, host_seed)
            else:
                host = random_graph(size, p, host_seed)
            return Instance(host, pattern=K4STAR, target=target)
        case "k4star-clique" | "k4star-biclique":
            n = max(n, 3) if driver == "k4star-clique" else n
            if spec.planted:
                host = disjoint_k4s(size) if rng.random() < 0.5 else random_bipartite(size, p, host_seed)
            else:
                host = random_graph(size, p, host_seed)
            return Instance(host, pattern=K4STAR, n=n)
        case "subdivision":
            pattern = pattern or rng.choice(_subdivisions(8))
            target = target or rng.choice(_targets())
            return Instance(random_graph(size, p, host_seed), pattern=pattern, target=target)
        case "tw":
            pattern = pattern or rng.choice(bounded_excess_catalog(PATTERN_VERTICES, 8))
            if spec.planted and n >= 2:
                host = clique_union_host(n - 1, size)
            else:
                host = random_graph(size, p, host_seed)
            return Instance(host, pattern=pattern, n=n)
        case "theorem12":
            pattern = pattern or rng.choice(bounded_excess_catalog(7, 4))
            return Instance(random_graph(size, p, host_seed), pattern=pattern, n=n)
        case "biclique":
            pattern = pattern or rng.choice([Graph.complete(2), resolve_graph("P3"), resolve_graph("C4")])
            vertices = required_host_size(pattern, best_certificate(pattern), n)
            return Instance(random_graph(vertices, p, host_seed), pattern=pattern, n=n)
        case "ev-biclique":
            k = spec.k
            pattern = pattern or rng.choice(bounded_excess_catalog(PATTERN_VERTICES, k * (k + 1) // 2 - 2))
            return Instance(random_graph(size, p, host_seed), pattern=pattern, n=n, k=k)
    raise PreconditionError(f"unknown driver {driver!r}")


def random_instances(driver: str, spec: InstanceSpec, seed: int) -> Iterator[Instance]:
    """Endless stream; trial ``i`` uses seed ``seed ^ i``."""
    for i in count():
        yield make_instance(driver, spec, seed ^ i)

