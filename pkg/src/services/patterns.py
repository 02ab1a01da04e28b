"""Named pattern graphs, bipartite sides, and the K4-subdivision builder."""

import itertools
import re
from dataclasses import dataclass
from functools import cache

import networkx as nx

from src.errors import GraphFormatError, PreconditionError
from src.services.graph import Graph, bits, members

# K4 edges in a fixed order; subdivision lengths are given in this order.
K4_EDGES: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def path(k: int) -> Graph:
    """Path on ``k`` vertices."""
    return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphFormatError(f"cycle needs at least 3 vertices, got {k}")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_multipartite(sizes: list[int]) -> Graph:
    offsets = list(itertools.accumulate(sizes, initial=0))
    n = offsets[-1]
    part = [i for i, size in enumerate(sizes) for _ in range(size)]
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


def wheel(k: int) -> Graph:
    """``W_k``: a k-cycle on 0..k-1 plus hub ``k``."""
    return Graph.from_edges(k + 1, list(cycle(k).edges()) + [(i, k) for i in range(k)])


def complete_minus_edge(n: int) -> Graph:
    return Graph.from_edges(n, [e for e in Graph.complete(n).edges() if e != (0, 1)])


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


def glue(h1: Graph, v1: int, h2: Graph, v2: int) -> Graph:
    """One-point amalgam: ``h2``'s vertex ``v2`` is identified with ``h1``'s ``v1``.

    ``h1`` keeps its ids; the other vertices of ``h2`` follow in ascending order.
    """
    index = {}
    nxt = h1.n
    for u in range(h2.n):
        if u == v2:
            index[u] = v1
        else:
            index[u] = nxt
            nxt += 1
    edges = list(h1.edges()) + [(index[u], index[v]) for u, v in h2.edges()]
    return Graph.from_edges(nxt, edges)


def k4_chains(lengths: tuple[int, ...]) -> list[list[int]]:
    """Vertex sequence of each subdivided K4 edge, from its lower to its higher branch vertex.

    Branch vertices keep ids 0..3; interior vertices are numbered in edge order.
    """
    if len(lengths) != 6 or any(length < 1 for length in lengths):
        raise PreconditionError(f"need six path lengths >= 1, got {lengths}")
    chains = []
    nxt = 4
    for (a, b), length in zip(K4_EDGES, lengths):
        chains.append([a] + list(range(nxt, nxt + length - 1)) + [b])
        nxt += length - 1
    return chains


def k4_subdivision(lengths: tuple[int, ...]) -> Graph:
    """Subdivide the K4 edges (``K4_EDGES`` order) into paths of the given lengths."""
    chains = k4_chains(lengths)
    n = 4 + sum(length - 1 for length in lengths)
    return Graph.from_edges(n, [e for chain in chains for e in zip(chain, chain[1:])])


K4STAR_LENGTHS = (2, 1, 1, 1, 1, 1)
H1_LENGTHS = (2, 2, 1, 1, 1, 1)
H2_LENGTHS = (2, 1, 1, 1, 1, 2)
H3_LENGTHS = (3, 1, 1, 1, 1, 1)

K4STAR = k4_subdivision(K4STAR_LENGTHS)
H1 = k4_subdivision(H1_LENGTHS)
H2 = k4_subdivision(H2_LENGTHS)
H3 = k4_subdivision(H3_LENGTHS)
BOWTIE = glue(Graph.complete(3), 0, Graph.complete(3), 0)

_FIXED = {
    "K4STAR": K4STAR,
    "H1": H1,
    "H2": H2,
    "H3": H3,
    "PETERSEN": petersen(),
    "BOWTIE": BOWTIE,
}

_SHORTHAND = [
    (re.compile(r"K(\d+),(\d+)"), lambda a, b: complete_bipartite(int(a), int(b))),
    (re.compile(r"KNN:(\d+)"), lambda n: complete_bipartite(int(n), int(n))),
    (re.compile(r"K(\d+)-E"), lambda n: complete_minus_edge(int(n))),
    (re.compile(r"K(\d+)"), lambda n: Graph.complete(int(n))),
    (re.compile(r"P(\d+)"), lambda n: path(int(n))),
    (re.compile(r"C(\d+)"), lambda n: cycle(int(n))),
    (re.compile(r"W(\d+)"), lambda n: wheel(int(n))),
    (re.compile(r"S(\d+)"), lambda n: star(int(n))),
    (re.compile(r"E(\d+)"), lambda n: Graph.empty(int(n))),
]


def named_pattern(name: str) -> Graph | None:
    """Resolve a shorthand such as ``K4``, ``K4STAR``, ``C5``, ``P3``, ``K3,3`` or ``Knn:2``.

    Returns ``None`` when ``name`` is not a shorthand.
    """
    key = name.strip().upper()
    if key in _FIXED:
        return _FIXED[key]
    for pattern, build in _SHORTHAND:
        match = pattern.fullmatch(key)
        if match:
            return build(*match.groups())
    return None


def shorthand_names() -> list[str]:
    return sorted(_FIXED) + ["Kn", "Kn-e", "Ka,b", "Knn:n", "Pk", "Ck", "Wk", "Sk", "En"]


# --- bipartite sides ---


@dataclass(frozen=True)
class BipartitePattern:
    graph: Graph
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.graph.edge_count

    @classmethod
    def from_graph(cls, f: Graph) -> "BipartitePattern":
        """Two-colour ``f`` by BFS; the lowest vertex of each component goes to side A."""
        colour: dict[int, int] = {}
        for root in range(f.n):
            if root in colour:
                continue
            colour[root] = 0
            frontier = [root]
            while frontier:
                nxt = []
                for u in frontier:
                    for w in f.neighbors(u):
                        if w not in colour:
                            colour[w] = 1 - colour[u]
                            nxt.append(w)
                        elif colour[w] == colour[u]:
                            raise PreconditionError("pattern is not bipartite")
                frontier = nxt
        a = tuple(v for v in range(f.n) if colour[v] == 0)
        b = tuple(v for v in range(f.n) if colour[v] == 1)
        return cls(f, a, b)

    def validate(self, *, allow_isolated: bool = False) -> None:
        f = self.graph
        a, b = bits(self.side_a), bits(self.side_b)
        if a & b or a | b != f.vertex_mask:
            raise PreconditionError("sides must partition the pattern's vertices")
        for v in members(a):
            if f.rows[v] & a:
                raise PreconditionError(f"edge inside side A at vertex {v}")
        for v in members(b):
            if f.rows[v] & b:
                raise PreconditionError(f"edge inside side B at vertex {v}")
        if not allow_isolated and any(f.degree(v) == 0 for v in range(f.n)):
            raise PreconditionError("pattern has isolated vertices")


def top_by_degree(f: Graph, vertices: tuple[int, ...] | list[int], k: int) -> tuple[int, ...]:
    """The ``k`` highest-degree vertices, ties by ascending id."""
    ranked = sorted(vertices, key=lambda v: (-f.degree(v), v))
    return tuple(ranked[:k])


# --- catalogs ---


@cache
def _atlas() -> tuple[nx.Graph, ...]:
    return tuple(nx.graph_atlas_g())


def connected_catalog(max_vertices: int = 7, max_excess: int | None = None, min_vertices: int = 1) -> list[Graph]:
    """Connected graphs up to isomorphism from the networkx atlas (at most 7 vertices)."""
    if max_vertices > 7:
        raise PreconditionError("the graph atlas only covers up to 7 vertices")
    out = []
    for g in _atlas():
        n = g.number_of_nodes()
        if n < min_vertices or n > max_vertices or n == 0 or not nx.is_connected(g):
            continue
        if max_excess is not None and g.number_of_edges() - n > max_excess:
            continue
        out.append(Graph.from_networkx(g))
    return out


def subdivision_catalog(total_vertices: int) -> list[tuple[tuple[int, ...], Graph]]:
    """K4-subdivisions with ``total_vertices`` vertices, one per isomorphism class."""
    extra = total_vertices - 4
    if extra < 0:
        return []
    reps: list[tuple[tuple[int, ...], Graph]] = []
    for lengths in itertools.product(range(1, extra + 2), repeat=6):
        if sum(length - 1 for length in lengths) != extra:
            continue
        g = k4_subdivision(lengths)
        ng = g.to_networkx()
        if any(nx.is_isomorphic(ng, rep.to_networkx()) for _, rep in reps):
            continue
        reps.append((lengths, g))
    return reps
