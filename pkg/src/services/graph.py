"""Undirected simple graphs over dense ids ``0..n-1`` with bitset adjacency rows.

Row ``v`` is a Python int whose bit ``u`` is set iff ``u`` and ``v`` are adjacent, so
membership, neighbourhood intersection and population count are single int operations.
Graphs are immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

import networkx as nx

from src.errors import GraphFormatError

MAX_VERTICES = 4096


def bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Ascending list of the set bits of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Induced(NamedTuple):
    """An induced subgraph together with the parent ids of its vertices."""

    graph: Graph
    vertices: tuple[int, ...]

    def lift(self, v: int) -> int:
        return self.vertices[v]

    def lift_all(self, vs: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.vertices[v] for v in vs)


class Graph:
    __slots__ = ("n", "rows", "_edge_count")

    def __init__(self, n: int, rows: Iterable[int] | None = None, *, max_vertices: int = MAX_VERTICES):
        if n < 0:
            raise GraphFormatError(f"vertex count must be non-negative, got {n}")
        if n > max_vertices:
            raise GraphFormatError(f"{n} vertices exceeds the limit of {max_vertices}")
        self.n = n
        self.rows: tuple[int, ...] = tuple(rows) if rows is not None else (0,) * n
        if len(self.rows) != n:
            raise GraphFormatError(f"expected {n} adjacency rows, got {len(self.rows)}")
        self._edge_count: int | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        *,
        strict: bool = False,
        max_vertices: int = MAX_VERTICES,
    ) -> Graph:
        """Build from an edge list. Loops are always rejected; duplicates only when ``strict``."""
        if not 0 <= n <= max_vertices:
            raise GraphFormatError(f"vertex count {n} outside 0..{max_vertices}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if strict and rows[u] >> v & 1:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, max_vertices=max_vertices)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> Graph:
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges() if u != v))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    # --- basic queries ---

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return members(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    @property
    def edge_count(self) -> int:
        if self._edge_count is None:
            self._edge_count = sum(row.bit_count() for row in self.rows) // 2
        return self._edge_count

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in members(row >> (u + 1)):
                yield u, u + 1 + v

    def average_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(2 * self.edge_count, self.n)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def common_neighbors(self, u: int, v: int) -> int:
        return self.rows[u] & self.rows[v]

    def codegree(self, u: int, v: int) -> int:
        return (self.rows[u] & self.rows[v]).bit_count()

    def edges_between(self, xs: int, ys: int) -> int:
        """Number of edges with one end in mask ``xs`` and the other in mask ``ys`` (disjoint masks)."""
        return sum((self.rows[x] & ys).bit_count() for x in members(xs))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = bits(vertices)
        return all(not (self.rows[v] & mask) for v in members(mask))

    # --- derived graphs ---

    def complement(self) -> Graph:
        full = self.vertex_mask
        return Graph(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.rows)])

    def induced(self, vertices: Iterable[int]) -> Induced:
        order = sorted(set(vertices))
        for v in order:
            if not 0 <= v < self.n:
                raise GraphFormatError(f"vertex {v} out of range for {self.n} vertices")
        index = {v: i for i, v in enumerate(order)}
        mask = bits(order)
        rows = []
        for v in order:
            row = 0
            for u in members(self.rows[v] & mask):
                row |= 1 << index[u]
            rows.append(row)
        return Induced(Graph(len(order), rows), tuple(order))

    def without(self, vertices: Iterable[int]) -> Induced:
        drop = bits(vertices)
        return self.induced(members(self.vertex_mask & ~drop))

    def union_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.rows)
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    # --- dunder ---

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"
