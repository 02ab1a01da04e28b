"""Structural primitives shared by the drivers: independent sets, cliques, triangles,
2-density, blocks, cores and degeneracy."""

from fractions import Fraction
from typing import Iterator

from src.errors import PreconditionError
from src.services.graph import Graph, bits, lowest, members


def greedy_independent_set(g: Graph, within: int | None = None) -> tuple[int, ...]:
    """Min-degree greedy: size at least n/(d+1) for the graph induced on ``within``."""
    alive = g.vertex_mask if within is None else within
    chosen = []
    while alive:
        best = min(members(alive), key=lambda v: ((g.rows[v] & alive).bit_count(), v))
        chosen.append(best)
        alive &= ~(g.rows[best] | 1 << best)
    return tuple(sorted(chosen))


def greedy_in_order(g: Graph, order: list[int]) -> tuple[int, ...]:
    """First-fit independent set along ``order``."""
    blocked = 0
    chosen = []
    for v in order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= g.rows[v] | 1 << v
    return tuple(sorted(chosen))


def maximum_independent_set(g: Graph, within: int | None = None, target: int | None = None) -> tuple[int, ...]:
    """Exact maximum independent set by branch and bound; stops early once ``target`` is reached."""
    pool = g.vertex_mask if within is None else within
    best = list(greedy_independent_set(g, pool))
    if target is not None and len(best) >= target:
        return tuple(best)
    rows = g.rows

    def search(chosen: list[int], cand: int) -> bool:
        nonlocal best
        # forced picks: vertices with at most one candidate neighbour
        forced = []
        while cand:
            pick = -1
            for v in members(cand):
                if (rows[v] & cand).bit_count() <= 1:
                    pick = v
                    break
            if pick < 0:
                break
            forced.append(pick)
            cand &= ~(rows[pick] | 1 << pick)
        chosen = chosen + forced
        if len(chosen) + cand.bit_count() <= len(best):
            return False
        if not cand:
            best = chosen
            return target is not None and len(best) >= target
        v = max(members(cand), key=lambda u: ((rows[u] & cand).bit_count(), -u))
        if search(chosen + [v], cand & ~(rows[v] | 1 << v)):
            return True
        return search(chosen, cand & ~(1 << v))

    search([], pool)
    return tuple(sorted(best))


def cliques(g: Graph, r: int, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every r-clique exactly once, as an ascending tuple, in lexicographic order."""
    if r < 1:
        raise PreconditionError(f"clique size must be at least 1, got {r}")
    pool = g.vertex_mask if within is None else within
    rows = g.rows

    def extend(prefix: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == r:
            yield prefix
            return
        for v in members(cand):
            yield from extend(prefix + (v,), cand & rows[v] & ~((1 << (v + 1)) - 1))

    yield from extend((), pool)


def count_cliques(g: Graph, r: int, within: int | None = None) -> int:
    if r < 1:
        raise PreconditionError(f"clique size must be at least 1, got {r}")
    pool = g.vertex_mask if within is None else within
    rows = g.rows

    def count(depth: int, cand: int) -> int:
        if depth == r - 1:
            return cand.bit_count()
        total = 0
        for v in members(cand):
            total += count(depth + 1, cand & rows[v] & ~((1 << (v + 1)) - 1))
        return total

    return count(0, pool)


def triangle_count(g: Graph, within: int | None = None) -> int:
    return count_cliques(g, 3, within)


def triangles_through_edge(g: Graph, u: int, v: int) -> int:
    if not g.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    return g.codegree(u, v)


def two_density(h: Graph) -> Fraction:
    """max (e(H')-1)/(v(H')-2) over vertex subsets with at least 3 vertices."""
    if h.n < 3:
        raise PreconditionError(f"2-density needs at least 3 vertices, got {h.n}")
    if h.n > 16:
        raise PreconditionError(f"2-density is exhaustive over subsets; {h.n} vertices is too many")
    edges = [0] * (1 << h.n)
    best = Fraction(-1)
    for s in range(1, 1 << h.n):
        v = lowest(s)
        rest = s & ~(1 << v)
        edges[s] = edges[rest] + (h.rows[v] & rest).bit_count()
        size = s.bit_count()
        if size >= 3:
            ratio = Fraction(edges[s] - 1, size - 2)
            if ratio > best:
                best = ratio
    return best


def components(g: Graph, within: int | None = None) -> list[tuple[int, ...]]:
    pool = g.vertex_mask if within is None else within
    out = []
    while pool:
        seen = frontier = 1 << lowest(pool)
        while frontier:
            grow = 0
            for v in members(frontier):
                grow |= g.rows[v]
            frontier = grow & pool & ~seen
            seen |= frontier
        out.append(tuple(members(seen)))
        pool &= ~seen
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and is_connected(g) and g.edge_count == g.n - 1


def _block_search(g: Graph) -> tuple[list[tuple[int, ...]], set[int]]:
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[tuple[int, ...]] = []
    cut: set[int] = set()
    clock = 0
    for root in range(n):
        if disc[root] != -1 or not g.rows[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        edge_stack: list[tuple[int, int]] = []
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if u == root:
                root_children += 1
            if low[v] >= disc[u]:
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.update((a, b))
                    if (a, b) == (u, v):
                        break
                blocks.append(tuple(sorted(block)))
                if u != root:
                    cut.add(u)
        if root_children > 1:
            cut.add(root)
    return blocks, cut


def biconnected_components(h: Graph) -> list[tuple[int, ...]]:
    """Blocks (2-connected pieces or bridges) by DFS lowpoints; isolated vertices belong to none."""
    return _block_search(h)[0]


def articulation_points(h: Graph) -> tuple[int, ...]:
    return tuple(sorted(_block_search(h)[1]))


def two_core(h: Graph) -> tuple[int, ...]:
    alive = h.vertex_mask
    changed = True
    while changed:
        changed = False
        for v in members(alive):
            if (h.rows[v] & alive).bit_count() <= 1:
                alive &= ~(1 << v)
                changed = True
    return tuple(members(alive))


def degeneracy_order(g: Graph, within: int | None = None) -> tuple[list[int], int]:
    """Min-degree peeling order and the degeneracy it certifies.

    Each vertex has at most ``degeneracy`` neighbours that come later in the order.
    """
    alive = g.vertex_mask if within is None else within
    order = []
    degeneracy = 0
    while alive:
        v = min(members(alive), key=lambda u: ((g.rows[u] & alive).bit_count(), u))
        degeneracy = max(degeneracy, (g.rows[v] & alive).bit_count())
        order.append(v)
        alive &= ~(1 << v)
    return order, degeneracy


def is_clique(g: Graph, vertices: tuple[int, ...]) -> bool:
    mask = bits(vertices)
    return all((g.rows[v] | 1 << v) & mask == mask for v in vertices)
