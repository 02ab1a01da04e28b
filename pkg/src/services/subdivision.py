"""Subdivisions of K4 on at least six vertices against arbitrary targets.

The host's triangles are thinned by an elimination process that splits the edges into
``G+`` (edges of surviving triangles, each in more than ``C0`` of them) and ``G-``. Cores
of the base patterns are then found inside ``G+`` and their edges stretched into the
required paths using long paths that stay inside a ``G+`` neighbourhood.
"""

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from src.errors import GraphFormatError, PreconditionError, SearchBudgetExceeded
from src.services.graph import Graph, bits, lowest, members
from src.services.lemmas import (
    degeneracy_condition,
    embed_by_degeneracy,
    greedy_condition,
    greedy_extend,
)
from src.services.oracle import subgraph_find
from src.services.patterns import (
    H1_LENGTHS,
    H2_LENGTHS,
    H3_LENGTHS,
    K4_EDGES,
    K4STAR_LENGTHS,
    k4_chains,
    k4_subdivision,
)
from src.services.structure import cliques, greedy_independent_set, is_connected
from src.services.witness import DichotomyResult, Embedding, Mode
from src.types import Config

logger = logging.getLogger(__name__)

Edge = tuple[int, int]
Triangle = tuple[int, int, int]

K4_LENGTHS = (1, 1, 1, 1, 1, 1)
BASE_LENGTHS = {
    "K4": K4_LENGTHS,
    "K4STAR": K4STAR_LENGTHS,
    "H1": H1_LENGTHS,
    "H2": H2_LENGTHS,
    "H3": H3_LENGTHS,
}
_K4_INDEX = {frozenset(e): i for i, e in enumerate(K4_EDGES)}


# --- triangle elimination ---


@dataclass(frozen=True)
class EliminationTrace:
    host: Graph
    c0: int
    order: tuple[tuple[Edge, tuple[Triangle, ...]], ...]
    surviving: frozenset[Triangle]
    plus_rows: tuple[int, ...]

    @property
    def plus_edges(self) -> set[Edge]:
        return {(u, v) for u in range(self.host.n) for v in members(self.plus_rows[u]) if u < v}

    @property
    def minus_edges(self) -> set[Edge]:
        return set(self.host.edges()) - self.plus_edges

    def plus_graph(self) -> Graph:
        return Graph(self.host.n, self.plus_rows)

    def minus_graph(self) -> Graph:
        return Graph(self.host.n, [row & ~plus for row, plus in zip(self.host.rows, self.plus_rows)])

    def in_plus(self, u: int, v: int) -> bool:
        return bool(self.plus_rows[u] >> v & 1)

    def plus_codegree(self, u: int, v: int) -> int:
        return (self.plus_rows[u] & self.plus_rows[v]).bit_count()

    def eliminated_at(self) -> dict[Edge, int]:
        return {edge: step for step, (edge, _) in enumerate(self.order)}


def eliminate_triangles(g: Graph, c0: int) -> EliminationTrace:
    """Repeatedly eliminate the lowest edge lying in between 1 and ``c0`` live triangles."""
    if c0 < 1:
        raise PreconditionError(f"C0 must be at least 1, got {c0}")
    edge_ids = {e: i for i, e in enumerate(g.edges())}
    edge_list = list(edge_ids)
    live: dict[Edge, set[Triangle]] = {e: set() for e in edge_list}
    for tri in cliques(g, 3):
        a, b, c = tri
        for e in ((a, b), (a, c), (b, c)):
            live[e].add(tri)
    heap = [edge_ids[e] for e in edge_list if 1 <= len(live[e]) <= c0]
    heapq.heapify(heap)
    order = []
    while heap:
        e = edge_list[heapq.heappop(heap)]
        if not 1 <= len(live[e]) <= c0:
            continue
        removed = tuple(sorted(live[e]))
        for tri in removed:
            a, b, c = tri
            for other in ((a, b), (a, c), (b, c)):
                live[other].discard(tri)
                if other != e and 1 <= len(live[other]) <= c0:
                    heapq.heappush(heap, edge_ids[other])
        order.append((e, removed))
    surviving = frozenset(t for tris in live.values() for t in tris)
    plus = [0] * g.n
    for a, b, c in surviving:
        plus[a] |= 1 << b | 1 << c
        plus[b] |= 1 << a | 1 << c
        plus[c] |= 1 << a | 1 << b
    logger.debug("elimination: %s steps, %s surviving triangles", len(order), len(surviving))
    return EliminationTrace(g, c0, tuple(order), surviving, tuple(plus))


def replay_matches(trace: EliminationTrace) -> bool:
    again = eliminate_triangles(trace.host, trace.c0)
    return again.order == trace.order and again.plus_rows == trace.plus_rows


def plus_triangle_counts(trace: EliminationTrace) -> dict[Edge, int]:
    """Triangles of ``G+`` through each ``G+`` edge, recounted from scratch."""
    plus = trace.plus_graph()
    return {(u, v): plus.codegree(u, v) for u, v in plus.edges()}


def property_b_holds(g: Graph, trace: EliminationTrace, batch: set[Edge]) -> bool:
    """Some edge of ``batch`` lies in at most ``C0`` triangles built from ``batch`` and ``G+`` edges."""
    if not batch:
        return True
    if not batch <= trace.minus_edges:
        raise PreconditionError("edge set must lie inside G-")
    allowed = list(trace.plus_rows)
    for u, v in batch:
        allowed[u] |= 1 << v
        allowed[v] |= 1 << u
    when = trace.eliminated_at()
    eliminated = [e for e in batch if e in when]
    candidate = min(eliminated, key=lambda e: when[e]) if eliminated else min(batch)
    u, v = candidate
    return (allowed[u] & allowed[v] & g.rows[u] & g.rows[v]).bit_count() <= trace.c0


def bad_edge_counts(trace: EliminationTrace) -> list[int]:
    """``b(v)``: edges of ``G-`` with both ends in ``N(v)``."""
    g = trace.host
    minus = [row & ~plus for row, plus in zip(g.rows, trace.plus_rows)]
    return [sum((minus[x] & g.rows[v]).bit_count() for x in members(g.rows[v])) // 2 for v in range(g.n)]


# --- paths inside a G+ neighbourhood ---


def _plus_path(trace: EliminationTrace, start: int, length: int, region: int, budget: int = 100_000) -> list[int] | None:
    """A path of ``length`` edges in ``G+`` from ``start`` whose other vertices lie in ``region``."""
    rows = trace.plus_rows
    nodes = 0

    def walk(path: list[int], used: int) -> list[int] | None:
        nonlocal nodes
        if len(path) == length + 1:
            return path
        for w in members(rows[path[-1]] & region & ~used):
            nodes += 1
            if nodes > budget:
                return None
            found = walk(path + [w], used | 1 << w)
            if found is not None:
                return found
        return None

    return walk([start], 1 << start)


def path_shortfall(c0: int, h: int) -> str | None:
    """Why the greedy path search carries no guarantee for an ``h``-vertex pattern, or ``None`` when ``C0 >= h^2``."""
    if c0 >= h * h:
        return None
    return f"path greedy needs C0 >= {h * h} for a {h}-vertex pattern, got C0={c0}"


def subdivision_paths(
    trace: EliminationTrace, x: int, y: int, h: int, *, length: int | None = None, avoid: int = 0
) -> list[list[int]] | None:
    """``h`` paths of ``length`` (default ``h``) edges in ``G+`` from ``x``, disjoint apart from ``x``,
    every vertex adjacent to ``y`` in ``G+``. ``None`` when the greedy search runs dry."""
    if not trace.in_plus(x, y):
        raise PreconditionError(f"({x}, {y}) is not a G+ edge")
    steps = h if length is None else length
    region = trace.plus_rows[y] & ~avoid & ~(1 << x)
    paths = []
    for _ in range(h):
        found = _plus_path(trace, x, steps, region)
        if found is None:
            return None
        paths.append(found)
        region &= ~bits(found)
    return paths


# --- classification ---


@dataclass(frozen=True)
class SubdivisionPattern:
    """A K4-subdivision: ``chains[i]`` runs from ``branch[a]`` to ``branch[b]`` for ``K4_EDGES[i] = (a, b)``."""

    graph: Graph
    base: str
    branch: tuple[int, int, int, int]
    chains: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]

    @property
    def base_lengths(self) -> tuple[int, ...]:
        return BASE_LENGTHS[self.base]

    @property
    def subdivided(self) -> tuple[int, ...]:
        """K4 edge indices carrying a path of length at least 2."""
        return tuple(i for i, length in enumerate(self.lengths) if length >= 2)


def _base_for(lengths: tuple[int, ...]) -> str:
    long = [i for i, length in enumerate(lengths) if length >= 2]
    if not long:
        return "K4"
    if len(long) == 1:
        return "K4STAR" if lengths[long[0]] == 2 else "H3"
    for i, j in combinations(long, 2):
        if set(K4_EDGES[i]) & set(K4_EDGES[j]):
            return "H1"
    return "H2"


def classify_subdivision(h: Graph) -> SubdivisionPattern:
    degrees = h.degrees()
    branch = [v for v in range(h.n) if degrees[v] == 3]
    if len(branch) != 4 or any(d not in (2, 3) for d in degrees) or not is_connected(h):
        raise GraphFormatError("not a subdivision of K4: need four degree-3 vertices, the rest of degree 2")
    index = {v: i for i, v in enumerate(branch)}
    chains: dict[int, tuple[int, ...]] = {}
    seen = 0
    for start in branch:
        for first in h.neighbors(start):
            walk = [start, first]
            while walk[-1] not in index:
                prev, cur = walk[-2], walk[-1]
                walk.append(next(w for w in h.neighbors(cur) if w != prev))
            end = walk[-1]
            if end == start:
                raise GraphFormatError("not a subdivision of K4: a chain returns to its branch vertex")
            a, b = index[start], index[end]
            if a > b:
                continue
            slot = _K4_INDEX[frozenset((a, b))]
            if slot in chains:
                raise GraphFormatError("not a subdivision of K4: two chains join the same branch pair")
            chains[slot] = tuple(walk)
            seen |= bits(walk)
    if len(chains) != 6 or seen != h.vertex_mask:
        raise GraphFormatError("not a subdivision of K4: contracted graph is not K4")
    ordered = tuple(chains[i] for i in range(6))
    lengths = tuple(len(c) - 1 for c in ordered)
    return SubdivisionPattern(h, _base_for(lengths), tuple(branch), ordered, lengths)


# --- assembly ---


def _stretch(
    trace: EliminationTrace, x: int, y: int, extra: int, used: int, pool_size: int
) -> list[int] | None:
    """Interior vertices of an ``x .. y`` path with ``extra`` more edges than the edge ``x y``."""
    pool = subdivision_paths(trace, x, y, pool_size, length=extra, avoid=used) if pool_size else None
    for path in pool or []:
        if not bits(path[1:]) & used:
            return path[1:]
    found = _plus_path(trace, x, extra, trace.plus_rows[y] & ~used & ~(1 << y))
    return found[1:] if found is not None else None


def _assemble_frame(
    core: Embedding, pattern: SubdivisionPattern, trace: EliminationTrace, perm: tuple[int, ...]
) -> Embedding | None:
    kappa = core_lengths(core)
    base_chains = k4_chains(kappa)
    used = core.image
    images: list[list[int]] = []
    for e, (i, j) in enumerate(K4_EDGES):
        want = pattern.lengths[_K4_INDEX[frozenset((perm[i], perm[j]))]]
        chain = [core.mapping[v] for v in base_chains[e]]
        extra = want - kappa[e]
        if extra:
            for t in range(len(chain) - 1):
                x, y = chain[t], chain[t + 1]
                if not trace.in_plus(x, y):
                    continue
                inner = _stretch(trace, x, y, extra, used, pattern.graph.n)
                if inner is None:
                    inner = _stretch(trace, y, x, extra, used, pattern.graph.n)
                    inner = inner[::-1] if inner is not None else None
                if inner is not None:
                    chain = chain[: t + 1] + inner + chain[t + 1:]
                    used |= bits(inner)
                    break
            else:
                return None
        images.append(chain)
    mapping = [-1] * pattern.graph.n
    for e, (i, j) in enumerate(K4_EDGES):
        slot = _K4_INDEX[frozenset((perm[i], perm[j]))]
        target = pattern.chains[slot]
        chain = images[e] if perm[i] < perm[j] else images[e][::-1]
        for u, v in zip(target, chain):
            mapping[u] = v
    return Embedding(pattern.graph, core.host, tuple(mapping), Mode.HOST).check()


def core_lengths(core: Embedding) -> tuple[int, ...]:
    for lengths in BASE_LENGTHS.values():
        if core.pattern == k4_subdivision(lengths):
            return lengths
    raise PreconditionError("core must embed one of K4, K4*, H1, H2, H3 in its canonical labelling")


def assemble_subdivision(core: Embedding, pattern: SubdivisionPattern, trace: EliminationTrace) -> Embedding | None:
    """Stretch a host copy of a base pattern into a copy of ``pattern``.

    Each K4 chain needing extra length is stretched at one of its edges that lies in
    ``G+``; every relabelling of the branch vertices compatible with the lengths is tried.
    """
    kappa = core_lengths(core)
    for perm in permutations(range(4)):
        fits = all(
            pattern.lengths[_K4_INDEX[frozenset((perm[i], perm[j]))]] >= kappa[e] for e, (i, j) in enumerate(K4_EDGES)
        )
        if not fits:
            continue
        found = _assemble_frame(core, pattern, trace, perm)
        if found is not None:
            return found
    return None


# --- the driver ---


def _core(g: Graph, base: str, mapping: tuple[int, ...]) -> Embedding:
    return Embedding(k4_subdivision(BASE_LENGTHS[base]), g, mapping, Mode.HOST).check()


def _item_two(f: Graph, g: Graph, independent: tuple[int, ...] | list[int]) -> tuple[Embedding | None, bool]:
    """Anchor the top-degree vertices of ``f`` on an independent set and extend greedily."""
    spots = sorted(independent)
    k = min(len(spots), f.n)
    if k == 0:
        return None, False
    anchors = sorted(range(f.n), key=lambda v: (-f.degree(v), v))[:k]
    if k == f.n:
        return Embedding(f, g, tuple(spots[anchors.index(v)] for v in range(f.n)), Mode.COMPLEMENT).check(), True
    placed = dict(zip(anchors, spots))
    anchor_degree = max(g.degree(v) for v in spots[:k])
    certified = greedy_condition(g.n, f.edge_count, k, anchor_degree, g.average_degree(), f.n)
    return greedy_extend(f, anchors, placed, g, strict=certified), certified


def _good_edges_derivation(g: Graph, trace: EliminationTrace, f: Graph, bad: list[int]) -> tuple[Embedding | None, bool]:
    d = 2 * g.edge_count / g.n
    minus = trace.minus_graph()

    def reduced(v: int) -> int:
        dv = g.degree(v)
        return sum(1 << u for u in minus.neighbors(v) if g.degree(u) <= dv)

    def score(v: int) -> tuple[float, int]:
        value = reduced(v).bit_count() - g.degree(v) / 16 - d / 16 - bad[v] / (12 * trace.c0)
        return value, -v

    v = max(range(g.n), key=score)
    spread = greedy_independent_set(minus, reduced(v))
    independent = greedy_independent_set(g, bits(spread))
    logger.debug("good-edges derivation at v=%s: independent set %s", v, len(independent))
    return _item_two(f, g, independent)


def _case_one_cores(g: Graph, trace: EliminationTrace, bad: list[int], limit: int):
    """Copies of H1 in ``G+`` found around the vertices ranked by the averaging functional."""
    n, e, c0 = g.n, g.edge_count, trace.c0
    d = 2 * e / n
    plus = trace.plus_rows

    def star_of(v: int) -> int:
        dv = g.degree(v)
        return sum(1 << u for u in members(plus[v]) if g.degree(u) <= dv)

    def poor_pairs(around: int) -> dict[int, int]:
        """For each vertex, its partners in ``around`` with at most ``C0`` common G+ neighbours."""
        return {u: sum(1 << w for w in members(around) if w != u and (plus[u] & plus[w]).bit_count() <= c0)
                for u in members(around)}

    def score(v: int) -> tuple[float, int]:
        around = star_of(v)
        p = sum(m.bit_count() for m in poor_pairs(around).values()) // 2
        value = around.bit_count() - g.degree(v) / 16 - d / 16 - bad[v] / (24 * c0) - e * p / (4 * c0 * n * n)
        return value, -v

    ranked = sorted(range(n), key=score, reverse=True)
    for v in ranked[:limit]:
        around = star_of(v)
        size = around.bit_count()
        if size < 3:
            continue
        poor = poor_pairs(around)
        a_mask = sum(1 << u for u, m in poor.items() if m.bit_count() <= (size - 3) / 2)
        for u1 in members(a_mask):
            for u2 in members(plus[u1] & a_mask & ~((1 << (u1 + 1)) - 1)):
                for w in members(around & ~(1 << u1 | 1 << u2) & ~poor[u1] & ~poor[u2]):
                    taken = 1 << v | 1 << u1 | 1 << u2 | 1 << w
                    z1s = plus[u1] & plus[w] & ~taken
                    for z1 in members(z1s):
                        z2s = plus[u2] & plus[w] & ~taken & ~(1 << z1)
                        if z2s:
                            yield _core(g, "H1", (w, u1, u2, v, z1, lowest(z2s)))
                            break


def case2_expectation(trace: EliminationTrace) -> Fraction:
    """Exact ``E[|A| - |P|]`` for a uniformly random pair ``v1, v2`` with ``A = N+(v1, v2)``."""
    n = trace.host.n
    if n < 2:
        return Fraction(0)
    total = comb(n, 2)
    expected_a = sum(comb(row.bit_count(), 2) for row in trace.plus_rows)
    expected_p = 0
    for u1, u2 in combinations(range(n), 2):
        common = trace.plus_codegree(u1, u2)
        if common <= trace.c0:
            expected_p += comb(common, 2)
    return Fraction(expected_a - expected_p, total)


def _trimmed_common(trace: EliminationTrace, v1: int, v2: int) -> list[int]:
    """``A = N+(v1, v2)`` with one vertex dropped from every pair having at most ``C0`` common G+ neighbours."""
    common = members(trace.plus_rows[v1] & trace.plus_rows[v2])
    keep = set(common)
    for u1, u2 in combinations(common, 2):
        if u1 in keep and u2 in keep and trace.plus_codegree(u1, u2) <= trace.c0:
            keep.discard(u2)
    return sorted(keep)


def case2_pair(trace: EliminationTrace) -> tuple[int, int] | None:
    """First pair, by descending common G+ degree, whose trimmed common neighbourhood has 3 vertices."""
    n = trace.host.n
    pairs = sorted(combinations(range(n), 2), key=lambda p: (-trace.plus_codegree(*p), p))
    for v1, v2 in pairs:
        if trace.plus_codegree(v1, v2) < 3:
            break
        if len(_trimmed_common(trace, v1, v2)) >= 3:
            return v1, v2
    return None


def _case_two_cores(g: Graph, trace: EliminationTrace, limit: int):
    plus = trace.plus_rows
    pairs = sorted(combinations(range(g.n), 2), key=lambda p: (-trace.plus_codegree(*p), p))
    for v1, v2 in pairs[:limit]:
        if trace.plus_codegree(v1, v2) < 3:
            break
        kept = _trimmed_common(trace, v1, v2)
        for u1, u2, u3 in permutations(kept, 3):
            if u1 > u2:
                continue
            ws = plus[u1] & plus[u2] & ~(1 << v1 | 1 << v2 | 1 << u3)
            if ws:
                yield _core(g, "H2", (v1, v2, u1, u2, u3, lowest(ws)))
                break


@dataclass(frozen=True)
class _Diamond:
    middle: Edge
    tip: int


def _diamonds_at(trace: EliminationTrace, g: Graph, v: int):
    """Diamonds of ``G+`` with tip ``v`` whose other tip has degree at most ``d(v)``."""
    plus = trace.plus_rows
    dv = g.degree(v)
    around = members(plus[v])
    for a in around:
        for b in members(plus[a] & plus[v] & ~((1 << (a + 1)) - 1)):
            for u in members(plus[a] & plus[b] & ~(1 << v)):
                if g.degree(u) <= dv:
                    yield _Diamond((a, b), u)


def _case_three_cores(g: Graph, trace: EliminationTrace, limit: int):
    """Cores for single-edge subdivisions; may also yield independent sets (as ``tuple``)."""
    d = 2 * g.edge_count / g.n
    counts = {v: sum(1 for _ in _diamonds_at(trace, g, v)) for v in range(g.n)}
    ranked = sorted(range(g.n), key=lambda v: (-(counts[v] - g.degree(v) - d), v))
    for v in ranked[:limit]:
        if not counts[v]:
            continue
        by_tip: dict[int, _Diamond] = {}
        clash = None
        for dia in _diamonds_at(trace, g, v):
            a, b = dia.middle
            if g.has_edge(v, dia.tip):
                yield _core(g, "K4", (v, a, b, dia.tip))
                continue
            earlier = by_tip.get(dia.tip)
            if earlier is None:
                by_tip[dia.tip] = dia
            elif clash is None:
                clash = (earlier, dia)
        if clash is not None:
            first, second = clash
            a, b = first.middle
            x = next((w for w in second.middle if w not in (a, b, v, first.tip)), None)
            if x is not None:
                yield _core(g, "K4STAR", (v, first.tip, a, b, x))
        tips = sorted(by_tip)
        for ui, uj in combinations(tips, 2):
            if not g.has_edge(ui, uj):
                continue
            di, dj = by_tip[ui], by_tip[uj]
            a, b = di.middle
            if set(di.middle) == set(dj.middle):
                yield _core(g, "K4", (a, b, ui, uj))
                continue
            x = next((w for w in dj.middle if w not in (a, b, ui, uj)), None)
            if x is not None and uj not in (a, b):
                yield _core(g, "H3", (v, ui, a, b, x, uj))
        if tips and g.is_independent(tips):
            yield tuple(tips)


def subdivision_vs_graph(g: Graph, h: Graph, f: Graph, cfg: Config) -> DichotomyResult:
    """A copy of the K4-subdivision ``h`` in ``g`` or a copy of ``f`` in the complement of ``g``."""
    pattern = classify_subdivision(h)
    if h.n < 6:
        raise PreconditionError(f"subdivision must have at least 6 vertices, got {h.n}")
    if f.edge_count < 1 or any(f.degree(v) == 0 for v in range(f.n)):
        raise PreconditionError("target must have edges and no isolated vertices")

    try:
        copy = subgraph_find(g, h, budget=cfg.search_budget)
    except SearchBudgetExceeded:
        copy = None
    if copy is not None:
        return DichotomyResult.pattern_copy(copy, case="pre-pass")
    if degeneracy_condition(f, g):
        emb = embed_by_degeneracy(f, g)
        if emb is not None:
            return DichotomyResult.complement_embedding(emb, case="item 1", certified=True)
    if g.n < 2 or g.edge_count == 0:
        return _last_resort(g, f, "host too sparse for the case analysis")

    trace = eliminate_triangles(g, cfg.C0)
    shortfall = path_shortfall(cfg.C0, h.n)
    if shortfall:
        logger.info("subdivision: %s", shortfall)
    bad = bad_edge_counts(trace)
    plus_edges = sum(row.bit_count() for row in trace.plus_rows) // 2
    logger.info("subdivision: base %s, e(G+)=%s of %s", pattern.base, plus_edges, g.edge_count)
    if 2 * plus_edges < g.edge_count:
        found, certified = _good_edges_derivation(g, trace, f, bad)
        if found is not None:
            return DichotomyResult.complement_embedding(found, case="good edges", certified=certified)

    limit = max(1, cfg.peel_attempts * 4)
    if pattern.base == "H1":
        candidates = _case_one_cores(g, trace, bad, limit)
    elif pattern.base == "H2":
        candidates = _case_two_cores(g, trace, limit * g.n)
    else:
        candidates = _case_three_cores(g, trace, limit)
    for core in candidates:
        if isinstance(core, tuple):
            found, certified = _item_two(f, g, core)
            if found is not None:
                return DichotomyResult.complement_embedding(found, case="tips independent", certified=certified)
            continue
        stretched = assemble_subdivision(core, pattern, trace)
        if stretched is not None:
            return DichotomyResult.pattern_copy(stretched, case=f"case {pattern.base}", paths_guaranteed=not shortfall)

    base_graph = k4_subdivision(pattern.base_lengths)
    try:
        core = subgraph_find(trace.plus_graph(), base_graph, budget=cfg.search_budget)
    except SearchBudgetExceeded:
        core = None
    if core is not None:
        stretched = assemble_subdivision(Embedding(base_graph, g, core.mapping, Mode.HOST), pattern, trace)
        if stretched is not None:
            return DichotomyResult.pattern_copy(stretched, case="G+ search", paths_guaranteed=not shortfall)
    reason = f"no {pattern.base} core could be stretched at N={g.n}"
    return _last_resort(g, f, f"{reason}; {shortfall}" if shortfall else reason)


def _last_resort(g: Graph, f: Graph, reason: str) -> DichotomyResult:
    found, certified = _item_two(f, g, greedy_independent_set(g))
    if found is not None:
        return DichotomyResult.complement_embedding(found, case="best-effort", certified=certified)
    found = embed_by_degeneracy(f, g, strict=False)
    if found is not None:
        return DichotomyResult.complement_embedding(found, case="best-effort", certified=False)
    logger.info("subdivision: %s", reason)
    return DichotomyResult.failure(reason)
