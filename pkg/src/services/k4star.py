"""K4* (K4 with one edge subdivided) against bipartite targets, cliques and bicliques."""

import logging
import math
from dataclasses import dataclass
from itertools import combinations, permutations

from src.errors import PreconditionError
from src.services.graph import Graph, Induced, members
from src.services.lemmas import (
    bipartite_greedy_extend,
    degeneracy_condition,
    embed_by_degeneracy,
    empty_bipartite_split,
    few_triangle_independent_set,
    greedy_condition,
    greedy_extend,
    low_degree_mask,
    regularize,
)
from src.services.patterns import K4STAR, BipartitePattern, top_by_degree
from src.services.structure import greedy_independent_set, maximum_independent_set, triangle_count
from src.services.witness import DichotomyResult, Embedding, Mode
from src.types import Config

logger = logging.getLogger(__name__)


def _k4star(g: Graph, x: int, y: int, c: int, z: int, u: int) -> Embedding:
    """Branch pair ``x, y`` joined through the edge ``c z`` and subdivided through ``u``."""
    return Embedding(K4STAR, g, (x, y, c, z, u), Mode.HOST).check()


def cherry_k4star(g: Graph, c: int, within: int | None = None) -> Embedding | None:
    """A K4* with ``c`` on the central edge: a path ``x z y`` in ``N(c)`` whose ends share a third neighbour."""
    pool = g.vertex_mask if within is None else within
    around = g.rows[c] & pool
    for z in members(around):
        ends = members(g.rows[z] & around)
        for i, x in enumerate(ends):
            for y in ends[i + 1:]:
                extra = g.rows[x] & g.rows[y] & ~(1 << c | 1 << z)
                if extra:
                    return _k4star(g, x, y, c, z, (extra & -extra).bit_length() - 1)
    return None


def find_k4star(g: Graph) -> Embedding | None:
    """Complete structured search: every K4* has its central edge ``c z`` inside some ``N(c)``."""
    for c in range(g.n):
        if g.degree(c) >= 3:
            found = cherry_k4star(g, c)
            if found is not None:
                return found
    return None


def find_k4star_bruteforce(g: Graph) -> Embedding | None:
    """Every 5-subset under every vertex order; only for small hosts."""
    edges = list(K4STAR.edges())
    for subset in combinations(range(g.n), 5):
        for image in permutations(subset):
            if all(g.has_edge(image[a], image[b]) for a, b in edges):
                return Embedding(K4STAR, g, image, Mode.HOST)
    return None


@dataclass(frozen=True)
class SparsePairs:
    """Pairs with at most two common neighbours; ``partners[x]`` is a mask over ``y != x``."""

    host: Graph
    partners: tuple[int, ...]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        x, y = pair
        return x != y and bool(self.partners[x] >> y & 1)

    def __len__(self) -> int:
        return sum(p.bit_count() for p in self.partners) // 2

    def s_of(self, x: int) -> int:
        """Partners ``y`` of ``x`` with ``d(y) <= d(x)``."""
        dx = self.host.degree(x)
        return sum(1 << y for y in members(self.partners[x]) if self.host.degree(y) <= dx)

    def pairs_inside(self, mask: int) -> int:
        return sum((self.partners[y] & mask).bit_count() for y in members(mask)) // 2


def sparse_pairs(g: Graph) -> SparsePairs:
    partners = []
    for x in range(g.n):
        row = 0
        for y in range(g.n):
            if y != x and (g.rows[x] & g.rows[y]).bit_count() <= 2:
                row |= 1 << y
        partners.append(row)
    return SparsePairs(g, tuple(partners))


# --- K4* versus bipartite F ---


def _lift(sub: Induced, g: Graph, emb: Embedding) -> Embedding:
    return Embedding(emb.pattern, g, sub.lift_all(emb.mapping), emb.mode).check()


def _extend_from(f: Graph, anchors: list[int], images: list[int], g: Graph) -> tuple[Embedding | None, bool]:
    """Greedy extension, certified when the greedy condition holds."""
    placed = dict(zip(anchors, images))
    anchor_degree = max((g.degree(v) for v in images), default=0)
    certified = greedy_condition(g.n, f.edge_count, len(anchors), anchor_degree, g.average_degree(), f.n)
    return greedy_extend(f, anchors, placed, g, strict=certified), certified


def _case_one(h: Graph, pattern: BipartitePattern, pairs: SparsePairs) -> tuple[Embedding | None, bool]:
    x = max(range(h.n), key=lambda v: (pairs.s_of(v).bit_count(), -v))
    xs = h.neighbors(x)
    ys = members(pairs.s_of(x) & ~h.rows[x] & ~(1 << x))
    x_side, y_side = empty_bipartite_split(xs, ys, h, 2)
    logger.debug("case 1: x=%s split %s x %s", x, len(x_side), len(y_side))
    f = pattern.graph
    for sides in ((pattern.side_a, pattern.side_b), (pattern.side_b, pattern.side_a)):
        oriented = BipartitePattern(f, *sides)
        # A' goes to Y' (images of degree <= d(x)), B' to X' inside N(x)
        a_top = list(top_by_degree(f, oriented.side_a, min(len(y_side), len(oriented.side_a))))
        b_top = list(top_by_degree(f, oriented.side_b, min(len(x_side), len(oriented.side_b))))
        placed = dict(zip(a_top, y_side)) | dict(zip(b_top, x_side))
        try:
            found = bipartite_greedy_extend(oriented, a_top, b_top, placed, h)
            return found, True
        except PreconditionError as e:
            logger.debug("case 1: %s", e)
        found = bipartite_greedy_extend(oriented, a_top, b_top, placed, h, strict=False)
        if found is not None:
            return found, False
    return None, False


def _case_two(h: Graph, f: Graph, pairs: SparsePairs, log_n: float) -> tuple[Embedding | None, bool]:
    d = 2 * h.edge_count / h.n

    def reduced(x: int) -> int:
        dx = h.degree(x)
        return sum(1 << y for y in h.neighbors(x) if h.degree(y) <= dx)

    def score(x: int) -> tuple[float, int]:
        nx_ = reduced(x)
        value = 16 * log_n * (nx_.bit_count() - h.degree(x) / 8 - d / 8) - pairs.pairs_inside(nx_)
        return value, -x

    x = max(range(h.n), key=score)
    around = reduced(x)
    copy = cherry_k4star(h, x, around)
    if copy is not None:
        return copy, True
    k = min(around.bit_count() // 3, f.n)
    anchors = sorted(range(f.n), key=lambda v: (-f.degree(v), v))[:k]
    if not anchors:
        return None, False
    local = h.induced(members(around))
    inner = f.induced(anchors)
    seed = embed_by_degeneracy(inner.graph, local.graph, strict=False)
    if seed is None:
        return None, False
    images = [local.lift(seed.mapping[i]) for i in range(inner.graph.n)]
    return _extend_from(f, list(inner.vertices), images, h)


def _case_three(h: Graph, f: Graph, cfg: Config) -> tuple[Embedding | None, bool]:
    low = h.induced(members(low_degree_mask(h)))
    t = triangle_count(low.graph)
    report = few_triangle_independent_set(
        low.graph, t, restarts=cfg.restarts, swap_budget=cfg.swap_budget, seed=cfg.seed
    )
    spots = list(low.lift_all(report.vertices))
    k = min(len(spots), f.n)
    anchors = sorted(range(f.n), key=lambda v: (-f.degree(v), v))[:k]
    logger.debug("case 3: %s low-degree vertices, %s triangles, independent set %s", low.graph.n, t, len(spots))
    if k == f.n:
        return Embedding(f, h, tuple(spots[anchors.index(v)] for v in range(f.n)), Mode.COMPLEMENT).check(), True
    return _extend_from(f, anchors, spots[:k], h)


def k4star_vs_bipartite(g: Graph, f: Graph | BipartitePattern, cfg: Config) -> DichotomyResult:
    """A K4* in ``g`` or a copy of the bipartite ``f`` in the complement of ``g``."""
    pattern = f if isinstance(f, BipartitePattern) else BipartitePattern.from_graph(f)
    pattern.validate()
    target = pattern.graph
    if target.edge_count < 1:
        raise PreconditionError("target needs at least one edge")

    copy = find_k4star(g)
    if copy is not None:
        return DichotomyResult.pattern_copy(copy, case="pre-pass")
    if degeneracy_condition(target, g):
        emb = embed_by_degeneracy(target, g)
        if emb is not None:
            return DichotomyResult.complement_embedding(emb, case="pre-pass", certified=True)

    if g.n >= 12:
        reg = regularize(g)
        if reg.independent and len(reg.vertices) >= target.n:
            emb = Embedding(target, g, reg.vertices[: target.n], Mode.COMPLEMENT).check()
            return DichotomyResult.complement_embedding(emb, case="regularize", certified=True)
        sub = g.induced(reg.vertices)
        h = sub.graph
        if h.n >= 2 and h.edge_count:
            pairs = sparse_pairs(h)
            d = 2 * h.edge_count / h.n
            log_n = math.log(h.n)
            branches = []
            if len(pairs) >= 2 * h.n * d * log_n:
                branches.append(("case 1", lambda: _case_one(h, pattern, pairs)))
            if d * d >= 576 * 576 * target.edge_count * log_n:
                branches.append(("case 2", lambda: _case_two(h, target, pairs, log_n)))
            branches.append(("case 3", lambda: _case_three(h, target, cfg)))
            for name, run in branches:
                found, certified = run()
                if found is None:
                    logger.info("k4star: %s found nothing, falling through", name)
                    continue
                lifted = _lift(sub, g, found)
                if lifted.mode is Mode.HOST:
                    return DichotomyResult.pattern_copy(lifted, case=name)
                return DichotomyResult.complement_embedding(lifted, case=name, certified=certified)

    last = embed_by_degeneracy(target, g, strict=False)
    if last is not None:
        return DichotomyResult.complement_embedding(last, case="best-effort", certified=False)
    reason = f"no case applies at N={g.n} for m={target.edge_count} (degeneracy condition fails)"
    logger.info("k4star: %s", reason)
    return DichotomyResult.failure(reason)


# --- K4* versus cliques and bicliques ---


def _peel_below(g: Graph, threshold: float) -> tuple[int, int]:
    """Iteratively remove vertices of degree below ``threshold``; returns ``(peeled, core)`` masks."""
    core = g.vertex_mask
    changed = True
    while changed:
        changed = False
        for v in members(core):
            if (g.rows[v] & core).bit_count() < threshold:
                core &= ~(1 << v)
                changed = True
    return g.vertex_mask & ~core, core


def _large_independent_set(g: Graph, size: int, cfg: Config, within: int | None = None) -> tuple[int, ...] | None:
    found = greedy_independent_set(g, within)
    if len(found) >= size:
        return found
    pool = g.vertex_mask if within is None else within
    if size <= cfg.exact_alpha_max_n and pool.bit_count() <= cfg.exact_alpha_max_vertices:
        found = maximum_independent_set(g, pool, target=size)
        if len(found) >= size:
            return found
    return None


def k4star_vs_clique(g: Graph, n: int, cfg: Config) -> DichotomyResult:
    """A K4* in ``g`` or an independent set of size ``n``."""
    if n < 3:
        raise PreconditionError(f"n must be at least 3, got {n}")
    found = _large_independent_set(g, n, cfg)
    if found is not None:
        return DichotomyResult.independent_set(found[:n], step="search")
    peeled, core = _peel_below(g, g.n / (2 * n))
    found = greedy_independent_set(g, peeled)
    if len(found) >= n:
        return DichotomyResult.independent_set(found[:n], step="peeled")
    for x in members(core):
        copy = cherry_k4star(g, x, core)
        if copy is not None:
            return DichotomyResult.pattern_copy(copy, step="cherry")
    copy = find_k4star(g)
    if copy is not None:
        return DichotomyResult.pattern_copy(copy, step="search")
    return DichotomyResult.failure(f"no K4* and no independent set of size {n} found at N={g.n}")


def k4star_vs_biclique(g: Graph, n: int, cfg: Config) -> DichotomyResult:
    """A K4* in ``g`` or two disjoint ``n``-sets with no edges between them."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    found = greedy_independent_set(g)
    if len(found) >= 2 * n:
        return DichotomyResult.biclique_hole(found[:n], found[n: 2 * n], step="independent set")
    peeled, core = _peel_below(g, g.n / (4 * n))
    found = greedy_independent_set(g, peeled)
    if len(found) >= 2 * n:
        return DichotomyResult.biclique_hole(found[:n], found[n: 2 * n], step="peeled")
    pairs = sparse_pairs(g)
    for x in members(core):
        around = members(g.rows[x] & core)
        far = members(pairs.partners[x] & core & ~g.rows[x])
        if len(around) < 3 * n or len(far) < 3 * n:
            continue
        left, right = empty_bipartite_split(around[: 3 * n], far[: 3 * n], g, 2)
        if len(left) >= n and len(right) >= n:
            return DichotomyResult.biclique_hole(left[:n], right[:n], step="split")
    if core:
        v = min(members(core), key=lambda u: (pairs.pairs_inside(g.rows[u] & core), u))
        copy = cherry_k4star(g, v, core)
        if copy is not None:
            return DichotomyResult.pattern_copy(copy, step="cherry")
    copy = find_k4star(g)
    if copy is not None:
        return DichotomyResult.pattern_copy(copy, step="search")
    return DichotomyResult.failure(f"no K4* and no empty {n}x{n} pair found at N={g.n}")
