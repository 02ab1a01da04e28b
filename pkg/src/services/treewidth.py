"""Exact treewidth, smooth tree decompositions, clique pruning and the bounded-excess driver."""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from src.errors import GraphFormatError, InvariantViolation, PreconditionError, SearchBudgetExceeded
from src.services.gluing import InnerSolver, glue_embedding, split_at_leaf_block
from src.services.graph import Graph, Induced, bits, members
from src.services.oracle import subgraph_find
from src.services.structure import (
    cliques,
    count_cliques,
    greedy_independent_set,
    is_connected,
    maximum_independent_set,
    two_core,
)
from src.services.subdivision import classify_subdivision, subdivision_vs_graph
from src.services.witness import DichotomyResult, Embedding, Mode, Tag, WitnessFound
from src.types import CliqueRatioReport, Config

logger = logging.getLogger(__name__)

MAX_TREEWIDTH_VERTICES = 16
MAX_EXCESS = 4


# --- exact treewidth ---


def _outside_reach(h: Graph, inside: int, v: int) -> int:
    """Vertices outside ``inside + v`` reachable from ``v`` through ``inside``."""
    seen = frontier = 1 << v
    while frontier:
        around = 0
        for u in members(frontier):
            around |= h.rows[u]
        frontier = around & inside & ~seen
        seen |= frontier
    around = 0
    for u in members(seen):
        around |= h.rows[u]
    return around & ~inside & ~(1 << v)


def elimination_order(h: Graph) -> tuple[int, list[int]]:
    """Optimal elimination ordering by dynamic programming over vertex subsets.

    Returns ``(treewidth, order)``; eliminating along ``order`` never creates a
    higher neighbourhood larger than the treewidth.
    """
    if h.n > MAX_TREEWIDTH_VERTICES:
        raise PreconditionError(f"exact treewidth supports at most {MAX_TREEWIDTH_VERTICES} vertices, got {h.n}")
    size = 1 << h.n
    best = [0] * size
    last = [-1] * size
    for s in range(1, size):
        value = None
        for v in members(s):
            rest = s & ~(1 << v)
            cost = max(best[rest], _outside_reach(h, rest, v).bit_count())
            if value is None or cost < value:
                value, last[s] = cost, v
        best[s] = value
    order = []
    s = h.vertex_mask
    while s:
        order.append(last[s])
        s &= ~(1 << last[s])
    order.reverse()
    return best[h.vertex_mask], order


def treewidth_exact(h: Graph) -> int:
    return elimination_order(h)[0]


def higher_neighbourhoods(h: Graph, order: list[int]) -> dict[int, frozenset[int]]:
    """Neighbours eliminated later than each vertex, in the filled graph."""
    rows = list(h.rows)
    alive = h.vertex_mask
    out = {}
    for v in order:
        later = rows[v] & alive & ~(1 << v)
        out[v] = frozenset(members(later))
        for u in members(later):
            rows[u] |= later & ~(1 << u)
        alive &= ~(1 << v)
    return out


# --- tree decompositions ---


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def traversal(self) -> list[tuple[int, int]]:
        """``(parent, child)`` pairs breadth-first from bag 0."""
        around: dict[int, list[int]] = {i: [] for i in range(len(self.bags))}
        for a, b in self.tree:
            around[a].append(b)
            around[b].append(a)
        seen = {0}
        queue = deque([0])
        steps = []
        while queue:
            t = queue.popleft()
            for u in sorted(around[t]):
                if u not in seen:
                    seen.add(u)
                    steps.append((t, u))
                    queue.append(u)
        return steps

    def problems(self, h: Graph) -> list[str]:
        out = []
        if not self.bags:
            return [] if h.n == 0 else ["no bags"]
        t = nx.Graph()
        t.add_nodes_from(range(len(self.bags)))
        t.add_edges_from(self.tree)
        if not nx.is_tree(t):
            out.append("bag graph is not a tree")
        covered = frozenset().union(*self.bags)
        if covered != frozenset(range(h.n)):
            out.append("bags do not cover the vertex set")
        for u, v in h.edges():
            if not any(u in b and v in b for b in self.bags):
                out.append(f"edge ({u}, {v}) lies in no bag")
        for v in range(h.n):
            holding = [i for i, b in enumerate(self.bags) if v in b]
            if holding and not nx.is_connected(t.subgraph(holding)):
                out.append(f"bags holding {v} are not connected")
        return out

    def is_smooth(self) -> bool:
        """All bags share one size ``r + 1`` and adjacent bags meet in exactly ``r`` vertices."""
        r = self.width
        return all(len(b) == r + 1 for b in self.bags) and all(
            len(self.bags[a] & self.bags[b]) == r for a, b in self.tree
        )


def smooth_tree_decomposition(h: Graph) -> TreeDecomposition:
    """Width-optimal decomposition with every bag of size ``r + 1`` and overlaps of ``r``.

    Built as an ``r``-tree over ``h``: the last ``r + 1`` vertices of an optimal
    elimination order form the first bag, and each earlier vertex is attached to
    ``r`` vertices of a bag containing its higher neighbourhood.
    """
    if h.n == 0:
        return TreeDecomposition((), ())
    r, order = elimination_order(h)
    higher = higher_neighbourhoods(h, order)
    bags = [frozenset(order[-(r + 1):])]
    tree = []
    for v in reversed(order[: -(r + 1)]):
        need = higher[v]
        host = next((i for i, b in enumerate(bags) if need <= b), None)
        if host is None:
            raise InvariantViolation(f"higher neighbourhood of {v} is not inside any bag")
        drop = min(bags[host] - need)
        bags.append((bags[host] - {drop}) | {v})
        tree.append((host, len(bags) - 1))
    return TreeDecomposition(tuple(bags), tuple(tree))


# --- clique counting and pruning ---


def clique_constant(r: int) -> int:
    """``C_1 = 4`` and ``C_r = 8 (r + 1) C_{r-1}``."""
    if r < 1:
        raise PreconditionError(f"r must be at least 1, got {r}")
    c = 4
    for i in range(2, r + 1):
        c *= 8 * (i + 1)
    return c


def clique_ratio_witness(g: Graph, r: int, n: int) -> CliqueRatioReport:
    """Evaluate ``#K_{r+1} >= N / (C_r n^r) * #K_r`` next to the exact independence number."""
    constant = clique_constant(r)
    lhs = count_cliques(g, r + 1)
    numerator = g.n * count_cliques(g, r)
    denominator = constant * n**r
    alpha = len(maximum_independent_set(g))
    return CliqueRatioReport(
        r=r,
        n=n,
        constant=constant,
        lhs=lhs,
        rhs_numerator=numerator,
        rhs_denominator=denominator,
        satisfied=lhs * denominator >= numerator,
        alpha=alpha,
        precondition=alpha < n and g.n >= denominator,
    )


@dataclass(frozen=True)
class CliqueFamilyPair:
    upper: frozenset[frozenset[int]]
    lower: frozenset[frozenset[int]]
    support: int

    @cached_property
    def extensions(self) -> dict[frozenset[int], list[int]]:
        """For each surviving ``r``-clique, the extra vertices of its surviving supersets."""
        out: dict[frozenset[int], list[int]] = {x: [] for x in self.lower}
        for y in self.upper:
            for v in y:
                out[y - {v}].append(v)
        for extra in out.values():
            extra.sort()
        return out

    def terminal_problems(self, g: Graph) -> list[str]:
        out = []
        for y in self.upper:
            if not all(g.has_edge(a, b) for a in y for b in y if a < b):
                out.append(f"{sorted(y)} is not a clique")
            for v in y:
                x = y - {v}
                if x not in self.lower:
                    out.append(f"{sorted(x)} was pruned but its superset survived")
                elif len(self.extensions[x]) <= self.support:
                    out.append(f"{sorted(x)} has only {len(self.extensions[x])} supersets")
        return out


def clique_process(g: Graph, r: int, support: int) -> CliqueFamilyPair:
    """Prune every ``r``-clique with at most ``support`` surviving ``(r+1)``-supersets, cascading."""
    if r < 1:
        raise PreconditionError(f"r must be at least 1, got {r}")
    upper = {frozenset(c) for c in cliques(g, r + 1)}
    over: dict[frozenset[int], set[frozenset[int]]] = {frozenset(c): set() for c in cliques(g, r)}
    for y in upper:
        for v in y:
            over[y - {v}].add(y)
    alive = set(over)
    queue = deque(sorted((x for x in alive if len(over[x]) <= support), key=sorted))
    while queue:
        x = queue.popleft()
        if x not in alive or len(over[x]) > support:
            continue
        alive.discard(x)
        for y in list(over[x]):
            upper.discard(y)
            for v in y:
                z = y - {v}
                if z == x:
                    continue
                over[z].discard(y)
                if z in alive and len(over[z]) <= support:
                    queue.append(z)
        over[x].clear()
    logger.debug("clique process: %s (r+1)-cliques and %s r-cliques survive", len(upper), len(alive))
    return CliqueFamilyPair(frozenset(upper), frozenset(alive), support)


def _embed_bags(h: Graph, dec: TreeDecomposition, family: CliqueFamilyPair, g: Graph) -> Embedding:
    first = min(family.upper, key=sorted)
    mapping = [-1] * h.n
    for u, w in zip(sorted(dec.bags[0]), sorted(first)):
        mapping[u] = w
    used = bits(first)
    for parent, child in dec.traversal():
        shared = dec.bags[child] & dec.bags[parent]
        (new,) = dec.bags[child] - dec.bags[parent]
        if mapping[new] != -1:
            raise InvariantViolation(f"vertex {new} reappears in a later bag")
        image = frozenset(mapping[u] for u in shared)
        fresh = [w for w in family.extensions.get(image, []) if not used >> w & 1]
        if not fresh:
            raise InvariantViolation(f"no unused extension of {sorted(image)}")
        mapping[new] = fresh[0]
        used |= 1 << fresh[0]
    return Embedding(h, g, tuple(mapping), Mode.HOST).check()


def _independent_fallback(g: Graph, n: int, cfg: Config) -> DichotomyResult:
    best = greedy_independent_set(g)
    if len(best) < n and n <= cfg.exact_alpha_max_n and g.n <= cfg.exact_alpha_max_vertices:
        best = maximum_independent_set(g, target=n)
    if len(best) >= n:
        return DichotomyResult.independent_set(best[:n], case="independent set")
    return DichotomyResult.failure(f"no copy found and largest independent set has {len(best)} < {n}", alpha=len(best))


def embed_via_treewidth(h: Graph, g: Graph, n: int, cfg: Config) -> DichotomyResult:
    """A copy of ``h`` in ``g`` or an independent set of size ``n``."""
    r = treewidth_exact(h)
    if r == 0:
        if g.n >= h.n:
            return DichotomyResult.pattern_copy(Embedding(h, g, tuple(range(h.n)), Mode.HOST).check(), case="edgeless")
        return _independent_fallback(g, n, cfg)
    dec = smooth_tree_decomposition(h)
    family = clique_process(g, r, h.n - r - 1)
    logger.info("treewidth: r=%s, %s bags, %s surviving cliques", r, len(dec.bags), len(family.upper))
    if family.upper:
        return DichotomyResult.pattern_copy(_embed_bags(h, dec, family, g), case="clique process", treewidth=r)
    return _independent_fallback(g, n, cfg)


# --- connected patterns with small excess ---


def _lift_result(sub: Induced, result: DichotomyResult) -> DichotomyResult:
    return DichotomyResult.independent_set(sub.lift_all(result.vertices), **result.detail)


def _copy_or_raise(result: DichotomyResult, sub: Induced | None = None) -> Embedding | None:
    """Embedding of a copy; independent sets escape as ``WitnessFound``."""
    if result.tag is Tag.INDEPENDENT_SET:
        raise WitnessFound(_lift_result(sub, result) if sub is not None else result)
    if result.tag is Tag.PATTERN_COPY:
        return result.embedding
    return None


def _hang_trees(h: Graph, placed: dict[int, int], g: Graph) -> Embedding | None:
    """Place the forest left after a core, each vertex at an unused host neighbour of its placed neighbour."""
    state = dict(placed)
    used = bits(state.values())
    pending = [v for v in range(h.n) if v not in state]
    while pending:
        anchored = [v for v in pending if any(w in state for w in h.neighbors(v))]
        v = anchored[0] if anchored else pending[0]
        parents = [w for w in h.neighbors(v) if w in state]
        free = g.vertex_mask & ~used
        for w in parents:
            free &= g.rows[state[w]]
        if not free:
            return None
        state[v] = members(free)[0]
        used |= 1 << state[v]
        pending.remove(v)
    emb = Embedding(h, g, tuple(state[v] for v in range(h.n)), Mode.HOST)
    return emb if emb.is_valid() else None


def _core_route(h: Graph, g: Graph, n: int, cfg: Config) -> Embedding | None:
    """Copy of ``h`` grown from a copy of its 2-core, found as a K4-subdivision."""
    core = h.induced(two_core(h))
    try:
        classify_subdivision(core.graph)
    except GraphFormatError:
        return None
    if core.graph.n < 6 or n < 2:
        return None
    result = subdivision_vs_graph(g, core.graph, Graph.complete(n), cfg)
    if result.tag is Tag.COMPLEMENT_EMBEDDING:
        raise WitnessFound(DichotomyResult.independent_set(result.embedding.mapping, case="subdivision core"))
    if result.tag is not Tag.PATTERN_COPY:
        return None
    placed = {core.lift(i): w for i, w in enumerate(result.embedding.mapping)}
    return _hang_trees(h, placed, g)


def _within(n: int, cfg: Config, *, split: bool) -> InnerSolver:
    """``_solve`` restricted to a vertex mask, with escaping witnesses lifted back to ``host`` ids."""

    def inner(pattern: Graph, host: Graph, within: int) -> Embedding | None:
        sub = host.induced(members(within))
        try:
            found = _solve(pattern, sub.graph, n, cfg, split=split)
        except WitnessFound as escaped:
            raise WitnessFound(_lift_result(sub, escaped.result)) from None
        return Embedding(pattern, host, sub.lift_all(found.mapping), Mode.HOST) if found else None

    return inner


def _solve(h: Graph, g: Graph, n: int, cfg: Config, *, split: bool = True) -> Embedding | None:
    if h.n == 0:
        return Embedding(h, g, (), Mode.HOST)
    if h.n > g.n:
        return None
    leaf = split_at_leaf_block(h) if split else None
    if leaf is not None:
        emb = glue_embedding(
            leaf.rest.graph,
            leaf.rest_cut,
            leaf.block.graph,
            leaf.block_cut,
            g,
            _within(n, cfg, split=True),
            direct=_within(n, cfg, split=False),
        )
        return leaf.lift(emb) if emb is not None else None
    if h.n <= 5 or h.max_degree() <= 2:
        return _copy_or_raise(embed_via_treewidth(h, g, n, cfg))

    v = max(range(h.n), key=lambda u: (h.degree(u), -u))
    rest = h.without([v])
    hosts = sorted(range(g.n), key=lambda x: (-g.degree(x), x))[: cfg.peel_attempts]
    for x in hosts:
        if g.degree(x) < rest.graph.n:
            break
        local = g.induced(g.neighbors(x))
        try:
            inside = None
            if treewidth_exact(rest.graph) > 2:
                inside = _core_route(rest.graph, local.graph, n, cfg)
            if inside is None:
                inside = _solve(rest.graph, local.graph, n, cfg)
        except WitnessFound as found:
            raise WitnessFound(_lift_result(local, found.result)) from None
        if inside is None:
            continue
        mapping = [0] * h.n
        for i, w in enumerate(inside.mapping):
            mapping[rest.lift(i)] = local.lift(w)
        mapping[v] = x
        logger.debug("peeling: vertex %s of the pattern sent to host vertex %s", v, x)
        return Embedding(h, g, tuple(mapping), Mode.HOST).check()
    return None


def theorem12_driver(h: Graph, g: Graph, n: int, cfg: Config) -> DichotomyResult:
    """Connected ``h`` with ``e - v <= 4`` against independent sets of size ``n``."""
    if not is_connected(h):
        raise PreconditionError("pattern must be connected")
    if h.edge_count - h.n > MAX_EXCESS:
        raise PreconditionError(f"pattern excess e-v = {h.edge_count - h.n} exceeds {MAX_EXCESS}")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    try:
        emb = _solve(h, g, n, cfg)
    except WitnessFound as found:
        return found.result
    if emb is not None:
        return DichotomyResult.pattern_copy(emb, case="recursion")
    fallback = _independent_fallback(g, n, cfg)
    if not fallback.is_failure:
        return fallback
    try:
        copy = subgraph_find(g, h, budget=cfg.search_budget)
    except SearchBudgetExceeded:
        copy = None
    if copy is not None:
        return DichotomyResult.pattern_copy(copy, case="search")
    logger.info("theorem12: %s", fallback.reason)
    return fallback
