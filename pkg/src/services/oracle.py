"""Ground truth: exact subgraph search, witness verification and exact small Ramsey numbers."""

import logging
from dataclasses import dataclass

from src.errors import PreconditionError, SearchBudgetExceeded
from src.services.graph import Graph, members
from src.services.structure import is_tree
from src.services.witness import DichotomyResult, Embedding, Mode, Tag

logger = logging.getLogger(__name__)


def _search_order(h: Graph, first: int | None) -> list[int]:
    """Most-constrained-first order: each next vertex has the most already-ordered neighbours."""
    remaining = set(range(h.n))
    order: list[int] = []
    placed = 0
    if first is not None:
        order.append(first)
        remaining.discard(first)
        placed |= 1 << first
    while remaining:
        u = max(remaining, key=lambda v: ((h.rows[v] & placed).bit_count(), h.degree(v), -v))
        order.append(u)
        remaining.discard(u)
        placed |= 1 << u
    return order


def subgraph_find(
    g: Graph,
    h: Graph,
    *,
    within: int | None = None,
    through: int | None = None,
    budget: int | None = None,
) -> Embedding | None:
    """A (not necessarily induced) copy of ``h`` in ``g``, or ``None`` if none exists.

    ``within`` restricts the images to a vertex mask; ``through`` forces one image to be
    that host vertex. ``budget`` caps the number of search nodes.
    """
    pool = g.vertex_mask if within is None else within
    if h.n == 0:
        return Embedding(h, g, (), Mode.HOST)
    if h.n > pool.bit_count():
        return None
    if through is not None and not pool >> through & 1:
        return None
    degree_ok: dict[int, int] = {}
    for k in set(h.degrees()):
        degree_ok[k] = sum(1 << v for v in members(pool) if (g.rows[v] & pool).bit_count() >= k)
    nodes = 0
    starts: list[int | None] = list(range(h.n)) if through is not None else [None]
    for first in starts:
        order = _search_order(h, first)
        pos = {u: i for i, u in enumerate(order)}
        back = [[w for w in h.neighbors(u) if pos[w] < i] for i, u in enumerate(order)]
        mapping = [-1] * h.n

        def step(idx: int, used: int) -> bool:
            nonlocal nodes
            if idx == len(order):
                return True
            u = order[idx]
            cand = (1 << through) if idx == 0 and first is not None else pool
            cand &= degree_ok[h.degree(u)] & ~used
            for w in back[idx]:
                cand &= g.rows[mapping[w]]
            for v in members(cand):
                nodes += 1
                if budget is not None and nodes > budget:
                    raise SearchBudgetExceeded(budget)
                mapping[u] = v
                if step(idx + 1, used | 1 << v):
                    return True
            mapping[u] = -1
            return False

        if step(0, 0):
            return Embedding(h, g, tuple(mapping), Mode.HOST).check()
    return None


def find_in_complement(g: Graph, f: Graph, *, budget: int | None = None) -> Embedding | None:
    copy = subgraph_find(g.complement(), f, budget=budget)
    if copy is None:
        return None
    return Embedding(f, g, copy.mapping, Mode.COMPLEMENT).check()


def inner_host_search(budget: int | None = None):
    """Adapter for the gluing lemma's inner solver signature."""

    def inner(pattern: Graph, host: Graph, within: int) -> Embedding | None:
        return subgraph_find(host, pattern, within=within, budget=budget)

    return inner


# --- witness verification ---


@dataclass(frozen=True)
class WitnessContext:
    host: Graph
    pattern: Graph | None = None
    target: Graph | None = None
    n: int | None = None


def witness_problems(result: DichotomyResult, ctx: WitnessContext) -> list[str]:
    g = ctx.host
    match result.tag:
        case Tag.PATTERN_COPY | Tag.COMPLEMENT_EMBEDDING:
            emb = result.embedding
            if emb is None:
                return ["missing embedding"]
            host_mode = result.tag is Tag.PATTERN_COPY
            expected = ctx.pattern if host_mode else ctx.target
            if emb.mode is not (Mode.HOST if host_mode else Mode.COMPLEMENT):
                return [f"{result.tag} carries a {emb.mode} embedding"]
            if emb.host != g:
                return ["embedding refers to a different host"]
            if expected is not None and emb.pattern != expected:
                return ["embedded pattern differs from the requested one"]
            return emb.problems()
        case Tag.INDEPENDENT_SET:
            vs = result.vertices
            if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
                return ["vertex set has duplicates or out-of-range ids"]
            if not g.is_independent(vs):
                return ["vertex set is not independent"]
            if ctx.n is not None and len(vs) < ctx.n:
                return [f"independent set of size {len(vs)} is smaller than {ctx.n}"]
            return []
        case Tag.BICLIQUE_HOLE:
            if result.hole is None:
                return ["missing biclique hole"]
            left, right = result.hole
            everything = left + right
            if len(set(everything)) != len(everything) or any(not 0 <= v < g.n for v in everything):
                return ["hole sides overlap or leave the host"]
            if ctx.n is not None and (len(left) < ctx.n or len(right) < ctx.n):
                return [f"hole sides {len(left)}x{len(right)} smaller than {ctx.n}"]
            if any(g.has_edge(a, b) for a in left for b in right):
                return ["hole sides are joined by an edge"]
            return []
        case _:
            return ["failure carries no witness"]


def verify_witness(result: DichotomyResult, ctx: WitnessContext) -> bool:
    problems = witness_problems(result, ctx)
    if problems and result.tag is not Tag.FAILURE:
        logger.warning("witness rejected: %s", problems[0])
    return not problems


# --- exact Ramsey numbers ---


@dataclass(frozen=True)
class RamseyOutcome:
    value: int | None
    witness: Graph | None
    exceeded: bool


def chvatal_tree_value(t: Graph, n: int) -> int:
    """``(v(T)-1)(n-1)+1`` for a tree ``T``."""
    if not is_tree(t):
        raise PreconditionError("pattern is not a tree")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    return (t.n - 1) * (n - 1) + 1


class _GoodGraphSearch:
    """Graphs on ``n`` vertices avoiding ``h`` with complement avoiding ``f``.

    Vertex 0 has maximum degree ``delta`` and neighbours ``1..delta``; each later vertex
    picks its neighbours among earlier ones and every prefix must already be good.
    """

    def __init__(self, h: Graph, f: Graph, n: int, budget: int | None):
        self.h, self.f, self.n = h, f, n
        self.budget = budget
        self.nodes = 0

    def _good_through(self, g: Graph, v: int) -> bool:
        if subgraph_find(g, self.h, through=v) is not None:
            return False
        return subgraph_find(g.complement(), self.f, through=v) is None

    def run(self) -> Graph | None:
        for delta in range(self.n - 1, -1, -1):
            found = self._extend([0], 1, delta) if self._good_through(Graph(1), 0) else None
            if found is not None:
                return found
        return None

    def _extend(self, rows: list[int], i: int, delta: int) -> Graph | None:
        if i == self.n:
            return Graph(self.n, rows)
        to_root = 1 if i <= delta else 0
        for choice in range(1 << max(i - 1, 0)):
            nbrs = (choice << 1) | to_root
            if nbrs.bit_count() > delta:
                continue
            if any(rows[j].bit_count() >= delta for j in members(nbrs)):
                continue
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise SearchBudgetExceeded(self.budget)
            grown = list(rows)
            for j in members(nbrs):
                grown[j] |= 1 << i
            grown.append(nbrs)
            if not self._good_through(Graph(i + 1, grown), i):
                continue
            found = self._extend(grown, i + 1, delta)
            if found is not None:
                return found
        return None


def ramsey_exact(h: Graph, f: Graph, nmax: int, *, budget: int | None = None) -> RamseyOutcome:
    """Least ``N <= nmax`` with every N-vertex graph containing ``h`` or its complement ``f``.

    When ``nmax`` is not enough, the good graph found at ``nmax`` is returned as witness.
    """
    if nmax < 1:
        raise PreconditionError(f"nmax must be positive, got {nmax}")
    witness: Graph | None = None
    for n in range(1, nmax + 1):
        good = _GoodGraphSearch(h, f, n, budget).run()
        logger.debug("ramsey: N=%s good graph %s", n, good)
        if good is None:
            return RamseyOutcome(value=n, witness=witness, exceeded=False)
        witness = good
    return RamseyOutcome(value=None, witness=witness, exceeded=True)
