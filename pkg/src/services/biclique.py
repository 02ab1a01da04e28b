"""Strongly degenerate patterns against empty bicliques ``K_{n,n}`` in the complement."""

import logging
from dataclasses import dataclass
from enum import StrEnum
from math import comb

from src.errors import InvariantViolation, PreconditionError, SearchBudgetExceeded
from src.services.gluing import InnerSolver, glue_embedding, split_at_leaf_block
from src.services.graph import Graph, Induced, members
from src.services.oracle import subgraph_find
from src.services.structure import degeneracy_order, greedy_independent_set, is_connected, maximum_independent_set
from src.services.witness import DichotomyResult, Embedding, Mode, Tag, WitnessFound
from src.types import Config

logger = logging.getLogger(__name__)


class OrderTag(StrEnum):
    BACK_DEGREE = "BACK_DEGREE"
    LOW_DEGREE = "LOW_DEGREE"


@dataclass(frozen=True)
class StrongDegeneracyCertificate:
    r: int
    order: tuple[int, ...]
    tags: tuple[OrderTag, ...]

    def back_degrees(self, h: Graph) -> list[int]:
        """``d_i(i)`` for each position of the order."""
        seen = 0
        out = []
        for v in self.order:
            out.append((h.rows[v] & seen).bit_count())
            seen |= 1 << v
        return out

    def problems(self, h: Graph) -> list[str]:
        if sorted(self.order) != list(range(h.n)) or len(self.tags) != h.n:
            return ["order is not a permutation of the pattern's vertices"]
        out = []
        for v, tag, back in zip(self.order, self.tags, self.back_degrees(h)):
            if tag is OrderTag.BACK_DEGREE and back > self.r - 1:
                out.append(f"vertex {v} has {back} earlier neighbours, more than {self.r - 1}")
            if tag is OrderTag.LOW_DEGREE and h.degree(v) > self.r:
                out.append(f"vertex {v} has degree {h.degree(v)}, more than {self.r}")
        return out


def strong_degeneracy_order(h: Graph, r: int) -> StrongDegeneracyCertificate | None:
    """Ordering built from the back: a vertex may go last if its degree is at most ``r`` or it
    has at most ``r - 1`` neighbours left. ``None`` when the peeling gets stuck."""
    if r < 1:
        raise PreconditionError(f"r must be at least 1, got {r}")
    alive = h.vertex_mask
    backwards = []
    while alive:
        low = [v for v in members(alive) if h.degree(v) <= r]
        if low:
            v = low[0]
            backwards.append((v, OrderTag.LOW_DEGREE))
        else:
            ready = [v for v in members(alive) if (h.rows[v] & alive).bit_count() <= r - 1]
            if not ready:
                return None
            v = ready[0]
            backwards.append((v, OrderTag.BACK_DEGREE))
        alive &= ~(1 << v)
    backwards.reverse()
    return StrongDegeneracyCertificate(r, tuple(v for v, _ in backwards), tuple(t for _, t in backwards))


def max_degree_certificate(h: Graph) -> StrongDegeneracyCertificate:
    cert = strong_degeneracy_order(h, max(h.max_degree(), 1))
    if cert is None:
        raise InvariantViolation("every graph is strongly degenerate in its maximum degree")
    return cert


def degeneracy_certificate(h: Graph) -> StrongDegeneracyCertificate:
    _, d = degeneracy_order(h)
    cert = strong_degeneracy_order(h, d + 1)
    if cert is None:
        raise InvariantViolation("every d-degenerate graph is (d+1)-strongly-degenerate")
    return cert


def best_certificate(h: Graph) -> StrongDegeneracyCertificate:
    """The certificate with the smaller ``r``, which gives the smaller host requirement."""
    return min(max_degree_certificate(h), degeneracy_certificate(h), key=lambda c: c.r)


def required_host_size(h: Graph, cert: StrongDegeneracyCertificate, n: int) -> int:
    return h.n * h.n * n**cert.r


# --- the embedding against K_{n,n} ---


def _threshold(h_size: int, n: int, r: int, back: int) -> int:
    return h_size * n ** (r - back)


def embed_vs_biclique(h: Graph, cert: StrongDegeneracyCertificate, g: Graph, n: int) -> DichotomyResult:
    """A copy of ``h`` in ``g`` or an ``n x n`` pair of sets with no edges between them.

    ``u_j`` is embedded into the ``j``-th block of ``h n^r`` host vertices; candidate sets
    shrink to host neighbourhoods as earlier neighbours are placed.
    """
    if cert.problems(h):
        raise PreconditionError(f"invalid certificate: {cert.problems(h)[0]}")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    size, r = h.n, cert.r
    need = required_host_size(h, cert, n)
    if g.n < need:
        raise PreconditionError(f"host needs at least {need} vertices, got {g.n}")
    if size == 0:
        return DichotomyResult.pattern_copy(Embedding(h, g, (), Mode.HOST))
    block = size * n**r
    order = cert.order
    position = {v: i for i, v in enumerate(order)}
    forward = [[position[w] for w in h.neighbors(u) if position[w] > i] for i, u in enumerate(order)]
    candidates = [((1 << block) - 1) << (j * block) for j in range(size)]
    back = [0] * size
    mapping = [-1] * size

    for i, u in enumerate(order):
        for j in range(i, size):
            if candidates[j].bit_count() < _threshold(size, n, r, back[j]):
                raise InvariantViolation(f"candidate set {j} fell below its bound at step {i}")
        chosen = None
        failing: dict[int, list[int]] = {j: [] for j in forward[i]}
        for v in members(candidates[i]):
            short = [
                j for j in forward[i]
                if (g.rows[v] & candidates[j]).bit_count() < _threshold(size, n, r, back[j] + 1)
            ]
            if not short:
                chosen = v
                break
            for j in short:
                failing[j].append(v)
        if chosen is None:
            for k in sorted(failing):
                if len(failing[k]) < n:
                    continue
                left = failing[k][:n]
                rest = candidates[k]
                for v in left:
                    rest &= ~g.rows[v]
                right = members(rest)[:n]
                if len(right) < n:
                    raise InvariantViolation(f"hole side R has {len(right)} < {n} vertices")
                logger.debug("biclique: pigeonhole at step %s against block %s", i, k)
                return DichotomyResult.biclique_hole(left, right, step=i, block=k)
            raise InvariantViolation(f"no vertex of block {i} fits and no block collects {n} failures")
        mapping[u] = chosen
        for j in forward[i]:
            candidates[j] &= g.rows[chosen]
            back[j] += 1
    return DichotomyResult.pattern_copy(Embedding(h, g, tuple(mapping), Mode.HOST).check(), r=r)


# --- bounded excess against K_{n,n} ---


def _split_hole(vertices: tuple[int, ...], n: int, **detail) -> DichotomyResult:
    return DichotomyResult.biclique_hole(vertices[:n], vertices[n: 2 * n], **detail)


def _lift_hole(sub: Induced, result: DichotomyResult) -> DichotomyResult:
    left, right = result.hole
    return DichotomyResult.biclique_hole(sub.lift_all(left), sub.lift_all(right), **result.detail)


def _certificate_for(h: Graph, k: int) -> tuple[str, StrongDegeneracyCertificate]:
    """The max-degree certificate once ``Δ(h) <= k``, else whichever has the smaller ``r``."""
    if h.max_degree() <= k:
        return "max-degree", max_degree_certificate(h)
    cert = best_certificate(h)
    return ("max-degree" if cert.r == h.max_degree() else "degeneracy"), cert


def _direct(h: Graph, g: Graph, n: int, k: int, cfg: Config, used: list[str]) -> Embedding | None:
    name, cert = _certificate_for(h, k)
    if g.n >= required_host_size(h, cert, n):
        used.append(name)
        result = embed_vs_biclique(h, cert, g, n)
        if result.tag is Tag.BICLIQUE_HOLE:
            raise WitnessFound(result.with_detail(certificate=name))
        return result.embedding
    try:
        copy = subgraph_find(g, h, budget=cfg.search_budget)
    except SearchBudgetExceeded:
        copy = None
    if copy is not None:
        return copy
    spread = greedy_independent_set(g)
    if len(spread) >= 2 * n:
        raise WitnessFound(_split_hole(spread, n, case="independent set"))
    return None


def _ev_within(n: int, k: int, cfg: Config, used: list[str], *, split: bool) -> InnerSolver:
    def inner(pattern: Graph, host: Graph, within: int) -> Embedding | None:
        sub = host.induced(members(within))
        try:
            found = _ev_solve(pattern, sub.graph, n, k, cfg, used, split=split)
        except WitnessFound as escaped:
            raise WitnessFound(_lift_hole(sub, escaped.result)) from None
        return Embedding(pattern, host, sub.lift_all(found.mapping), Mode.HOST) if found else None

    return inner


def _ev_solve(
    h: Graph, g: Graph, n: int, k: int, cfg: Config, used: list[str], *, split: bool = True
) -> Embedding | None:
    if h.n > g.n:
        return None
    leaf = split_at_leaf_block(h) if split and h.n else None
    if leaf is not None:
        emb = glue_embedding(
            leaf.rest.graph,
            leaf.rest_cut,
            leaf.block.graph,
            leaf.block_cut,
            g,
            _ev_within(n, k, cfg, used, split=True),
            direct=_ev_within(n, k, cfg, used, split=False),
        )
        return leaf.lift(emb) if emb is not None else None
    if h.max_degree() <= k or k <= 1:
        return _direct(h, g, n, k, cfg, used)

    v = max(range(h.n), key=lambda u: (h.degree(u), -u))
    rest = h.without([v])
    hosts = sorted(range(g.n), key=lambda x: (-g.degree(x), x))[: cfg.peel_attempts]
    for x in hosts:
        if g.degree(x) < rest.graph.n:
            break
        local = g.induced(g.neighbors(x))
        try:
            inside = _ev_solve(rest.graph, local.graph, n, k - 1, cfg, used)
        except WitnessFound as escaped:
            raise WitnessFound(_lift_hole(local, escaped.result)) from None
        if inside is None:
            continue
        mapping = [0] * h.n
        for i, w in enumerate(inside.mapping):
            mapping[rest.lift(i)] = local.lift(w)
        mapping[v] = x
        return Embedding(h, g, tuple(mapping), Mode.HOST).check()
    return _direct(h, g, n, k, cfg, used)


def ev_vs_biclique(h: Graph, g: Graph, n: int, k: int, cfg: Config) -> DichotomyResult:
    """Connected ``h`` with ``e - v <= C(k+1, 2) - 2`` against empty ``n x n`` pairs."""
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if not is_connected(h):
        raise PreconditionError("pattern must be connected")
    bound = comb(k + 1, 2) - 2
    if h.edge_count - h.n > bound:
        raise PreconditionError(f"pattern excess e-v = {h.edge_count - h.n} exceeds C({k + 1},2)-2 = {bound}")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    used: list[str] = []
    try:
        emb = _ev_solve(h, g, n, k, cfg, used)
    except WitnessFound as found:
        return found.result
    if emb is not None:
        return DichotomyResult.pattern_copy(emb, case="recursion", certificates=sorted(set(used)))
    best = greedy_independent_set(g)
    if len(best) < 2 * n and 2 * n <= cfg.exact_alpha_max_n and g.n <= cfg.exact_alpha_max_vertices:
        best = maximum_independent_set(g, target=2 * n)
    if len(best) >= 2 * n:
        return _split_hole(best, n, case="independent set")
    reason = f"no copy found and largest independent set has {len(best)} < {2 * n}"
    logger.info("ev-biclique: %s", reason)
    return DichotomyResult.failure(reason, alpha=len(best))
