"""Greedy embedding lemmas: bipartite splits, regularization, greedy and degeneracy
embeddings into the complement, and the few-triangle independent set search.

Every numeric precondition is evaluated exactly over integers or ``Fraction``; the one
logarithmic condition uses a high-precision lower bound so that a pass is always sound.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Mapping

from src.errors import InvariantViolation, PreconditionError
from src.services.graph import Graph, bits, lowest, members
from src.services.patterns import BipartitePattern
from src.services.structure import greedy_in_order, greedy_independent_set, triangle_count
from src.services.witness import Embedding, Mode, embedding_from_partial
from src.types import IndependentSetReport

logger = logging.getLogger(__name__)

_LN_DIGITS = 50
_LN_SLACK = Decimal(10) ** -40


def ln_lower(x: int) -> Decimal:
    """A value certainly at most ``ln x`` (x >= 1)."""
    if x <= 1:
        return Decimal(0)
    with localcontext() as ctx:
        ctx.prec = _LN_DIGITS
        return Decimal(x).ln() - _LN_SLACK


def low_degree_mask(g: Graph, factor: int = 2) -> int:
    """``{v : d(v) <= factor * d(G)}``, compared exactly as ``d(v) * n <= factor * 2e``."""
    bound = factor * 2 * g.edge_count
    mask = 0
    for v, row in enumerate(g.rows):
        if row.bit_count() * g.n <= bound:
            mask |= 1 << v
    return mask


# --- bipartite split ---


def empty_bipartite_split(
    xs: tuple[int, ...] | list[int], ys: tuple[int, ...] | list[int], g: Graph, r: Fraction | int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    r = Fraction(r)
    if r <= 0:
        raise PreconditionError(f"r must be positive, got {r}")
    x_mask, y_mask = bits(xs), bits(ys)
    if x_mask & y_mask:
        raise PreconditionError("X and Y must be disjoint")
    cross = g.edges_between(x_mask, y_mask)
    if cross > r * len(ys):
        raise PreconditionError(f"e(X,Y) = {cross} exceeds r|Y| = {r * len(ys)}")
    keep = math.floor(Fraction(len(xs)) / (r + 1))
    ranked = sorted(set(xs), key=lambda x: ((g.rows[x] & y_mask).bit_count(), x))
    x_prime = tuple(sorted(ranked[:keep]))
    touched = 0
    for x in x_prime:
        touched |= g.rows[x]
    y_prime = tuple(members(y_mask & ~touched))
    return x_prime, y_prime


# --- regularization ---


@dataclass(frozen=True)
class Regularized:
    vertices: tuple[int, ...]
    removed: tuple[int, ...] = ()
    independent: bool = False


def degree_log_bounded(g: Graph, alive: int) -> bool:
    """Soundly decide ``Delta(G[alive]) <= d(G[alive]) * ln |alive|``."""
    size = alive.bit_count()
    if size == 0:
        return True
    degs = [(g.rows[v] & alive).bit_count() for v in members(alive)]
    top, twice_edges = max(degs), sum(degs)
    if top == 0:
        return True
    return Decimal(top) * size <= Decimal(twice_edges) * ln_lower(size)


def regularize(g: Graph) -> Regularized:
    """Delete maximum-degree vertices until the maximum degree is within ``d log |S|``.

    Runs at most ``2N/3`` steps; if the bound never holds, the remainder is sparse and a
    greedy independent set of it is returned instead.
    """
    if g.n < 12:
        raise PreconditionError(f"regularization needs N >= 12, got {g.n}")
    alive = g.vertex_mask
    removed: list[int] = []
    for step in range(2 * g.n // 3 + 1):
        if degree_log_bounded(g, alive):
            logger.debug("regularize: stopped after %s removals", step)
            return Regularized(tuple(members(alive)), tuple(removed))
        if step == 2 * g.n // 3:
            break
        v = max(members(alive), key=lambda u: ((g.rows[u] & alive).bit_count(), -u))
        removed.append(v)
        alive &= ~(1 << v)
    independent = greedy_independent_set(g, alive)
    logger.debug("regularize: fell back to an independent set of size %s", len(independent))
    return Regularized(independent, tuple(removed), independent=True)


# --- greedy embeddings into the complement ---


def greedy_condition(n: int, m: int, k: int, anchor_degree: int, d: Fraction, pattern_vertices: int) -> bool:
    """``N >= 4m/(k+1) * max(anchor_degree, 2d) + 2|V(F)|`` evaluated exactly."""
    return n * (k + 1) >= 4 * m * max(Fraction(anchor_degree), 2 * d) + 2 * pattern_vertices * (k + 1)


def _check_top(f: Graph, chosen: list[int] | tuple[int, ...], pool: list[int] | tuple[int, ...], label: str) -> None:
    inside = set(chosen)
    outside = [v for v in pool if v not in inside]
    if not inside.issubset(pool):
        raise PreconditionError(f"{label} contains vertices outside its side")
    if inside and outside and min(f.degree(v) for v in inside) < max(f.degree(v) for v in outside):
        raise PreconditionError(f"{label} is not a set of highest-degree vertices")


def _check_partial(f: Graph, g: Graph, placed: Mapping[int, int]) -> None:
    images = list(placed.values())
    if len(set(images)) != len(images) or any(not 0 <= v < g.n for v in images):
        raise PreconditionError("partial embedding is not injective into the host")
    for a, b in f.edges():
        if a in placed and b in placed and g.has_edge(placed[a], placed[b]):
            raise PreconditionError(f"partial embedding maps pattern edge ({a}, {b}) onto a host edge")


def _place(
    f: Graph,
    g: Graph,
    placed: dict[int, int],
    order: list[int],
    candidates: int,
    used: int,
) -> int | None:
    """Place ``order`` one by one at the lowest valid candidate; returns the used mask, or None when stuck."""
    for u in order:
        blocked = used
        for w in f.neighbors(u):
            if w in placed:
                blocked |= g.rows[placed[w]]
        free = candidates & ~blocked
        if not free:
            return None
        v = lowest(free)
        placed[u] = v
        used |= 1 << v
    return used


def greedy_extend(
    f: Graph,
    anchors: tuple[int, ...] | list[int],
    placed: Mapping[int, int],
    g: Graph,
    *,
    strict: bool = True,
) -> Embedding | None:
    """Extend an embedding of ``F[A]`` into the complement of ``G`` to all of ``F``.

    With ``strict`` the greedy condition is enforced and exhaustion raises
    ``InvariantViolation``; otherwise the same placement runs uncertified and
    exhaustion returns ``None``.
    """
    anchors = tuple(anchors)
    if set(placed) != set(anchors):
        raise PreconditionError("partial embedding must cover exactly the anchor set")
    _check_top(f, anchors, tuple(range(f.n)), "anchor set")
    _check_partial(f, g, placed)
    if len(anchors) == f.n:
        return embedding_from_partial(f, g, dict(placed), Mode.COMPLEMENT).check()
    d = g.average_degree()
    anchor_degree = max((g.degree(placed[a]) for a in anchors), default=0)
    if strict and not greedy_condition(g.n, f.edge_count, len(anchors), anchor_degree, d, f.n):
        raise PreconditionError(
            f"greedy condition fails: N={g.n}, m={f.edge_count}, k={len(anchors)}, anchor={anchor_degree}, d={d}"
        )
    state = dict(placed)
    rest = sorted((u for u in range(f.n) if u not in state), key=lambda u: (-f.degree(u), u))
    if _place(f, g, state, rest, low_degree_mask(g), bits(state.values())) is None:
        if strict:
            raise InvariantViolation("greedy extension ran out of candidates")
        return None
    return embedding_from_partial(f, g, state, Mode.COMPLEMENT).check()


def degeneracy_condition(f: Graph, g: Graph) -> bool:
    """``48 m d^2 <= N^2 - 2N|V(F)|`` with ``d = 2e/N``, cross-multiplied by ``N^2``."""
    n, e, m = g.n, g.edge_count, f.edge_count
    room = n * n - 2 * n * f.n
    return room >= 0 and 48 * m * 4 * e * e <= room * n * n


def embed_by_degeneracy(f: Graph, g: Graph, *, strict: bool = True) -> Embedding | None:
    """Complement embedding of ``F`` seeded by an independent set among the low-degree vertices."""
    if f.edge_count == 0:
        if g.n < f.n:
            raise PreconditionError(f"host has {g.n} vertices, pattern needs {f.n}")
        return Embedding(f, g, tuple(range(f.n)), Mode.COMPLEMENT)
    if not degeneracy_condition(f, g):
        if strict:
            raise PreconditionError(
                f"average degree {float(g.average_degree()):.3f} too large for N={g.n}, m={f.edge_count}"
            )
        if g.n < f.n:
            return None
    seed = greedy_independent_set(g, low_degree_mask(g))
    take = min(len(seed), f.n)
    anchors = sorted(range(f.n), key=lambda v: (-f.degree(v), v))[:take]
    placed = dict(zip(anchors, seed))
    if take == f.n:
        return embedding_from_partial(f, g, placed, Mode.COMPLEMENT).check()
    anchor_degree = max(g.degree(v) for v in placed.values())
    certified = greedy_condition(g.n, f.edge_count, take, anchor_degree, g.average_degree(), f.n)
    found = greedy_extend(f, anchors, placed, g, strict=strict and certified)
    if found is None:
        logger.debug("degeneracy embedding: uncertified extension of %s anchors ran dry", take)
    return found


def bipartite_greedy_extend(
    pattern: BipartitePattern,
    a_anchor: tuple[int, ...] | list[int],
    b_anchor: tuple[int, ...] | list[int],
    placed: Mapping[int, int],
    g: Graph,
    *,
    strict: bool = True,
) -> Embedding | None:
    """Two-phase extension: side B into the low-degree vertices first, then side A anywhere."""
    f = pattern.graph
    a_anchor, b_anchor = tuple(a_anchor), tuple(b_anchor)
    if set(placed) != set(a_anchor) | set(b_anchor):
        raise PreconditionError("partial embedding must cover exactly A' and B'")
    _check_top(f, a_anchor, pattern.side_a, "A'")
    _check_top(f, b_anchor, pattern.side_b, "B'")
    _check_partial(f, g, placed)
    n, m, d, k, ell = g.n, f.edge_count, g.average_degree(), len(a_anchor), len(b_anchor)
    if strict:
        deg_a = max((g.degree(placed[a]) for a in a_anchor), default=0)
        deg_b = max((g.degree(placed[b]) for b in b_anchor), default=0)
        if len(b_anchor) != len(pattern.side_b) and n * (ell + 1) < 2 * m * deg_a + 2 * f.n * (ell + 1):
            raise PreconditionError(f"item 1 fails: N={n}, m={m}, l={ell}, max degree of A' image={deg_a}", item="item1")
        if len(a_anchor) != len(pattern.side_a) and n * (k + 1) < m * max(Fraction(deg_b), 2 * d) + f.n * (k + 1):
            raise PreconditionError(f"item 2 fails: N={n}, m={m}, k={k}, max degree of B' image={deg_b}", item="item2")
    state = dict(placed)
    used = bits(state.values())
    b_rest = sorted((u for u in pattern.side_b if u not in state), key=lambda u: (-f.degree(u), u))
    a_rest = sorted((u for u in pattern.side_a if u not in state), key=lambda u: (-f.degree(u), u))
    used = _place(f, g, state, b_rest, low_degree_mask(g), used)
    if used is not None:
        used = _place(f, g, state, a_rest, g.vertex_mask, used)
    if used is None:
        if strict:
            raise InvariantViolation("bipartite greedy extension ran out of candidates")
        return None
    return embedding_from_partial(f, g, state, Mode.COMPLEMENT).check()


# --- few-triangle independent sets ---


def few_triangle_target(g: Graph, t: int) -> float | None:
    """``0.1 (N/d)(log d - log(T/N)/2)`` when ``d >= 3``, the count is within ``T`` and the value is positive."""
    if g.n == 0:
        return None
    d = 2 * g.edge_count / g.n
    if d < 3 or triangle_count(g) > t:
        return None
    value = 0.1 * (g.n / d) * (math.log(d) - 0.5 * math.log(max(t, 1) / g.n))
    return value if value > 0 else None


def _better(candidate: tuple[int, ...], best: tuple[int, ...]) -> bool:
    return len(candidate) > len(best) or (len(candidate) == len(best) and candidate < best)


@dataclass
class _SwapSearch:
    g: Graph
    budget: int
    spent: int = field(default=0)

    def improve(self, start: tuple[int, ...]) -> tuple[int, ...]:
        """Add free vertices, then apply 1-out/2-in swaps until none applies or the budget is spent."""
        rows = self.g.rows
        s = bits(start)
        improved = True
        while improved and self.spent < self.budget:
            improved = False
            for v in members(self.g.vertex_mask & ~s):
                if not rows[v] & s:
                    s |= 1 << v
            for x in members(s):
                self.spent += 1
                if self.spent > self.budget:
                    break
                tight = [v for v in members(rows[x] & ~s) if rows[v] & s == 1 << x]
                tight_mask = bits(tight)
                for u in tight:
                    partners = tight_mask & ~rows[u] & ~((1 << (u + 1)) - 1)
                    if partners:
                        w = lowest(partners)
                        s = (s & ~(1 << x)) | 1 << u | 1 << w
                        improved = True
                        break
                if improved:
                    break
        return tuple(members(s))


def few_triangle_independent_set(
    g: Graph, t: int, *, restarts: int = 64, swap_budget: int = 10_000, seed: int = 0
) -> IndependentSetReport:
    """Best of min-degree greedy, seeded random-order restarts and swap local search."""
    best, source = greedy_independent_set(g), "greedy"
    for i in range(restarts):
        order = list(range(g.n))
        random.Random(seed ^ i).shuffle(order)
        found = greedy_in_order(g, order)
        if _better(found, best):
            best, source = found, "restart"
    polished = _SwapSearch(g, swap_budget).improve(best)
    if _better(polished, best):
        best, source = polished, "local-search"
    target = few_triangle_target(g, t)
    met = target is None or len(best) >= target
    logger.debug("few-triangle search: size %s via %s (target %s)", len(best), source, target)
    return IndependentSetReport(vertices=best, target=target, target_met=met, source=source)
