"""Gluing host copies along a vertex, and peeling patterns into one-point amalgams."""

import logging
from dataclasses import dataclass
from typing import Callable

from src.services.graph import Graph, Induced, bits, members
from src.services.patterns import glue
from src.services.structure import articulation_points, biconnected_components, is_connected
from src.services.witness import Embedding, Mode

logger = logging.getLogger(__name__)

# inner(pattern, host, within_mask) -> HOST-mode embedding in host ids, or None
InnerSolver = Callable[[Graph, Graph, int], Embedding | None]


def glue_embedding(
    h1: Graph,
    v1: int,
    h2: Graph,
    v2: int,
    g: Graph,
    inner: InnerSolver,
    copies: int | None = None,
    direct: InnerSolver | None = None,
) -> Embedding | None:
    """Copy of the amalgam ``glue(h1, v1, h2, v2)`` in ``g``.

    Collects vertex-disjoint copies of ``h1``, then looks for ``h2`` among their images of
    ``v1``. When that fails the amalgam is searched for directly with ``direct`` (default
    ``inner``), which must not split the amalgam again.
    """
    amalgam = glue(h1, v1, h2, v2)
    limit = copies if copies is not None else g.n
    remaining = g.vertex_mask
    found: list[Embedding] = []
    while len(found) < limit and remaining.bit_count() >= h1.n:
        emb = inner(h1, g, remaining)
        if emb is None:
            break
        found.append(emb)
        remaining &= ~emb.image
    hubs = {emb.mapping[v1]: emb for emb in found}
    logger.debug("gluing: %s disjoint copies of the first piece", len(found))
    if len(hubs) >= h2.n:
        second = inner(h2, g, bits(hubs))
        if second is not None:
            first = hubs[second.mapping[v2]]
            mapping = list(first.mapping)
            mapping.extend(second.mapping[u] for u in range(h2.n) if u != v2)
            return Embedding(amalgam, g, tuple(mapping), Mode.HOST).check()
    whole = (direct or inner)(amalgam, g, g.vertex_mask)
    if whole is not None:
        return Embedding(amalgam, g, whole.mapping, Mode.HOST).check()
    return None


@dataclass(frozen=True)
class LeafSplit:
    """``H`` written as ``glue(rest, rest_cut, block, block_cut)`` around a leaf block."""

    pattern: Graph
    rest: Induced
    rest_cut: int
    block: Induced
    block_cut: int

    def original_ids(self) -> list[int]:
        """Pattern id of each amalgam vertex."""
        tail = [v for i, v in enumerate(self.block.vertices) if i != self.block_cut]
        return list(self.rest.vertices) + tail

    def lift(self, emb: Embedding) -> Embedding:
        mapping = [0] * self.pattern.n
        for amalgam_id, original in enumerate(self.original_ids()):
            mapping[original] = emb.mapping[amalgam_id]
        return Embedding(self.pattern, emb.host, tuple(mapping), emb.mode).check()


def split_at_leaf_block(h: Graph) -> LeafSplit | None:
    """Peel off a leaf block (one containing a single cut vertex); ``None`` for 2-connected or disconnected ``h``."""
    if not is_connected(h):
        return None
    blocks = biconnected_components(h)
    if len(blocks) < 2:
        return None
    cuts = set(articulation_points(h))
    for block in blocks:
        shared = [v for v in block if v in cuts]
        if len(shared) != 1:
            continue
        cut = shared[0]
        drop = bits(block) & ~(1 << cut)
        rest = h.induced(members(h.vertex_mask & ~drop))
        piece = h.induced(block)
        return LeafSplit(h, rest, rest.vertices.index(cut), piece, piece.vertices.index(cut))
    return None
