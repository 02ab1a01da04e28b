"""Embeddings and the tagged results every dichotomy driver returns."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from src.errors import InvariantViolation
from src.services.graph import Graph, bits


class Mode(StrEnum):
    HOST = "HOST"
    COMPLEMENT = "COMPLEMENT"


class Tag(StrEnum):
    PATTERN_COPY = "PATTERN_COPY"
    COMPLEMENT_EMBEDDING = "COMPLEMENT_EMBEDDING"
    INDEPENDENT_SET = "INDEPENDENT_SET"
    BICLIQUE_HOLE = "BICLIQUE_HOLE"
    FAILURE = "FAILURE"


@dataclass(frozen=True)
class Embedding:
    """Injective map ``pattern vertex i -> mapping[i]`` into ``host`` (or its complement)."""

    pattern: Graph
    host: Graph
    mapping: tuple[int, ...]
    mode: Mode

    def problems(self) -> list[str]:
        out = []
        if len(self.mapping) != self.pattern.n:
            return [f"map covers {len(self.mapping)} of {self.pattern.n} pattern vertices"]
        if any(not 0 <= v < self.host.n for v in self.mapping):
            return ["image outside the host"]
        if len(set(self.mapping)) != len(self.mapping):
            out.append("map is not injective")
        want = self.mode is Mode.HOST
        for a, b in self.pattern.edges():
            if self.host.has_edge(self.mapping[a], self.mapping[b]) != want:
                kind = "non-edge" if want else "edge"
                out.append(f"pattern edge ({a}, {b}) lands on host {kind}")
                break
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def check(self) -> Embedding:
        """Raise ``InvariantViolation`` unless valid; returns ``self`` for chaining."""
        issues = self.problems()
        if issues:
            raise InvariantViolation(f"invalid {self.mode} embedding: {issues[0]}")
        return self

    @property
    def image(self) -> int:
        return bits(self.mapping)


def embedding_from_partial(pattern: Graph, host: Graph, placed: dict[int, int], mode: Mode) -> Embedding:
    return Embedding(pattern, host, tuple(placed[v] for v in range(pattern.n)), mode)


@dataclass(frozen=True)
class DichotomyResult:
    tag: Tag
    embedding: Embedding | None = None
    vertices: tuple[int, ...] = ()
    hole: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    reason: str = ""
    detail: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def pattern_copy(cls, embedding: Embedding, **detail: Any) -> DichotomyResult:
        return cls(Tag.PATTERN_COPY, embedding=embedding, detail=detail)

    @classmethod
    def complement_embedding(cls, embedding: Embedding, **detail: Any) -> DichotomyResult:
        return cls(Tag.COMPLEMENT_EMBEDDING, embedding=embedding, detail=detail)

    @classmethod
    def independent_set(cls, vertices: tuple[int, ...] | list[int], **detail: Any) -> DichotomyResult:
        return cls(Tag.INDEPENDENT_SET, vertices=tuple(sorted(vertices)), detail=detail)

    @classmethod
    def biclique_hole(cls, left: tuple[int, ...] | list[int], right: tuple[int, ...] | list[int], **detail: Any) -> DichotomyResult:
        return cls(Tag.BICLIQUE_HOLE, hole=(tuple(sorted(left)), tuple(sorted(right))), detail=detail)

    @classmethod
    def failure(cls, reason: str, **detail: Any) -> DichotomyResult:
        return cls(Tag.FAILURE, reason=reason, detail=detail)

    @property
    def is_failure(self) -> bool:
        return self.tag is Tag.FAILURE

    def with_detail(self, **detail: Any) -> DichotomyResult:
        return DichotomyResult(self.tag, self.embedding, self.vertices, self.hole, self.reason, {**self.detail, **detail})

    def to_document(self) -> dict[str, Any]:
        """JSON-ready witness document with sorted keys and no timing data."""
        doc: dict[str, Any] = {"tag": str(self.tag)}
        if self.embedding is not None:
            doc["mode"] = str(self.embedding.mode)
            doc["map"] = {str(i): v for i, v in enumerate(self.embedding.mapping)}
        if self.tag is Tag.INDEPENDENT_SET:
            doc["vertices"] = list(self.vertices)
        if self.hole is not None:
            doc["left"], doc["right"] = list(self.hole[0]), list(self.hole[1])
        if self.reason:
            doc["reason"] = self.reason
        if self.detail:
            doc["detail"] = {k: self.detail[k] for k in sorted(self.detail)}
        return doc


class WitnessFound(Exception):
    """Carries a finished result out of a nested search (e.g. an independent set found mid-recursion)."""

    def __init__(self, result: DichotomyResult):
        super().__init__(result.tag)
        self.result = result
