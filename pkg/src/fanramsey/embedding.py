"""Pattern-to-host vertex maps and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .graph import Graph


@dataclass(frozen=True)
class Embedding:
    """Injective map from ``pattern`` vertices into ``host`` vertices.

    With ``complement=True`` pattern edges must land on non-edges of ``host``
    (i.e. on edges of its complement).  ``mapping`` may be partial while an
    embedding is being built; finished witnesses are always total.
    """

    pattern: Graph
    host: Graph
    mapping: dict[int, int] = field(default_factory=dict)
    complement: bool = False

    @property
    def is_total(self) -> bool:
        return len(self.mapping) == self.pattern.order

    def image(self, v: int) -> int:
        return self.mapping[v]

    def pairs(self) -> list[list[int]]:
        return [[p, self.mapping[p]] for p in sorted(self.mapping)]


class EmbeddingCheck(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_embedding(e: Embedding, allow_partial: bool = False) -> EmbeddingCheck:
    """Accept iff ``e`` is injective and edge-preserving; otherwise report
    the first violation found (scanning pattern vertices in id order)."""
    host = e.host
    n = host.order
    seen: dict[int, int] = {}
    for p in sorted(e.mapping):
        h = e.mapping[p]
        if not 0 <= p < e.pattern.order:
            return EmbeddingCheck(False, f"pattern vertex {p} out of range")
        if not 0 <= h < n:
            return EmbeddingCheck(False, f"image {h} of pattern vertex {p} out of range")
        if h in seen:
            return EmbeddingCheck(False, f"pattern vertices {seen[h]} and {p} both map to {h}")
        seen[h] = p
    if not allow_partial:
        for p in range(e.pattern.order):
            if p not in e.mapping:
                return EmbeddingCheck(False, f"pattern vertex {p} is unmapped")
    for u, v in e.pattern.edges():
        if u not in e.mapping or v not in e.mapping:
            continue
        a, b = e.mapping[u], e.mapping[v]
        adjacent = host.has_edge(a, b)
        if adjacent == e.complement:
            side = "complement" if e.complement else "host"
            return EmbeddingCheck(False, f"pattern edge {u}-{v} maps to {a}-{b}, not an edge of the {side}")
    return EmbeddingCheck(True)
