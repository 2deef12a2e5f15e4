"""Witness objects returned by the engines and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .embedding import Embedding, check_embedding
from .errors import TheoremViolation
from .graph import Graph, fan_graph
from .matching import FanEmbedding


@dataclass(frozen=True)
class Witness:
    """``kind`` is ``"fan"`` (pattern F_m inside G), ``"tree"`` or
    ``"unicyclic"`` (pattern inside the complement of G).

    ``route`` names the construction that produced the witness; it is for
    diagnostics only and is not part of the JSON form.
    """

    kind: str
    embedding: Embedding
    n: int
    m: int
    center: int | None = None
    t1: int | None = None
    t2: int | None = None
    route: str = field(default="", compare=False)

    def verify(self) -> None:
        res = check_embedding(self.embedding)
        if not res:
            raise TheoremViolation(self.route or self.kind, f"witness failed verification: {res.reason}")
        if self.kind == "unicyclic":
            img = self.embedding.mapping
            a, b = img[self.t1], img[self.t2]
            if self.embedding.host.has_edge(a, b):
                raise TheoremViolation(self.route, f"images {a}, {b} of the closing edge are adjacent in G")

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "fan":
            out["center"] = self.center
        out["map"] = self.embedding.pairs()
        out["m"] = self.m
        out["n"] = self.n
        if self.kind == "unicyclic":
            out["t1"] = self.embedding.mapping[self.t1]
            out["t2"] = self.embedding.mapping[self.t2]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def fan_witness(g: Graph, fan: FanEmbedding, n: int, route: str = "fan scan") -> Witness:
    """Fan pattern: apex 0, triangle ``i`` on ``(2i+1, 2i+2)``."""
    pattern = fan_graph(fan.m)
    mapping = {0: fan.center}
    for i, (a, b) in enumerate(fan.pairs):
        mapping[2 * i + 1] = a
        mapping[2 * i + 2] = b
    w = Witness("fan", Embedding(pattern, g, mapping), n, fan.m, center=fan.center, route=route)
    w.verify()
    return w


def complement_witness(
    kind: str,
    pattern: Graph,
    g: Graph,
    mapping: dict[int, int],
    n: int,
    m: int,
    route: str,
    t1: int | None = None,
    t2: int | None = None,
) -> Witness:
    """Wrap and verify an embedding of ``pattern`` into the complement of ``g``."""
    w = Witness(kind, Embedding(pattern, g, dict(mapping), complement=True), n, m, t1=t1, t2=t2, route=route)
    w.verify()
    return w
