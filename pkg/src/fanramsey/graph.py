"""Dense undirected simple graphs stored as one integer bitmask per vertex.

Vertex sets are plain ``int`` bitmasks as well: bit ``v`` set means ``v`` is in
the set.  Every set operation in the embedding engines is an ``&``/``|``/``~``
on these masks followed by ``int.bit_count``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import numpy as np


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def as_mask(s: int | Iterable[int]) -> int:
    """Accept either a bitmask or an iterable of vertex ids."""
    if isinstance(s, (int, np.integer)):
        return int(s)
    return mask_of(s)


def lowest(mask: int) -> int:
    """Lowest vertex id in a non-empty mask."""
    return (mask & -mask).bit_length() - 1


def take_lowest(mask: int, count: int) -> int:
    """Sub-mask holding the ``count`` lowest ids of ``mask``."""
    out = 0
    while count > 0 and mask:
        low = mask & -mask
        out |= low
        mask ^= low
        count -= 1
    return out


class Graph:
    """Immutable simple graph on vertices ``0..order-1``."""

    __slots__ = ("_order", "_rows", "_full")

    def __init__(self, order: int, rows: Iterable[int] | None = None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self._order = order
        self._full = (1 << order) - 1
        if rows is None:
            self._rows = (0,) * order
        else:
            rows = tuple(int(r) for r in rows)
            if len(rows) != order:
                raise ValueError(f"expected {order} rows, got {len(rows)}")
            for v, r in enumerate(rows):
                if r >> v & 1:
                    raise ValueError(f"loop at vertex {v}")
                if r & ~self._full:
                    raise ValueError(f"row {v} references a vertex out of range")
                for u in iter_bits(r):
                    if not rows[u] >> v & 1:
                        raise ValueError(f"adjacency not symmetric at {u},{v}")
            self._rows = rows

    @classmethod
    def _trusted(cls, order: int, rows: tuple[int, ...]) -> Graph:
        g = cls.__new__(cls)
        g._order = order
        g._full = (1 << order) - 1
        g._rows = rows
        return g

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * order
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {u},{v} out of range for order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(order, tuple(rows))

    # -- basic queries -----------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def vertex_mask(self) -> int:
        return self._full

    def __len__(self) -> int:
        return self._order

    def _check(self, v: int) -> None:
        if not 0 <= v < self._order:
            raise IndexError(f"vertex {v} out of range for order {self._order}")

    def neighbors(self, v: int) -> int:
        self._check(v)
        return self._rows[v]

    def non_neighbors(self, v: int) -> int:
        """Neighbourhood of ``v`` in the complement, as a mask."""
        self._check(v)
        return self._full & ~self._rows[v] & ~(1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self._rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return self._rows[v].bit_count()

    def degree_in(self, v: int, s: int | Iterable[int]) -> int:
        self._check(v)
        return (self._rows[v] & as_mask(s)).bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, r in enumerate(self._rows):
            for v in iter_bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def is_independent(self, s: int) -> bool:
        return all(not (self._rows[v] & s) for v in iter_bits(s))

    # -- derived graphs ----------------------------------------------------

    def complement(self) -> Graph:
        full = self._full
        rows = tuple(full & ~r & ~(1 << v) for v, r in enumerate(self._rows))
        return Graph._trusted(self._order, rows)

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph relabelled ``0..k-1`` in the order given."""
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for u in iter_bits(self._rows[v]):
                j = index.get(u)
                if j is not None:
                    r |= 1 << j
            rows.append(r)
        return Graph._trusted(len(vertices), tuple(rows))

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self._order, ((perm[u], perm[v]) for u, v in self.edges()))

    def components(self) -> list[int]:
        """Connected components as masks, ordered by lowest vertex."""
        seen = 0
        comps = []
        for v in range(self._order):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in iter_bits(frontier):
                    nxt |= self._rows[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._order, self._rows))

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self.edge_count()})"


def complement(g: Graph) -> Graph:
    return g.complement()


def degree_in(g: Graph, v: int, s: int | Iterable[int]) -> int:
    """Number of neighbours of ``v`` inside ``s``."""
    return g.degree_in(v, s)


# -- standard families -----------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    left = (1 << a) - 1
    right = ((1 << b) - 1) << a
    return Graph._trusted(a + b, tuple(right if v < a else left for v in range(a + b)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices centred at 0."""
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def fan_graph(m: int) -> Graph:
    """F_m: apex 0 plus triangles ``(0, 2i+1, 2i+2)``."""
    edges = []
    for i in range(m):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * m + 1, edges)


def matching_graph(m: int) -> Graph:
    """mK_2 on 2m vertices."""
    return Graph.from_edges(2 * m, ((2 * i, 2 * i + 1) for i in range(m)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_graph(n: int, edge_probability: float, seed: int | None = None) -> Graph:
    """G(n, p) drawn from ``numpy.random.default_rng(seed)``."""
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge_probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < edge_probability
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


# -- graph6 ------------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_order(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error("graph too large for graph6")


def write_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    n = g.order
    rows = g.rows
    out = [GRAPH6_HEADER] if header else []
    out.append(_encode_order(n))
    acc = 0
    nbits = 0
    chars = []
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | (rj >> i & 1)
            nbits += 1
            if nbits == 6:
                chars.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        chars.append(chr((acc << (6 - nbits)) + 63))
    out.append("".join(chars))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 string; surrounding whitespace is ignored."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range")
    data = [ord(ch) - 63 for ch in s]
    if data[0] != 63:
        n, pos = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise Graph6Error("truncated 36-bit order header")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        pos = 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 18-bit order header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = data[pos:]
    if len(payload) < need:
        raise Graph6Error(f"truncated payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise Graph6Error(f"trailing garbage: {len(payload) - need} extra bytes")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if payload[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))


def read_graph6_file(path) -> list[Graph]:
    with open(path) as fh:
        return [parse_graph6(line) for line in fh if line.strip()]


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
