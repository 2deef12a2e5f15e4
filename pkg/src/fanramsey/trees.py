"""Trees, unicyclic graphs, and the three structural lemmas used by the engines.

* :func:`lemma1_degree_two_set` picks degree-2 vertices on the large colour
  class with pairwise disjoint neighbourhoods and no leaf neighbours.
* :func:`lemma2_separator` finds a vertex splitting a tree into two sides of
  between one and two thirds of the remaining vertices.
* :func:`lemma3_greedy_embed` embeds a tree into any host of large minimum
  degree with one vertex pinned.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from math import ceil

import numpy as np

from .embedding import Embedding
from .errors import EmbeddingError
from .graph import Graph, as_mask, bits, iter_bits, lowest


def _grow(adj: list[int], start: int, allowed: int) -> int:
    """Mask of the component of ``start`` inside ``allowed``."""
    comp = frontier = 1 << start
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        frontier = nxt & allowed & ~comp
        comp |= frontier
    return comp


class Tree:
    """A tree on vertices ``0..n-1`` with its bipartition and leaf set cached.

    ``a`` is the larger colour class (ties: the class holding vertex 0).
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
        if n < 1:
            raise ValueError("a tree needs at least one vertex")
        if len(edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        self.n = n
        self.edges = tuple(sorted(edges))
        self.graph = Graph.from_edges(n, self.edges)
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge")
        self.adj_mask: list[int] = list(self.graph.rows)
        if _grow(self.adj_mask, 0, self.graph.vertex_mask) != self.graph.vertex_mask:
            raise ValueError("edge set is not connected")
        self.adj: list[list[int]] = [bits(r) for r in self.adj_mask]
        self.degree: list[int] = [len(a) for a in self.adj]
        self.leaves: int = sum(1 << v for v in range(n) if self.degree[v] == 1)

        colour = [-1] * n
        colour[0] = 0
        order = [0]
        parent = [-1] * n
        for v in order:
            for u in self.adj[v]:
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    parent[u] = v
                    order.append(u)
        c0 = sum(1 << v for v in range(n) if colour[v] == 0)
        c1 = self.graph.vertex_mask & ~c0
        if c1.bit_count() > c0.bit_count():
            c0, c1 = c1, c0
        self.a, self.b = c0, c1
        # rooted at 0, used for component sizes
        self._parent = parent
        self._order = order
        size = [1] * n
        for v in reversed(order[1:]):
            size[parent[v]] += size[v]
        self._size = size

    # -- queries -----------------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return self.graph.vertex_mask

    @property
    def leaf_count(self) -> int:
        return self.leaves.bit_count()

    def max_degree(self) -> int:
        return max(self.degree)

    def leaf_neighbors(self, v: int) -> int:
        return self.adj_mask[v] & self.leaves

    def component_size(self, v: int, u: int) -> int:
        """Size of the component of ``T - v`` containing neighbour ``u``."""
        if self._parent[u] == v:
            return self._size[u]
        return self.n - self._size[v]

    def branches(self, x: int, within: int | None = None) -> list[tuple[int, int]]:
        """Components of ``T - x`` as ``(root, mask)`` with ``root`` the
        neighbour of ``x`` inside the component."""
        allowed = self.vertex_mask & ~(1 << x)
        if within is not None:
            allowed &= within
        return [(u, _grow(self.adj_mask, u, allowed)) for u in self.adj[x] if allowed >> u & 1]

    def forest_components(self, removed: int) -> list[int]:
        allowed = self.vertex_mask & ~removed
        comps = []
        seen = 0
        for v in iter_bits(allowed):
            if seen >> v & 1:
                continue
            c = _grow(self.adj_mask, v, allowed)
            seen |= c
            comps.append(c)
        return comps

    def is_connected_subset(self, s: int) -> bool:
        return s == 0 or _grow(self.adj_mask, lowest(s), s) == s

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, leaves={self.leaf_count}, |A|={self.a.bit_count()})"


def bipartition(t: Tree) -> tuple[int, int]:
    """Colour classes ``(A, B)`` with ``|A| >= |B|``."""
    return t.a, t.b


# -- generators ----------------------------------------------------------------


def prufer_decode(sequence: Iterable[int], n: int | None = None) -> Tree:
    seq = [int(x) for x in sequence]
    if n is None:
        n = len(seq) + 2
    if n < 2 or len(seq) != n - 2:
        raise ValueError(f"a Prufer sequence for n={n} has length {n - 2}")
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"sequence entry {x} out of range 0..{n - 1}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((u, v))
    return Tree(n, edges)


def prufer_encode(t: Tree) -> list[int]:
    if t.n < 2:
        raise ValueError("Prufer sequences need n >= 2")
    degree = list(t.degree)
    removed = [False] * t.n
    heap = [v for v in range(t.n) if degree[v] == 1]
    heapq.heapify(heap)
    seq = []
    for _ in range(t.n - 2):
        leaf = heapq.heappop(heap)
        removed[leaf] = True
        nb = next(u for u in t.adj[leaf] if not removed[u])
        seq.append(nb)
        degree[nb] -= 1
        if degree[nb] == 1:
            heapq.heappush(heap, nb)
    return seq


def random_tree(n: int, seed: int | None = None) -> Tree:
    """Uniform labelled tree via a random Prufer sequence."""
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(0, 1)])
    rng = np.random.default_rng(seed)
    return prufer_decode(rng.integers(0, n, size=n - 2).tolist(), n)


def path_tree(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    return Tree(n, [(0, i) for i in range(1, n)])


def broom_tree(n: int, bristles: int) -> Tree:
    """Path on ``n - bristles`` vertices with ``bristles`` leaves hung on its
    last vertex."""
    handle = n - bristles
    if handle < 1:
        raise ValueError("broom needs a handle")
    edges = [(i, i + 1) for i in range(handle - 1)]
    edges += [(handle - 1, handle + j) for j in range(bristles)]
    return Tree(n, edges)


def caterpillar_tree(n: int, spine: int, seed: int | None = None) -> Tree:
    """Spine path of ``spine`` vertices, remaining vertices hung on random
    spine vertices."""
    rng = np.random.default_rng(seed)
    edges = [(i, i + 1) for i in range(spine - 1)]
    for v in range(spine, n):
        edges.append((int(rng.integers(0, spine)), v))
    return Tree(n, edges)


def relabel_tree(t: Tree, perm: list[int]) -> Tree:
    return Tree(t.n, [(perm[u], perm[v]) for u, v in t.edges])


# -- degree-two sets -------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeTwoSet:
    d: int
    f: int
    bound: int  # ceil of the guaranteed size, may be <= 0

    @property
    def size(self) -> int:
        return self.d.bit_count()


def degree_two_bound(t: Tree, f_size: int) -> int:
    return ceil((t.n - 8 * t.leaf_count - 2 * f_size + 12) / 4)


def lemma1_degree_two_set(t: Tree, f: int | Iterable[int] = 0) -> DegreeTwoSet:
    """Independent degree-2 set on the large side with disjoint neighbourhoods.

    Candidates are vertices of ``A`` of degree 2, outside ``f``, with no
    neighbour that is a leaf or has degree >= 3.  Two candidates conflict when
    they share a neighbour; the conflict graph is a forest and the larger
    colour class of each of its components is kept.
    """
    f = as_mask(f)
    high = sum(1 << v for v in range(t.n) if t.degree[v] >= 3)
    blocked = high | t.leaves
    cand = [
        v for v in iter_bits(t.a & ~f)
        if t.degree[v] == 2 and not (t.adj_mask[v] & blocked)
    ]
    cmask = sum(1 << v for v in cand)
    # conflict edges: two candidates at distance two through a degree-2 middle
    conflict: dict[int, list[int]] = {v: [] for v in cand}
    for v in cand:
        for mid in t.adj[v]:
            for u in t.adj[mid]:
                if u != v and cmask >> u & 1:
                    conflict[v].append(u)
    colour: dict[int, int] = {}
    d = 0
    for v in cand:
        if v in colour:
            continue
        colour[v] = 0
        comp = [v]
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in conflict[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    comp.append(y)
                    queue.append(y)
                elif colour[y] == colour[x]:
                    raise AssertionError("conflict graph is not bipartite")
        side0 = [x for x in comp if colour[x] == 0]
        side1 = [x for x in comp if colour[x] == 1]
        if len(side1) > len(side0) or (len(side1) == len(side0) and min(side1, default=t.n) < min(side0)):
            side0 = side1
        for x in side0:
            d |= 1 << x
    return DegreeTwoSet(d, f, degree_two_bound(t, f.bit_count()))


def check_degree_two_set(t: Tree, res: DegreeTwoSet) -> list[str]:
    """All violated predicates, empty when ``res`` is a valid set."""
    bad = []
    if res.d & ~t.a:
        bad.append("D not inside A")
    if res.d & res.f:
        bad.append("D meets F")
    seen = 0
    for v in iter_bits(res.d):
        if t.degree[v] != 2:
            bad.append(f"vertex {v} has degree {t.degree[v]}")
        if t.adj_mask[v] & t.leaves:
            bad.append(f"vertex {v} is adjacent to a leaf")
        if t.adj_mask[v] & seen:
            bad.append(f"vertex {v} shares a neighbour with an earlier vertex")
        seen |= t.adj_mask[v]
    if res.bound > 0 and res.size < res.bound:
        bad.append(f"|D|={res.size} below bound {res.bound}")
    return bad


# -- balanced separator -----------------------------------------------------------------


@dataclass(frozen=True)
class SeparatorResult:
    vertex: int
    k: int
    h: int


def lemma2_separator(t: Tree) -> SeparatorResult:
    """Walk from the lowest-id leaf towards the heavy side, then split."""
    n = t.n
    if n < 3:
        raise ValueError("separator needs at least 3 vertices")
    v = lowest(t.leaves)
    while True:
        heavy = None
        for u in t.adj[v]:
            if 2 * t.component_size(v, u) >= n:
                heavy = u
                break
        if heavy is None:
            break
        if 2 * t.component_size(v, heavy) == n:
            comp = _grow(t.adj_mask, heavy, t.vertex_mask & ~(1 << v))
            rest = t.vertex_mask & ~(1 << v) & ~comp
            return SeparatorResult(v, comp, rest)
        v = heavy
    comps = [c for _, c in t.branches(v)]
    if len(comps) == 2:
        return SeparatorResult(v, comps[0], comps[1])
    comps.sort(key=lambda c: (c.bit_count(), lowest(c)))
    total = 0
    t_idx = 0
    for i, c in enumerate(comps):
        if 3 * (total + c.bit_count()) <= n - 1:
            total += c.bit_count()
            t_idx = i + 1
        else:
            break
    nxt = comps[t_idx]
    if 3 * (total + nxt.bit_count()) <= 2 * (n - 1):
        k = 0
        for c in comps[: t_idx + 1]:
            k |= c
    else:
        k = nxt
    rest = t.vertex_mask & ~(1 << v) & ~k
    return SeparatorResult(v, k, rest)


def check_separator(t: Tree, s: SeparatorResult) -> list[str]:
    bad = []
    n1 = t.n - 1
    if s.k & s.h:
        bad.append("parts overlap")
    if (s.k | s.h | (1 << s.vertex)) != t.vertex_mask or (s.k | s.h) >> s.vertex & 1:
        bad.append("parts do not cover T - v")
    for part in (s.k, s.h):
        size = part.bit_count()
        if not (3 * size >= n1 and 3 * size <= 2 * n1):
            bad.append(f"part size {size} outside [{n1}/3, 2*{n1}/3]")
    for u in iter_bits(s.k):
        if t.adj_mask[u] & s.h:
            bad.append(f"edge from {u} crosses the split")
    return bad


# -- greedy embedding ------------------------------------------------------------------


def lemma3_greedy_embed(
    t: Tree,
    h: Graph,
    w1: int,
    w2: int,
    *,
    skip: int = 0,
    used: int = 0,
) -> Embedding:
    """Embed ``t - skip`` into ``h`` with ``w1 -> w2``.

    Breadth-first from ``w1``; each vertex goes to the lowest-id unused host
    neighbour of its parent's image.  Host vertices in ``used`` are avoided.
    """
    size = t.n - (skip & t.vertex_mask).bit_count()
    if h.min_degree() < size - 1:
        raise EmbeddingError(f"min degree {h.min_degree()} < {size - 1}")
    if skip >> w1 & 1 or used >> w2 & 1:
        raise EmbeddingError("pinned vertex is skipped or already used")
    mapping = {w1: w2}
    taken = used | (1 << w2)
    queue = deque([w1])
    placed = 1 << w1 | skip
    while queue:
        p = queue.popleft()
        for c in t.adj[p]:
            if placed >> c & 1:
                continue
            free = h.neighbors(mapping[p]) & ~taken
            if not free:
                raise EmbeddingError(f"no free neighbour for pattern vertex {c}")
            img = lowest(free)
            mapping[c] = img
            taken |= 1 << img
            placed |= 1 << c
            queue.append(c)
    return Embedding(t.graph, h, mapping)


# -- unicyclic graphs ------------------------------------------------------------


class UnicyclicGraph:
    """Connected graph with exactly one cycle.

    ``cycle`` lists the cycle vertices in cyclic order.  ``t1``/``t2`` is an
    optional designated cycle edge; see :func:`unicyclic_normalize`.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], t1: int | None = None, t2: int | None = None):
        edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
        if len(edges) != n:
            raise ValueError(f"a unicyclic graph on {n} vertices has {n} edges, got {len(edges)}")
        if len(set(edges)) != n:
            raise ValueError("duplicate edge")
        self.n = n
        self.edges = tuple(sorted(edges))
        self.graph = Graph.from_edges(n, self.edges)
        adj = list(self.graph.rows)
        if _grow(adj, 0, self.graph.vertex_mask) != self.graph.vertex_mask:
            raise ValueError("edge set is not connected")
        self.degree = self.graph.degrees()
        # strip leaves until only the 2-core (the cycle) remains
        deg = list(self.degree)
        alive = self.graph.vertex_mask
        stack = [v for v in range(n) if deg[v] == 1]
        while stack:
            v = stack.pop()
            alive &= ~(1 << v)
            for u in iter_bits(adj[v] & alive):
                deg[u] -= 1
                if deg[u] == 1:
                    stack.append(u)
        self.cycle_mask = alive
        start = lowest(alive)
        cyc = [start]
        prev, cur = -1, start
        while True:
            nxt = [u for u in iter_bits(adj[cur] & alive) if u != prev]
            step = min(nxt)
            if step == start:
                break
            cyc.append(step)
            prev, cur = cur, step
            if len(cyc) > n:
                raise AssertionError("cycle walk did not close")
        self.cycle = cyc
        if (t1 is None) != (t2 is None):
            raise ValueError("give both t1 and t2 or neither")
        if t1 is not None:
            if not (alive >> t1 & 1 and alive >> t2 & 1 and self.graph.has_edge(t1, t2)):
                raise ValueError(f"{t1}-{t2} is not a cycle edge")
            if not self.is_cycle and self.degree[t1] < 3:
                raise ValueError(f"removing {t1}-{t2} leaves {t1} as a leaf")
        self.t1, self.t2 = t1, t2

    @property
    def is_cycle(self) -> bool:
        return len(self.cycle) == self.n

    @property
    def cycle_length(self) -> int:
        return len(self.cycle)

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.t1 is not None:
            out["t1"], out["t2"] = self.t1, self.t2
        return out

    def __repr__(self) -> str:
        return f"UnicyclicGraph(n={self.n}, cycle_length={self.cycle_length})"


def unicyclic_normalize(u: UnicyclicGraph) -> tuple[int, int, Tree]:
    """Pick the cycle edge ``t1 t2`` to delete, ``t1`` of degree >= 3.

    Defaults to the lowest-id cycle vertex of degree >= 3 and its lower-id
    cycle neighbour.  Pure cycles are rejected.
    """
    if u.is_cycle:
        raise ValueError("pure cycle: route to the cycle branch")
    if u.t1 is not None:
        t1, t2 = u.t1, u.t2
    else:
        t1 = min(v for v in u.cycle if u.degree[v] >= 3)
        i = u.cycle.index(t1)
        t2 = min(u.cycle[i - 1], u.cycle[(i + 1) % len(u.cycle)])
    key = (min(t1, t2), max(t1, t2))
    tree = Tree(u.n, [e for e in u.edges if e != key])
    if tree.degree[t1] < 2:
        raise AssertionError("t1 became a leaf")
    return t1, t2, tree


def random_unicyclic(n: int, seed: int | None = None, cycle_length: int | None = None) -> UnicyclicGraph:
    """Random unicyclic graph; the cycle length is drawn from ``3..n-1``
    unless given.  Vertices are randomly relabelled."""
    rng = np.random.default_rng(seed)
    if cycle_length is None:
        cycle_length = int(rng.integers(3, n))
    k = cycle_length
    if not 3 <= k <= n:
        raise ValueError("cycle length must lie in 3..n")
    edges = [(i, (i + 1) % k) for i in range(k)]
    for v in range(k, n):
        edges.append((int(rng.integers(0, v)), v))
    perm = rng.permutation(n).tolist()
    return UnicyclicGraph(n, [(perm[a], perm[b]) for a, b in edges])


def near_cycle(n: int) -> UnicyclicGraph:
    """Cycle on ``n - 1`` vertices with one pendant vertex."""
    edges = [(i, (i + 1) % (n - 1)) for i in range(n - 1)] + [(0, n - 1)]
    return UnicyclicGraph(n, edges)


# -- JSON ------------------------------------------------------------------------


def pattern_from_json(obj: dict) -> Tree | UnicyclicGraph:
    n = int(obj["n"])
    edges = [tuple(e) for e in obj["edges"]]
    if len(edges) == n - 1:
        return Tree(n, edges)
    if len(edges) == n:
        return UnicyclicGraph(n, edges, obj.get("t1"), obj.get("t2"))
    raise ValueError(f"{len(edges)} edges on {n} vertices is neither a tree nor unicyclic")


def load_pattern(path) -> Tree | UnicyclicGraph:
    with open(path) as fh:
        return pattern_from_json(json.load(fh))
