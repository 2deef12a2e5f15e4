"""Maximum matching in general graphs, fan detection, and the decomposition
of a vertex neighbourhood into the sets ``U``, ``X`` and ``Y``.

The matcher is Edmonds' blossom algorithm (breadth-first search from one
exposed vertex at a time, contracting odd cycles by base relabelling).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph, as_mask, bits, iter_bits, lowest, mask_of


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def matched(self) -> int:
        return mask_of(v for e in self.edges for v in e)

    def mate(self) -> dict[int, int]:
        out = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out


@dataclass(frozen=True)
class TutteBergeCertificate:
    """Barrier set whose odd-component count proves a matching maximum:
    ``|V| - 2|M| == odd_components - |barrier|``."""

    barrier: int
    odd_components: int
    deficiency: int

    @property
    def tight(self) -> bool:
        return self.deficiency == self.odd_components - self.barrier.bit_count()


class _Blossom:
    """Edmonds search state over a local 0..k-1 relabelling."""

    def __init__(self, adj: list[list[int]]):
        self.adj = adj
        self.k = len(adj)
        self.match = [-1] * self.k

    def greedy(self) -> None:
        match = self.match
        for v in range(self.k):
            if match[v] < 0:
                for u in self.adj[v]:
                    if match[u] < 0:
                        match[u], match[v] = v, u
                        break

    def _lca(self, a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if self.match[a] < 0:
                break
            a = parent[self.match[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[self.match[b]]

    def _mark(self, v: int, b: int, child: int, base, parent, blossom) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[self.match[v]]] = True
            parent[v] = child
            child = self.match[v]
            v = parent[self.match[v]]

    def search(self, roots: list[int]):
        """Alternating forest grown from ``roots``.

        Returns ``(endpoint, parent, outer, base)``; ``endpoint`` is an exposed
        vertex reached at odd depth (an augmenting path exists), -2 when two
        trees meet, or -1 when the forest is complete.
        """
        k = self.k
        match = self.match
        parent = [-1] * k
        base = list(range(k))
        outer = [False] * k
        tree = [-1] * k
        queue = deque()
        for r in roots:
            outer[r] = True
            tree[r] = r
            queue.append(r)
        while queue:
            v = queue.popleft()
            for to in self.adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if outer[to]:
                    if tree[to] != tree[v]:
                        # two trees touch: only possible when the matching is not maximum
                        return -2, parent, outer, base
                    cur = self._lca(v, to, base, parent)
                    blossom = [False] * k
                    self._mark(v, cur, to, base, parent, blossom)
                    self._mark(to, cur, v, base, parent, blossom)
                    for i in range(k):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not outer[i]:
                                outer[i] = True
                                tree[i] = tree[v]
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    tree[to] = tree[v]
                    if match[to] < 0:
                        return to, parent, outer, base
                    outer[match[to]] = True
                    tree[match[to]] = tree[v]
                    queue.append(match[to])
        return -1, parent, outer, base

    def augment(self, to: int, parent: list[int]) -> None:
        match = self.match
        while to >= 0:
            pv = parent[to]
            ppv = match[pv]
            match[to], match[pv] = pv, to
            to = ppv

    def solve(self, limit: int | None = None) -> None:
        self.greedy()
        size = sum(1 for v in range(self.k) if self.match[v] > v)
        for root in range(self.k):
            if limit is not None and size >= limit:
                return
            if self.match[root] >= 0:
                continue
            end, parent, _, _ = self.search([root])
            if end >= 0:
                self.augment(end, parent)
                size += 1


def components_within(g: Graph, allowed: int) -> list[int]:
    comps = []
    rest = allowed
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.neighbors(u)
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def _local(g: Graph, vertices: int) -> tuple[list[int], list[list[int]]]:
    order = bits(vertices)
    index = {v: i for i, v in enumerate(order)}
    adj = [[index[u] for u in iter_bits(g.neighbors(v) & vertices)] for v in order]
    return order, adj


def max_matching(g: Graph, vertices: int | None = None, limit: int | None = None) -> Matching:
    """Maximum matching of ``g`` restricted to ``vertices`` (default: all).

    With ``limit`` the search stops once ``limit`` edges are matched, so the
    result is maximum only when it is smaller than ``limit``.
    """
    vertices = g.vertex_mask if vertices is None else as_mask(vertices) & g.vertex_mask
    order, adj = _local(g, vertices)
    solver = _Blossom(adj)
    solver.solve(limit)
    edges = tuple(
        (order[i], order[j]) for i, j in enumerate(solver.match) if j > i
    )
    return Matching(edges)


def tutte_berge_certificate(g: Graph, m: Matching, vertices: int | None = None) -> TutteBergeCertificate:
    """Gallai-Edmonds barrier from one search rooted at every exposed vertex.

    The odd (inner) vertices of the final alternating forest form the barrier.
    If ``m`` is maximum the certificate is tight; a slack certificate means
    either ``m`` is not maximum or the search found an augmenting path.
    """
    vertices = g.vertex_mask if vertices is None else as_mask(vertices) & g.vertex_mask
    order, adj = _local(g, vertices)
    index = {v: i for i, v in enumerate(order)}
    solver = _Blossom(adj)
    for u, v in m.edges:
        solver.match[index[u]] = index[v]
        solver.match[index[v]] = index[u]
    roots = [i for i in range(len(order)) if solver.match[i] < 0]
    end, parent, outer, base = solver.search(roots)
    deficiency = len(order) - 2 * len(m)
    if end != -1:
        return TutteBergeCertificate(0, -1, deficiency)
    barrier = 0
    for i in range(len(order)):
        if not outer[i] and parent[i] >= 0:
            barrier |= 1 << order[i]
    odd = sum(1 for c in components_within(g, vertices & ~barrier) if c.bit_count() % 2)
    return TutteBergeCertificate(barrier, odd, deficiency)


# -- fans --------------------------------------------------------------------


@dataclass(frozen=True)
class FanEmbedding:
    center: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.pairs)


def find_fan(g: Graph, m: int) -> FanEmbedding | None:
    """First vertex (lowest id) whose neighbourhood carries an ``m``-matching."""
    if m < 1:
        raise ValueError("m must be positive")
    for v in range(g.order):
        nb = g.neighbors(v)
        if nb.bit_count() < 2 * m:
            continue
        mt = max_matching(g, nb, limit=m)
        if len(mt) >= m:
            return FanEmbedding(v, tuple(sorted(mt.edges)[:m]))
    return None


def greedy_cross_matching(g: Graph, left: int, right: int, m: int) -> list[tuple[int, int]] | None:
    """Up to ``m`` disjoint ``g``-edges from ``left`` to ``right`` chosen in
    id order; ``None`` when fewer than ``m`` are found."""
    pairs = []
    used = 0
    for x in iter_bits(left):
        if used >> x & 1:
            continue
        free = g.neighbors(x) & right & ~used & ~(1 << x)
        if free:
            y = lowest(free)
            pairs.append((x, y))
            used |= 1 << x | 1 << y
            if len(pairs) == m:
                return pairs
    return None


# -- neighbourhood decomposition ----------------------------------------------


@dataclass(frozen=True)
class NeighborhoodStructure:
    center: int
    s: int
    m: int
    matching: Matching
    u: int
    k: int
    pairs: tuple[tuple[int, int], ...]  # (x_i, y_i)
    x: int
    y: int
    degree: int = field(default=0)  # |N_S(v)|

    @property
    def t(self) -> int:
        return len(self.pairs)


def neighborhood_structure(g: Graph, v: int, s: int | None, m: int) -> NeighborhoodStructure:
    """Split ``N_S(v)`` into a maximum matching ``M``, the independent rest
    ``U``, and the sets ``X``/``Y`` built from ``M``'s pair labels.

    Raises :class:`~fanramsey.errors.FanPresent` if ``N_S(v)`` holds an
    ``m``-matching.
    """
    from .errors import FanPresent

    s = g.vertex_mask if s is None else as_mask(s)
    nb = g.neighbors(v) & s & ~(1 << v)
    mt = max_matching(g, nb)
    if len(mt) >= m:
        raise FanPresent(v, mt.edges[:m])
    u = nb & ~mt.matched
    labelled = []
    for a, b in mt.edges:
        da = (g.neighbors(a) & u).bit_count()
        db = (g.neighbors(b) & u).bit_count()
        if (da, a) > (db, b):
            a, b, da, db = b, a, db, da
        labelled.append((db >= 2, a, b))
    labelled.sort()
    k = sum(1 for high, _, _ in labelled if not high)
    pairs = tuple((a, b) for _, a, b in labelled)
    core = mt.matched
    for _, b in pairs[k:]:
        core &= ~(1 << b)
    y = core
    for w in iter_bits(core):
        y |= g.neighbors(w) & u
    x = u & ~y
    return NeighborhoodStructure(v, s, m, mt, u, k, pairs, x, y, nb.bit_count())


def check_neighborhood_structure(g: Graph, ns: NeighborhoodStructure) -> list[str]:
    """Every violated invariant of ``ns`` as a message (empty if all hold)."""
    bad = []
    m, d = ns.m, ns.degree
    nb = g.neighbors(ns.center) & ns.s & ~(1 << ns.center)
    if ns.u != nb & ~ns.matching.matched:
        bad.append("U is not N_S(v) minus the matched vertices")
    if not g.is_independent(ns.u):
        bad.append("U is not independent")
    for i, (a, b) in enumerate(ns.pairs):
        da = (g.neighbors(a) & ns.u).bit_count()
        db = (g.neighbors(b) & ns.u).bit_count()
        if da > db:
            bad.append(f"pair {i}: d_U(x) > d_U(y)")
        if i < ns.k and db > 1:
            bad.append(f"pair {i}: d_U(y) > 1 below the split")
        if i >= ns.k and db < 2:
            bad.append(f"pair {i}: d_U(y) < 2 above the split")
    if ns.x & ns.y:
        bad.append("X and Y overlap")
    xy = ns.x | ns.y
    for w in iter_bits(ns.x):
        if g.neighbors(w) & xy:
            bad.append(f"X vertex {w} has a neighbour in X or Y")
            break
    if ns.u.bit_count() < d - 2 * m + 2:
        bad.append("|U| too small")
    if ns.x.bit_count() < d - 3 * m + 3:
        bad.append("|X| too small")
    if ns.y.bit_count() > 3 * m - 3:
        bad.append("|Y| too large")
    if ns.x.bit_count() + ns.y.bit_count() < d - m + 1:
        bad.append("|X|+|Y| too small")
    return bad
