"""Independent ground truth: extremal constructions, brute-force subgraph
search, enumeration of graphs up to isomorphism and tiny Ramsey numbers.

Nothing here shares code with the engines beyond the :class:`Graph` type and
the embedding checker.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

import numpy as np

from .embedding import Embedding, check_embedding
from .graph import Graph, bits, complete_bipartite, iter_bits

__all__ = [
    "check_embedding",
    "extremal_graph",
    "near_extremal_graph",
    "brute_contains",
    "brute_matching_number",
    "canonical_form",
    "nonisomorphic_graphs",
    "brute_ramsey",
]


def extremal_graph(n: int) -> Graph:
    """``K_{n-1,n-1}``: no triangle (so no fan), and its complement is two
    ``(n-1)``-cliques, too small for any connected ``n``-vertex pattern."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return complete_bipartite(n - 1, n - 1)


def near_extremal_graph(
    n: int,
    m: int,
    seed: int | None = None,
    *,
    inner_a: int = 0,
    inner_b: int = 0,
    apex_a: int | None = None,
    apex_b: int = 0,
    missing: int = 0,
) -> Graph:
    """``K_{n-1,n-1}`` plus one extra vertex, randomly relabelled.

    Perturbations: ``inner_a``/``inner_b`` disjoint edges inside each side
    (keep below ``m`` to stay fan-free), the extra vertex joined to
    ``apex_a`` vertices of side A (default ``n - 1``) and ``apex_b`` of
    side B, and ``missing`` random cross edges deleted.  These hosts drive
    the engines through their structural steps.
    """
    rng = np.random.default_rng(seed)
    side_a = list(range(n - 1))
    side_b = list(range(n - 1, 2 * n - 2))
    z = 2 * n - 2
    gone = {(int(rng.choice(side_a)), int(rng.choice(side_b))) for _ in range(missing)}
    edges = [(a, b) for a in side_a for b in side_b if (a, b) not in gone]
    pa, pb = rng.permutation(side_a), rng.permutation(side_b)
    edges += [(int(pa[2 * i]), int(pa[2 * i + 1])) for i in range(inner_a)]
    edges += [(int(pb[2 * i]), int(pb[2 * i + 1])) for i in range(inner_b)]
    apex_a = n - 1 if apex_a is None else apex_a
    edges += [(int(a), z) for a in rng.choice(side_a, apex_a, replace=False)]
    edges += [(int(b), z) for b in rng.choice(side_b, apex_b, replace=False)]
    perm = rng.permutation(2 * n - 1)
    return Graph.from_edges(2 * n - 1, [(int(perm[u]), int(perm[v])) for u, v in edges])


# -- subgraph search ---------------------------------------------------------------


def brute_contains(host: Graph, pattern: Graph, complement: bool = False) -> Embedding | None:
    """Exact backtracking search for ``pattern`` as a (not necessarily
    induced) subgraph of ``host`` (or of its complement).

    Pattern vertices are placed in a connected-first, high-degree-first
    order; a host vertex is a candidate only if its degree and sorted
    neighbour-degree profile dominate the pattern vertex's.
    """
    h = host.complement() if complement else host
    k = pattern.order
    if k > h.order:
        return None
    pdeg = pattern.degrees()
    hdeg = h.degrees()

    def profile(g: Graph, degs: list[int], v: int) -> list[int]:
        return sorted((degs[u] for u in iter_bits(g.neighbors(v))), reverse=True)

    pprof = [profile(pattern, pdeg, v) for v in range(k)]
    hprof = [profile(h, hdeg, v) for v in range(h.order)]

    def dominates(hv: int, pv: int) -> bool:
        a, b = hprof[hv], pprof[pv]
        return len(a) >= len(b) and all(x >= y for x, y in zip(a, b))

    order: list[int] = []
    placed = 0
    while len(order) < k:
        frontier = [v for v in range(k) if not placed >> v & 1 and pattern.neighbors(v) & placed]
        pool = frontier or [v for v in range(k) if not placed >> v & 1]
        v = max(pool, key=lambda u: (pdeg[u], -u))
        order.append(v)
        placed |= 1 << v
    cands = [[hv for hv in range(h.order) if dominates(hv, pv)] for pv in range(k)]
    back = [[u for u in order[:i] if pattern.has_edge(order[i], u)] for i in range(k)]
    mapping: dict[int, int] = {}
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == k:
            return True
        pv = order[i]
        need = h.vertex_mask
        for u in back[i]:
            need &= h.neighbors(mapping[u])
        for hv in cands[pv]:
            if used >> hv & 1 or not need >> hv & 1:
                continue
            mapping[pv] = hv
            used |= 1 << hv
            if extend(i + 1):
                return True
            used &= ~(1 << hv)
            del mapping[pv]
        return False

    if not extend(0):
        return None
    emb = Embedding(pattern, host, dict(mapping), complement=complement)
    assert check_embedding(emb)
    return emb


def brute_matching_number(g: Graph) -> int:
    """Maximum matching size by exhaustive branching on the lowest vertex."""

    def best(alive: int) -> int:
        while alive and not g.neighbors((alive & -alive).bit_length() - 1) & alive:
            alive &= alive - 1
        if not alive:
            return 0
        v = (alive & -alive).bit_length() - 1
        rest = alive & ~(1 << v)
        top = best(rest)
        for u in iter_bits(g.neighbors(v) & rest):
            top = max(top, 1 + best(rest & ~(1 << u)))
        return top

    return best(g.vertex_mask)


# -- enumeration up to isomorphism ---------------------------------------------------


def _refine(g: Graph) -> list[list[int]]:
    """Ordered colour classes from iterated degree refinement."""
    n = g.order
    colour = [0] * n
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in iter_bits(g.neighbors(v))))) for v in range(n)]
        keys = sorted(set(sig))
        new = [keys.index(s) for s in sig]
        if len(keys) == len(set(colour)):
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph) -> tuple[int, int]:
    """``(order, code)`` equal for two graphs iff they are isomorphic.

    The code is the minimum upper-triangle adjacency word over all vertex
    orders that list the refinement cells in order.
    """
    n = g.order
    cells = _refine(g)
    pairs = list(combinations(range(n), 2))
    best = None
    for parts in product(*(permutations(c) for c in cells)):
        order = [v for part in parts for v in part]
        code = 0
        for i, j in pairs:
            code = code << 1 | g.has_edge(order[i], order[j])
        if best is None or code < best:
            best = code
    return n, best or 0


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One graph per isomorphism class on ``n`` vertices (1, 1, 2, 4, 11,
    34, 156, 1044 for n = 0..7), grown vertex by vertex with canonical
    deduplication."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_classes(n))


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    seen: dict[tuple[int, int], Graph] = {}
    for g in _classes(n - 1):
        base = g.edges()
        for nb in range(1 << (n - 1)):
            h = Graph.from_edges(n, base + [(u, n - 1) for u in bits(nb)])
            key = canonical_form(h)
            if key not in seen:
                seen[key] = h
    return tuple(seen[key] for key in sorted(seen))


def brute_ramsey(h: Graph, k: Graph, n_max: int = 7) -> int | None:
    """Smallest ``N`` such that every graph ``G`` on ``N`` vertices contains
    ``h`` or its complement contains ``k``; ``None`` if ``N > n_max``."""
    for order in range(1, n_max + 1):
        if all(
            brute_contains(g, h) is not None or brute_contains(g, k, complement=True) is not None
            for g in nonisomorphic_graphs(order)
        ):
            return order
    return None
