"""Shared fixtures-by-function for the test suite: independent checks and
pattern families that push the engines into their structural steps."""

from __future__ import annotations

from math import ceil

import networkx as nx
import numpy as np

from fanramsey.graph import Graph
from fanramsey.trees import Tree, UnicyclicGraph, random_tree


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges])


def assert_witness(w, host: Graph, pattern_edges, m: int) -> None:
    """Re-check a witness from its JSON form alone, without the library checker."""
    d = w.to_dict()
    mapping = {p: h for p, h in d["map"]}
    assert len(set(mapping.values())) == len(mapping)
    assert all(0 <= h < host.order for h in mapping.values())
    if d["kind"] == "fan":
        c = d["center"]
        assert len(mapping) == 2 * m + 1 and mapping[0] == c
        for i in range(m):
            a, b = mapping[2 * i + 1], mapping[2 * i + 2]
            assert host.has_edge(c, a) and host.has_edge(c, b) and host.has_edge(a, b)
        return
    for u, v in pattern_edges:
        assert not host.has_edge(mapping[u], mapping[v]), (u, v)
    if d["kind"] == "unicyclic":
        assert not host.has_edge(d["t1"], d["t2"])


def few_leaf_tree(n: int, seed: int, core: int = 6) -> Tree:
    """Random tree on ``core`` vertices with its edges subdivided up to ``n``
    vertices: few leaves, long degree-two runs."""
    rng = np.random.default_rng(seed)
    base = random_tree(core, seed=int(rng.integers(2**31))) if core > 1 else None
    edges = [] if base is None else list(base.edges)
    nxt = core
    out = []
    cuts = rng.multinomial(n - core, [1 / len(edges)] * len(edges)) if edges else []
    for (a, b), k in zip(edges, cuts):
        prev = a
        for _ in range(k):
            out.append((prev, nxt))
            prev = nxt
            nxt += 1
        out.append((prev, b))
    perm = rng.permutation(n).tolist()
    return Tree(n, [(perm[a], perm[b]) for a, b in out])


def heavy_tree(n: int, leaves: int) -> Tree:
    """Triangle-free spine: a hub with ``leaves`` pendant vertices, then a path."""
    edges = [(0, i) for i in range(1, leaves + 1)]
    prev = 0
    for v in range(leaves + 1, n):
        edges.append((prev, v))
        prev = v
    return Tree(n, edges)


def heavy_unicyclic(n: int, leaves: int) -> UnicyclicGraph:
    """Triangle on 0, 1, 2; vertex 0 also carries ``leaves`` leaves; a path
    hangs from 2."""
    edges = [(0, 1), (1, 2), (2, 0)] + [(0, 2 + i) for i in range(1, leaves + 1)]
    prev = 2
    for v in range(leaves + 3, n):
        edges.append((prev, v))
        prev = v
    return UnicyclicGraph(n, edges)


def star_host(n: int) -> Graph:
    """``K_{1,n}`` padded with isolated vertices to ``2n - 1`` vertices."""
    return Graph.from_edges(2 * n - 1, [(0, i) for i in range(1, n + 1)])


def edges_of(pattern) -> list[tuple[int, int]]:
    return [tuple(e) for e in pattern.edges]


def degree_two_problems(t: Tree, d: set[int], f: set[int]) -> list[str]:
    """The degree-two set predicates, recomputed from the edge list."""
    adj = {v: set() for v in range(t.n)}
    for a, b in t.edges:
        adj[a].add(b)
        adj[b].add(a)
    # colour classes by BFS parity; A is the larger
    side = {0: 0}
    queue = [0]
    for v in queue:
        for u in adj[v]:
            if u not in side:
                side[u] = 1 - side[v]
                queue.append(u)
    classes = [{v for v in side if side[v] == c} for c in (0, 1)]
    a = max(classes, key=len)
    bad = []
    if not d <= a and len(classes[0]) != len(classes[1]):
        bad.append("outside A")
    if d & f:
        bad.append("meets F")
    for v in d:
        if len(adj[v]) != 2:
            bad.append(f"{v} has degree {len(adj[v])}")
        if any(len(adj[u]) == 1 for u in adj[v]):
            bad.append(f"{v} has a leaf neighbour")
    for u in d:
        for v in d:
            if u < v and adj[u] & adj[v]:
                bad.append(f"{u}, {v} share a neighbour")
    leaves = sum(1 for v in adj if len(adj[v]) == 1)
    bound = ceil((t.n - 8 * leaves - 2 * len(f) + 12) / 4)
    if bound > 0 and len(d) < bound:
        bad.append(f"|D| = {len(d)} < {bound}")
    return bad


def separator_problems(t: Tree, v: int, k: int, h: int) -> list[str]:
    n = t.n
    bad = []
    if k & h or (k | h | 1 << v) != (1 << n) - 1 or (k | h) >> v & 1:
        bad.append("not a partition of V - v")
    for a, b in t.edges:
        if (k >> a & 1 and h >> b & 1) or (h >> a & 1 and k >> b & 1):
            bad.append(f"cross edge {a}-{b}")
    for part in (k, h):
        if not (n - 1) / 3 <= part.bit_count() <= 2 * (n - 1) / 3:
            bad.append(f"part size {part.bit_count()}")
    return bad


def neighbourhood_problems(g: Graph, ns) -> list[str]:
    """The neighbourhood-structure invariants, recomputed with Python sets."""
    v, m = ns.center, ns.m
    s = {u for u in range(g.order) if ns.s >> u & 1}
    nbhd = {u for u in range(g.order) if g.has_edge(v, u) and u in s and u != v}
    matched = {w for e in ns.matching.edges for w in e}
    u_set = {w for w in range(g.order) if ns.u >> w & 1}
    x_set = {w for w in range(g.order) if ns.x >> w & 1}
    y_set = {w for w in range(g.order) if ns.y >> w & 1}
    d = len(nbhd)
    bad = []
    if not matched <= nbhd or any(not g.has_edge(a, b) for a, b in ns.matching.edges):
        bad.append("matching not inside N_S(v)")
    if len(matched) != 2 * len(ns.matching.edges) or len(ns.matching.edges) >= m:
        bad.append("matching malformed or too large")
    if u_set != nbhd - matched:
        bad.append("U != N_S(v) - V(M)")
    if any(g.has_edge(a, b) for a in u_set for b in u_set):
        bad.append("U not independent")
    if x_set & y_set:
        bad.append("X meets Y")
    if any(g.has_edge(a, b) for a in x_set for b in x_set | y_set):
        bad.append("X has a neighbour in X or Y")
    if len(u_set) < d - 2 * m + 2:
        bad.append("(U bound)")
    if len(x_set) < d - 3 * m + 3:
        bad.append("(X bound)")
    if len(y_set) > 3 * m - 3:
        bad.append("(Y bound)")
    if len(x_set) + len(y_set) < d - m + 1:
        bad.append("(X + Y bound)")
    return bad
