from __future__ import annotations

import numpy as np
import pytest
from helpers import assert_witness, edges_of, heavy_unicyclic, star_host

from fanramsey.cycles import is_cycle
from fanramsey.errors import HypothesisError, TheoremViolation
from fanramsey.graph import complete_graph, empty_graph, iter_bits, random_graph
from fanramsey.oracle import near_extremal_graph
from fanramsey.tree_engine import build_anchor_sets, heavy_leaf_vertex
from fanramsey.trees import Tree, UnicyclicGraph, near_cycle, random_unicyclic, unicyclic_normalize
from fanramsey.unicyclic_engine import (
    UCContext,
    check_uc_split,
    claim42_triple,
    claim45_split,
    find_witness_unicyclic,
    uc_heavy_leaf_witness,
)

N, M = 307, 18


def run(g, u):
    w = find_witness_unicyclic(g, u, M)
    assert_witness(w, g, edges_of(u), M)
    return w


def test_hypotheses_rejected():
    u = random_unicyclic(N, seed=0)
    with pytest.raises(HypothesisError):
        find_witness_unicyclic(empty_graph(2 * N - 1), u, 17)
    with pytest.raises(HypothesisError):
        find_witness_unicyclic(empty_graph(2 * 300 - 1), random_unicyclic(300, seed=0), M)


def test_empty_and_complete_hosts():
    u = random_unicyclic(N, seed=1)
    w = run(empty_graph(2 * N - 1), u)
    assert w.kind == "unicyclic"
    assert run(complete_graph(2 * N - 1), u).kind == "fan"


def test_pure_cycle_pattern():
    c = UnicyclicGraph(N, [(i, (i + 1) % N) for i in range(N)])
    w = run(random_graph(2 * N - 1, 0.03, seed=2), c)
    assert w.route.startswith("cycle / ")
    img = dict(w.embedding.mapping)
    assert is_cycle(w.embedding.host.complement(), [img[v] for v in range(N)])


def test_random_host_cycle_then_greedy():
    w = run(random_graph(2 * N - 1, 0.03, seed=3), random_unicyclic(N, seed=3))
    assert w.route.startswith("cycle / ") and w.route.endswith("+ greedy")


def test_star_host_second_anchor_fallback():
    for u in (random_unicyclic(N, seed=4), near_cycle(N)):
        w = run(star_host(N), u)
        assert w.kind == "unicyclic"


ROUTES = [
    ("second anchor / leaves outside", 1, dict(inner_a=0, inner_b=1, apex_a=5, apex_b=0, missing=40), "random"),
    ("second anchor / degree-two outside", 1, dict(inner_a=0, inner_b=1, apex_a=5, apex_b=0, missing=40), "near"),
    ("clique split (prefix)", 4, dict(inner_a=4, inner_b=14, apex_a=205, apex_b=0, missing=5), "random"),
    ("clique split (pair)", 18, dict(inner_a=5, inner_b=16, apex_a=81, apex_b=0, missing=40), "tri"),
    ("hub split (prefix)", 5, dict(inner_a=15, inner_b=9, apex_a=10, apex_b=153, missing=40), "random"),
    ("hub split (pair)", 5, dict(inner_a=15, inner_b=9, apex_a=10, apex_b=153, missing=40), "tri"),
    ("leaf removal", 26, dict(inner_a=16, inner_b=12, apex_a=273, apex_b=0, missing=40), "random"),
    ("degree-two removal", 26, dict(inner_a=16, inner_b=12, apex_a=273, apex_b=0, missing=40), "near"),
    ("heavy leaves / clique centre", 4, dict(inner_a=4, inner_b=14, apex_a=205, apex_b=0, missing=5), "heavy"),
]


def pattern(kind: str, seed: int) -> UnicyclicGraph:
    return {
        "random": lambda: random_unicyclic(N, seed),
        "near": lambda: near_cycle(N),
        "tri": lambda: random_unicyclic(N, seed, cycle_length=3),
        "heavy": lambda: heavy_unicyclic(N, 2 * M - 1),
    }[kind]()


@pytest.mark.parametrize("route,seed,params,kind", ROUTES, ids=[r[0] for r in ROUTES])
def test_structural_routes(route, seed, params, kind):
    g = near_extremal_graph(N, M, seed, **params)
    w = run(g, pattern(kind, seed))
    assert w.route == route


def anchored_context(g, u) -> UCContext:
    """The engine state right before the heavy-leaf step."""
    t1, t2, tree = unicyclic_normalize(u)
    gbar = g.complement()
    ctx = UCContext(g, gbar, tree, N, M, uc=u, t1=t1, t2=t2)
    v = next(v for v in range(g.order) if g.degree(v) >= N)
    ctx.first = build_anchor_sets(g, v, None, N, M)
    outside = g.vertex_mask & ~ctx.first.xy
    s = next(w for w in iter_bits(ctx.first.xy) if g.degree_in(w, outside) >= N)
    ctx.second = build_anchor_sets(g, s, outside, N, M)
    return ctx


def test_heavy_leaf_outside_centre():
    g = near_extremal_graph(N, M, 4, inner_a=4, inner_b=14, apex_a=205, apex_b=0, missing=5)
    u = heavy_unicyclic(N, 2 * M - 1)
    ctx = anchored_context(g, u)
    x = heavy_leaf_vertex(ctx.tree, 2 * M - 1)
    cliques = ctx.first.u | ctx.second.u
    centres = [w for w in range(g.order) if ctx.gbar.degree(w) >= N - 1 and not cliques >> w & 1]
    assert centres
    for c in centres:
        w = uc_heavy_leaf_witness(ctx, x, centre=c)
        assert w.route == "heavy leaves / outside centre"
        assert_witness(w, g, edges_of(u), M)


def test_heavy_leaf_rejects_weak_centre():
    g = near_extremal_graph(N, M, 4, inner_a=4, inner_b=14, apex_a=205, apex_b=0, missing=5)
    ctx = anchored_context(g, heavy_unicyclic(N, 2 * M - 1))
    weak = min(range(g.order), key=ctx.gbar.degree)
    with pytest.raises(ValueError):
        uc_heavy_leaf_witness(ctx, 0, centre=weak)


# -- split of the cut tree --------------------------------------------------------------


def split_problems(t: Tree, t1: int, t2: int, sp) -> list[str]:
    """The split invariants recomputed from the edge list."""
    n = t.n
    h = {v for v in range(n) if sp.h >> v & 1}
    j = {v for v in range(n) if sp.j >> v & 1}
    bad = []
    if h & j or h | j | {sp.x} != set(range(n)) or sp.x in h | j:
        bad.append("partition")
    if any((a in h and b in j) or (a in j and b in h) for a, b in t.edges):
        bad.append("cross edge")
    if not all(2 * M - 2 <= len(s) <= n - 2 * M + 1 for s in (h, j)):
        bad.append("sizes")
    nbrs = {b for a, b in t.edges if a == sp.x} | {a for a, b in t.edges if b == sp.x}
    if len(nbrs & h) > 2 * M - 2:
        bad.append("degree into H")
    ok = sp.x in (t1, t2) or not nbrs & {t1, t2} or {t1, t2} <= h or {t1, t2} <= j
    if not ok:
        bad.append("closing edge separated")
    return bad


def test_split_on_random_unicyclic_graphs():
    rng = np.random.default_rng(0)
    branches = set()
    for s in range(1000):
        n = int(rng.integers(N, 500))
        u = random_unicyclic(n, s, cycle_length=int(rng.choice([3, 4, 10, 100, n - 5])))
        t1, t2, t = unicyclic_normalize(u)
        sp = claim45_split(t, t1, t2, M)
        assert check_uc_split(t, t1, t2, M, sp) == []
        assert split_problems(t, t1, t2, sp) == []
        branches.add(sp.branch)
    assert {"prefix", "pair"} <= branches


def _spider_split(inside: bool):
    """Centre 0 with a path of 125 rooted at t1, a branch of 150 holding t2
    (at its root, or one step in), and leaves."""
    edges, nxt = [], 1
    t1 = nxt
    edges.append((0, t1))
    nxt += 1
    for i in range(124):
        edges.append((t1 + i, nxt))
        nxt += 1
    y = nxt
    edges.append((0, y))
    nxt += 1
    if inside:
        t2 = nxt
        edges.append((y, t2))
        nxt += 1
        for _ in range(5):
            edges.append((y, nxt))
            nxt += 1
        prev, length = t2, 143
    else:
        t2 = prev = y
        length = 149
    for _ in range(length):
        edges.append((prev, nxt))
        prev = nxt
        nxt += 1
    while nxt < N:
        edges.append((0, nxt))
        nxt += 1
    return Tree(N, edges), t1, t2


@pytest.mark.parametrize("inside,branch", [(False, "reroot-other"), (True, "reroot-other-inside")])
def test_split_reroot_branches(inside, branch):
    t, t1, t2 = _spider_split(inside)
    sp = claim45_split(t, t1, t2, M)
    assert sp.branch == branch
    assert split_problems(t, t1, t2, sp) == []


def test_split_branch_sweep():
    """Closing edges placed at random on spiders, caterpillars and random
    trees reach the remaining constructions."""
    from fanramsey.trees import caterpillar_tree, random_tree

    rng = np.random.default_rng(1)
    seen = set()
    for s in range(600):
        t = caterpillar_tree(N, int(rng.integers(10, 300)), s) if s % 2 else random_tree(N, s)
        for _ in range(5):
            t1, t2 = int(rng.integers(N)), int(rng.integers(N))
            if t.degree[t1] < 2 or t1 == t2 or t.adj_mask[t1] >> t2 & 1:
                continue
            sp = claim45_split(t, t1, t2, M)
            assert split_problems(t, t1, t2, sp) == []
            seen.add(sp.branch)
    assert {"prefix", "pair", "reroot-adjacent"} <= seen


def test_triple():
    g = random_graph(60, 0.2, seed=5)
    gbar = g.complement()
    k = sum(1 << v for v in range(30))
    h = sum(1 << v for v in range(30, 60))
    x, y, z = claim42_triple(gbar, k, h)
    assert k >> x & 1 and h >> y & 1 and k >> z & 1 and x != z
    assert gbar.has_edge(x, y) and gbar.has_edge(y, z)


def test_triple_absent():
    g = complete_graph(6)
    with pytest.raises(TheoremViolation):
        claim42_triple(g.complement(), 0b111, 0b111000)
