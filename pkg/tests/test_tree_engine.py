from __future__ import annotations

import pytest
from helpers import assert_witness, edges_of, few_leaf_tree, heavy_tree, star_host

from fanramsey.errors import EmbeddingError, HypothesisError
from fanramsey.graph import Graph, complete_graph, empty_graph, random_graph
from fanramsey.matching import neighborhood_structure
from fanramsey.oracle import near_extremal_graph
from fanramsey.tree_engine import (
    StuckReport,
    build_anchor_sets,
    check_anchor_sets,
    embed_forest_pinned,
    find_witness_tree,
    greedy_extend,
    heavy_leaf_vertex,
    heavy_leaf_witness,
)
from fanramsey.trees import broom_tree, caterpillar_tree, path_tree, random_tree, star_tree

N, M = 73, 9


def run(g, t, **kw):
    w = find_witness_tree(g, t, M, **kw)
    assert_witness(w, g, edges_of(t), M)
    return w


def test_hypotheses_rejected():
    t = random_tree(N, seed=0)
    with pytest.raises(HypothesisError, match="minimum 9"):
        find_witness_tree(empty_graph(2 * N - 1), t, 8)
    small = random_tree(50, seed=0)
    with pytest.raises(HypothesisError, match="m\\^2 - m \\+ 1"):
        find_witness_tree(empty_graph(99), small, M)
    with pytest.raises(HypothesisError, match="2n - 1"):
        find_witness_tree(empty_graph(100), t, M)


def test_empty_host_gives_tree():
    assert run(empty_graph(2 * N - 1), random_tree(N, seed=1)).kind == "tree"


def test_complete_host_gives_fan():
    w = run(complete_graph(2 * N - 1), path_tree(N))
    assert w.kind == "fan" and w.center is not None


def test_below_range_small_instance_still_verifies():
    # outside the proved range the engine may still succeed on easy hosts
    w = find_witness_tree(empty_graph(9), path_tree(5), 2, enforce_hypotheses=False)
    assert w.kind == "tree"


def test_greedy_stuck_on_two_cliques():
    g = near_extremal_graph(N, M, seed=0)
    gbar = g.complement()
    # seed inside the complement-clique that does not see the extra vertex
    v = next(v for v in range(g.order) if g.degree(v) == N)
    t = path_tree(N)
    res = greedy_extend(gbar, t.graph, {0: v})
    assert isinstance(res, StuckReport)
    assert g.degree(res.vertex) >= N
    assert gbar.neighbors(res.vertex) & res.unused == 0


def test_greedy_extend_rejects_bad_seed():
    g = empty_graph(5).complement()
    with pytest.raises(ValueError):
        greedy_extend(g, path_tree(3).graph, {})
    with pytest.raises(ValueError):
        greedy_extend(g, path_tree(3).graph, {0: 1, 1: 1})


@pytest.mark.parametrize("seed", range(10))
def test_anchor_sets_invariants(seed):
    g = near_extremal_graph(N, M, seed, inner_a=seed % M, apex_b=seed)
    v = next(v for v in range(g.order) if g.degree(v) >= N)
    a = build_anchor_sets(g, v, None, N, M)
    assert check_anchor_sets(g, a, N, M) == []
    # independent re-check of the two facts the embedding relies on
    gbar = g.complement()
    assert all(gbar.neighbors(w) & a.xy == a.xy & ~(1 << w) for w in range(g.order) if a.x >> w & 1)


def test_anchor_sets_reject_low_degree():
    g = random_graph(2 * N - 1, 0.1, seed=0)
    v = min(range(g.order), key=g.degree)
    with pytest.raises(HypothesisError):
        build_anchor_sets(g, v, None, N, M)


def test_embed_forest_pinned_capacity_and_budget():
    t = path_tree(10)
    with pytest.raises(EmbeddingError):
        embed_forest_pinned(t, 0b111, 0b11000)
    x, y = (1 << 8) - 1, 0b11 << 8
    mp = embed_forest_pinned(t, x, y, pins={0: 3})
    assert mp[0] == 3 and len(set(mp.values())) == 10
    assert all(y >> h & 1 == 0 or t.a >> p & 1 for p, h in mp.items())
    with pytest.raises(EmbeddingError, match="budget"):
        embed_forest_pinned(t, x, y, removed=0b1, pins={2: 3}, budget=0)


def test_heavy_leaf_star_centre():
    g = near_extremal_graph(N, M, 1, inner_a=0, inner_b=0, apex_a=1, apex_b=0, missing=40)
    w = run(g, heavy_tree(N, M - 1))
    assert w.route == "heavy leaves / star centre"


def test_heavy_leaf_high_degree_neighbourhood():
    g = Graph.from_edges(2 * N - 1, [(0, i) for i in range(1, N + M)])
    t = heavy_tree(N, M - 1)
    assert heavy_leaf_vertex(t, M - 1) == 0
    w = heavy_leaf_witness(g, t, M, 0)
    assert_witness(w, g, edges_of(t), M)
    assert w.route == "heavy leaves / high-degree neighbourhood"


def test_star_pattern_on_star_host():
    g = star_host(N)
    assert run(g, star_tree(N)).kind == "tree"


# instances found by sampling near-extremal hosts; each drives one structural step
ROUTES = [
    ("anchored greedy", 1, dict(inner_a=0, inner_b=0, apex_a=1, apex_b=0, missing=40), "random"),
    ("clique split", 4, dict(inner_a=2, inner_b=7, apex_a=48, apex_b=0, missing=5), "random"),
    ("hub split", 7, dict(inner_a=4, inner_b=0, apex_a=21, apex_b=7, missing=5), "random"),
    ("leaf removal", 24, dict(inner_a=5, inner_b=3, apex_a=72, apex_b=0, missing=40), "random"),
    ("degree-two removal", 24, dict(inner_a=5, inner_b=3, apex_a=72, apex_b=0, missing=40), "path"),
]


@pytest.mark.parametrize("route,seed,params,pattern", ROUTES, ids=[r[0] for r in ROUTES])
def test_structural_routes(route, seed, params, pattern):
    g = near_extremal_graph(N, M, seed, **params)
    t = random_tree(N, seed) if pattern == "random" else path_tree(N)
    w = run(g, t, strategy="structural")
    assert w.route == route


@pytest.mark.parametrize("seed", range(12))
def test_near_extremal_sweep(seed):
    for strategy in ("greedy", "structural"):
        g = near_extremal_graph(N, M, seed, inner_a=seed % M, inner_b=(3 * seed) % M, apex_a=(11 * seed) % N, missing=5 * (seed % 3))
        for t in (random_tree(N, seed), path_tree(N), broom_tree(N, M - 2), caterpillar_tree(N, 60, seed), few_leaf_tree(N, seed)):
            run(g, t, strategy=strategy)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        find_witness_tree(empty_graph(2 * N - 1), path_tree(N), M, strategy="nope")


def test_neighbourhood_structure_on_anchor():
    g = near_extremal_graph(N, M, 3, inner_a=4)
    v = next(v for v in range(g.order) if g.degree(v) >= N)
    ns = neighborhood_structure(g, v, None, M)
    assert ns.degree == g.degree(v)
