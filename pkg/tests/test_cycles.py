from __future__ import annotations

import numpy as np
import pytest

from fanramsey.cycles import cycle_witness, dirac_hamiltonian, is_cycle, search_cycle
from fanramsey.errors import SearchBudgetExhausted
from fanramsey.graph import Graph, complete_bipartite, complete_graph, cycle_graph, empty_graph, path_graph, random_graph


def dirac_graph(n: int, seed: int) -> Graph:
    """Random graph with every degree at least n/2."""
    rng = np.random.default_rng(seed)
    g = random_graph(n, float(rng.uniform(0.3, 0.7)), seed=seed)
    edges = set(g.edges())
    need = (n + 1) // 2
    for v in range(n):
        deg = sum(1 for e in edges if v in e)
        others = [u for u in rng.permutation(n).tolist() if u != v and (min(u, v), max(u, v)) not in edges]
        for u in others[: max(0, need - deg)]:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


@pytest.mark.parametrize("seed", range(50))
def test_dirac_hamiltonian(seed):
    n = int(np.random.default_rng(seed).integers(3, 60))
    g = dirac_graph(n, seed)
    cyc = dirac_hamiltonian(g)
    assert sorted(cyc) == list(range(n))
    assert is_cycle(g, cyc)


def test_dirac_tight_bipartite():
    g = complete_bipartite(6, 6)
    assert is_cycle(g, dirac_hamiltonian(g))


def test_dirac_precondition():
    with pytest.raises(ValueError):
        dirac_hamiltonian(path_graph(5))


def test_search_cycle_and_budget():
    g = complete_graph(8)
    cyc = search_cycle(g, 5)
    assert len(cyc) == 5 and is_cycle(g, cyc)
    with pytest.raises(SearchBudgetExhausted):
        search_cycle(cycle_graph(9), 4)
    with pytest.raises(SearchBudgetExhausted):
        search_cycle(complete_bipartite(20, 20), 7, budget=1000)


@pytest.mark.parametrize("p,k", [(0.0, 10), (0.05, 30), (0.3, 25)])
def test_cycle_witness_low_degree_hosts(p, k):
    n = 40
    g = random_graph(2 * n - 1, p, seed=1)
    plan = cycle_witness(g.complement(), g, k, 3, n)
    assert len(plan.cycle) == k and is_cycle(g.complement(), list(plan.cycle))


def test_cycle_witness_clique_in_u():
    n, m = 40, 3
    # one vertex adjacent to n - 1 others that are independent in g
    edges = [(0, i) for i in range(1, n)]
    g = Graph.from_edges(2 * n - 1, edges)
    k = n - 2 * m + 1
    plan = cycle_witness(g.complement(), g, k, m, n)
    assert is_cycle(g.complement(), list(plan.cycle))
    assert plan.method in ("dirac-chord", "clique-in-U")


def test_cycle_witness_empty_triangle():
    g = empty_graph(5)
    plan = cycle_witness(g.complement(), g, 3, 2, 3)
    assert is_cycle(g.complement(), list(plan.cycle))
