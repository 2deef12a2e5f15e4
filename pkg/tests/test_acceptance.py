"""One check per acceptance criterion."""

from __future__ import annotations

import os
import statistics
import subprocess
import sys
import time
from pathlib import Path

import networkx as nx
import numpy as np
import pytest
from networkx.generators.atlas import graph_atlas_g

import acceptance_suite as suite
from helpers import (
    assert_witness,
    degree_two_problems,
    edges_of,
    few_leaf_tree,
    from_nx,
    neighbourhood_problems,
    separator_problems,
    to_nx,
)

from fanramsey.embedding import check_embedding
from fanramsey.errors import SearchBudgetExhausted
from fanramsey.graph import fan_graph, mask_of, matching_graph, path_graph, random_graph
from fanramsey.matching import find_fan, max_matching, neighborhood_structure
from fanramsey.oracle import brute_matching_number, brute_ramsey, canonical_form, extremal_graph, nonisomorphic_graphs
from fanramsey.trees import lemma1_degree_two_set, lemma2_separator, random_tree


@pytest.fixture(scope="module")
def tree_results():
    return suite.run_trees()


@pytest.fixture(scope="module")
def unicyclic_results():
    return suite.run_unicyclic(suite.unicyclic_instances())


def test_witness_totality_trees(tree_results):
    assert len(tree_results) == 200
    for label, g, t, w, _ in tree_results:
        assert check_embedding(w.embedding), label
        assert_witness(w, g, edges_of(t), suite.TREE_M)
    kinds = {w.kind for *_, w, _ in tree_results}
    assert kinds == {"fan", "tree"}
    assert statistics.median(s for *_, s in tree_results) < 5.0


def test_witness_totality_unicyclic(unicyclic_results):
    extra = suite.run_unicyclic(suite.unicyclic_extra_instances())
    exhausted = [label for label, *_, w, _ in unicyclic_results + extra if isinstance(w, SearchBudgetExhausted)]
    print(f"cycle search budget exhausted on {len(exhausted)} instance(s): {exhausted}")
    assert exhausted == []
    assert len(unicyclic_results) == 50
    for label, g, u, w, _ in unicyclic_results + extra:
        assert check_embedding(w.embedding), label
        assert_witness(w, g, edges_of(u), suite.UC_M)
        if w.kind == "unicyclic":
            assert not g.has_edge(w.embedding.mapping[w.t1], w.embedding.mapping[w.t2])
    # the specified densities all contain F_18; the extra hosts exercise the complement side
    assert all(w.kind == "unicyclic" for *_, w, _ in extra)
    assert statistics.median(s for *_, s in unicyclic_results) < 60.0
    assert statistics.median(s for *_, s in extra) < 60.0


def test_extremal_lower_bound():
    for n in range(5, 51):
        g = extremal_graph(n)
        assert find_fan(g, 1) is None
        assert not any(nx.triangles(to_nx(g)).values())
        sizes = sorted(len(c) for c in nx.connected_components(to_nx(g.complement())))
        assert sizes == [n - 1, n - 1]


def test_degree_two_set_suite():
    rng = np.random.default_rng(2024)
    positive = 0
    for i in range(1000):
        n = int(rng.integers(20, 501))
        t = random_tree(n, seed=i) if i % 2 else few_leaf_tree(n, i, core=int(rng.integers(2, 9)))
        f: set[int] = set()
        if i % 4 >= 2:
            a, b = t.edges[int(rng.integers(len(t.edges)))]
            f = {a, b}
        res = lemma1_degree_two_set(t, mask_of(f))
        d = {v for v in range(n) if res.d >> v & 1}
        assert degree_two_problems(t, d, f) == [], i
        positive += res.bound > 0
    assert positive >= 300  # the size bound is exercised, not vacuous


def test_separator_suite():
    rng = np.random.default_rng(7)
    for i in range(1000):
        t = random_tree(int(rng.integers(3, 501)), seed=10_000 + i)
        s = lemma2_separator(t)
        assert separator_problems(t, s.vertex, s.k, s.h) == [], i


def test_matching_oracle_equivalence():
    graphs = [g for k in range(8) for g in nonisomorphic_graphs(k)]
    seven = [g for g in graphs if g.order == 7]
    assert len(seven) == 1044
    atlas = {canonical_form(from_nx(h)) for h in graph_atlas_g() if h.number_of_nodes() == 7}
    assert {canonical_form(g) for g in seven} == atlas
    rng = np.random.default_rng(11)
    graphs += [random_graph(int(rng.integers(1, 13)), float(rng.uniform(0.1, 0.9)), seed=i) for i in range(500)]
    for g in graphs:
        assert len(max_matching(g)) == brute_matching_number(g)


def test_tiny_ramsey_oracle():
    start = time.perf_counter()
    assert brute_ramsey(path_graph(4), matching_graph(2)) == 4 + 2 - 1
    assert time.perf_counter() - start < 60
    start = time.perf_counter()
    assert brute_ramsey(path_graph(3), fan_graph(1)) == 5
    assert time.perf_counter() - start < 60


def test_neighbourhood_structure_inequalities():
    rng = np.random.default_rng(3)
    done = 0
    while done < 500:
        n = int(rng.integers(10, 60))
        g = random_graph(n, float(rng.uniform(0.05, 0.6)), seed=done * 7 + n)
        v = int(rng.integers(n))
        s = mask_of(int(u) for u in np.flatnonzero(rng.random(n) < rng.uniform(0.5, 1.0)))
        nbhd = g.neighbors(v) & s & ~(1 << v)
        m = int(rng.integers(1, 8))
        if len(max_matching(g, nbhd)) >= m:
            continue
        ns = neighborhood_structure(g, v, s, m)
        assert neighbourhood_problems(g, ns) == []
        done += 1


def test_determinism(tree_results, unicyclic_results):
    here = suite.witness_lines(tree_results) + suite.witness_lines(unicyclic_results)
    env = dict(os.environ, PYTHONHASHSEED="12345")
    res = subprocess.run(
        [sys.executable, str(Path(suite.__file__))], capture_output=True, text=True, env=env, check=True
    )
    assert res.stdout.splitlines() == here
