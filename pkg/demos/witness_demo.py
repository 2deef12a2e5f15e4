"""Find witnesses on a few hosts and print where each one came from.

    python3 demos/witness_demo.py
"""

from __future__ import annotations

import time

from fanramsey import find_witness_tree, find_witness_unicyclic, random_graph, random_tree, random_unicyclic
from fanramsey.oracle import near_extremal_graph
from fanramsey.trees import path_tree


def show(label, fn):
    start = time.perf_counter()
    w = fn()
    print(f"{label:<40} {w.kind:<10} {w.route:<45} {time.perf_counter() - start:6.2f}s")


def main() -> None:
    n, m = 73, 9
    show("tree, sparse random host", lambda: find_witness_tree(random_graph(2 * n - 1, 0.05, seed=1), random_tree(n, 1), m))
    show("tree, dense random host", lambda: find_witness_tree(random_graph(2 * n - 1, 0.5, seed=2), random_tree(n, 2), m))
    host = near_extremal_graph(n, m, 4, inner_a=2, inner_b=7, apex_a=48, missing=5)
    show("tree, near-extremal host", lambda: find_witness_tree(host, random_tree(n, 4), m, strategy="structural"))
    host = near_extremal_graph(n, m, 24, inner_a=5, inner_b=3, apex_a=72, missing=40)
    show("path, near-extremal host", lambda: find_witness_tree(host, path_tree(n), m, strategy="structural"))

    n, m = 307, 18
    show("unicyclic, sparse random host", lambda: find_witness_unicyclic(random_graph(2 * n - 1, 0.03, seed=3), random_unicyclic(n, 3), m))
    host = near_extremal_graph(n, m, 5, inner_a=15, inner_b=9, apex_a=10, apex_b=153, missing=40)
    show("unicyclic, near-extremal host", lambda: find_witness_unicyclic(host, random_unicyclic(n, 5), m))


if __name__ == "__main__":
    main()
