"""Exhaustive Ramsey numbers for tiny pairs, next to the tree-versus-matching
formula n + m - 1 where it applies (n >= 4m - 4).  The last pair falls
outside that range: 3K2 alone already needs six vertices.

    python3 demos/tiny_ramsey.py
"""

from __future__ import annotations

from fanramsey.graph import fan_graph, matching_graph, path_graph, star_graph
from fanramsey.oracle import brute_ramsey

PAIRS = [
    ("P3", path_graph(3), "F1", fan_graph(1), None),
    ("P4", path_graph(4), "2K2", matching_graph(2), 4 + 2 - 1),
    ("S4", star_graph(4), "2K2", matching_graph(2), 4 + 2 - 1),
    ("P5", path_graph(5), "2K2", matching_graph(2), 5 + 2 - 1),
    ("P3", path_graph(3), "3K2", matching_graph(3), None),
]

for a, g, b, h, formula in PAIRS:
    value = brute_ramsey(g, h)
    extra = "" if formula is None else f"  (n + m - 1 = {formula})"
    print(f"R({a}, {b}) = {value}{extra}")
