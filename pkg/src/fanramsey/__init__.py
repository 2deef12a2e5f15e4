"""Constructive fan-versus-tree and fan-versus-unicyclic Ramsey witnesses.

Given a host graph ``G`` on ``2n - 1`` vertices, the engines return either a
fan ``F_m`` inside ``G`` or a copy of an ``n``-vertex tree (or unicyclic
graph) inside the complement of ``G``, and every returned witness is checked.
"""

from __future__ import annotations

from .embedding import Embedding, check_embedding
from .errors import EmbeddingError, FanPresent, HypothesisError, SearchBudgetExhausted, TheoremViolation
from .graph import Graph, parse_graph6, random_graph, write_graph6
from .matching import find_fan, max_matching, neighborhood_structure, tutte_berge_certificate
from .oracle import brute_contains, brute_ramsey, extremal_graph, nonisomorphic_graphs
from .tree_engine import find_witness_tree
from .trees import (
    Tree,
    UnicyclicGraph,
    lemma1_degree_two_set,
    lemma2_separator,
    lemma3_greedy_embed,
    random_tree,
    random_unicyclic,
    unicyclic_normalize,
)
from .unicyclic_engine import find_witness_unicyclic
from .witness import Witness

__all__ = [
    "Embedding",
    "EmbeddingError",
    "FanPresent",
    "Graph",
    "HypothesisError",
    "SearchBudgetExhausted",
    "TheoremViolation",
    "Tree",
    "UnicyclicGraph",
    "Witness",
    "brute_contains",
    "brute_ramsey",
    "check_embedding",
    "extremal_graph",
    "find_fan",
    "find_witness_tree",
    "find_witness_unicyclic",
    "lemma1_degree_two_set",
    "lemma2_separator",
    "lemma3_greedy_embed",
    "max_matching",
    "neighborhood_structure",
    "nonisomorphic_graphs",
    "parse_graph6",
    "random_graph",
    "random_tree",
    "random_unicyclic",
    "tutte_berge_certificate",
    "unicyclic_normalize",
    "write_graph6",
]
