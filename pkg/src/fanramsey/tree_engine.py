"""Witness engine for trees: either a fan F_m in G or the tree in the
complement of G, for any G on ``2n - 1`` vertices.

The engine walks the structural argument step by step.  Each step either
returns a verified witness or establishes the structure the next step relies
on.  A step that is proved total but fails raises :class:`TheoremViolation`.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from .errors import EmbeddingError, FanPresent, HypothesisError, TheoremViolation
from .graph import Graph, bits, iter_bits, lowest, take_lowest
from .matching import FanEmbedding, NeighborhoodStructure, find_fan, greedy_cross_matching, neighborhood_structure
from .trees import Tree, lemma1_degree_two_set, lemma2_separator, lemma3_greedy_embed
from .witness import Witness, complement_witness, fan_witness

log = logging.getLogger(__name__)


def check_tree_hypotheses(n: int, m: int, min_m: int = 9) -> None:
    if m < min_m:
        raise HypothesisError(f"m = {m} is below the supported minimum {min_m}")
    if n < m * m - m + 1:
        raise HypothesisError(f"n = {n} is below m^2 - m + 1 = {m * m - m + 1}")


# -- greedy extension -----------------------------------------------------------


@dataclass(frozen=True)
class StuckReport:
    """Greedy extension halted: ``vertex`` (a host vertex already used) has no
    unused complement-neighbour, so it is G-adjacent to every unused vertex."""

    vertex: int
    pattern_vertex: int
    mapping: dict[int, int]
    unused: int

    @property
    def unused_count(self) -> int:
        return self.unused.bit_count()


def greedy_extend(gbar: Graph, pattern: Graph, seed: dict[int, int]) -> dict[int, int] | StuckReport:
    """Grow ``seed`` breadth-first: each new pattern vertex takes the
    lowest-id unused complement-neighbour of its parent's image."""
    if not seed:
        raise ValueError("seed embedding is empty")
    mapping = dict(seed)
    used = 0
    for h in mapping.values():
        if used >> h & 1:
            raise ValueError("seed is not injective")
        used |= 1 << h
    for p, h in mapping.items():
        for q in iter_bits(pattern.neighbors(p)):
            if q in mapping and not gbar.has_edge(h, mapping[q]):
                raise ValueError(f"seed edge {p}-{q} is not a complement edge")
    queue = deque(sorted(mapping))
    while queue:
        p = queue.popleft()
        for c in iter_bits(pattern.neighbors(p)):
            if c in mapping:
                continue
            free = gbar.neighbors(mapping[p]) & ~used
            if not free:
                return StuckReport(mapping[p], p, mapping, gbar.vertex_mask & ~used)
            h = lowest(free)
            mapping[c] = h
            used |= 1 << h
            queue.append(c)
    if len(mapping) != pattern.order:
        raise ValueError("pattern is not connected to the seed")
    return mapping


# -- anchor sets -------------------------------------------------------------------


@dataclass(frozen=True)
class AnchorSets:
    center: int
    s: int
    x: int
    y: int
    u: int
    case: int
    structure: NeighborhoodStructure

    @property
    def xy(self) -> int:
        return self.x | self.y


def build_anchor_sets(g: Graph, v: int, s: int | None, n: int, m: int) -> AnchorSets:
    """Pick ``X ⊆ X_v``, ``Y ⊆ Y_v`` and ``U ⊆ U_v`` with ``|X ∪ Y| = n-m+1``."""
    s = g.vertex_mask if s is None else s
    if g.degree_in(v, s & ~(1 << v)) < n:
        raise HypothesisError(f"vertex {v} has only {g.degree_in(v, s & ~(1 << v))} neighbours in S, need {n}")
    ns = neighborhood_structure(g, v, s, m)
    size = n - m + 1
    if ns.x.bit_count() >= size:
        x = take_lowest(ns.x, size)
        return AnchorSets(v, s, x, 0, x, 1, ns)
    if ns.u.bit_count() >= size:
        x = ns.x
        u = x | take_lowest(ns.u & ~x, size - x.bit_count())
        return AnchorSets(v, s, x, u & ~x, u, 2, ns)
    x, u = ns.x, ns.u
    y = u & ~x
    y |= take_lowest(ns.y & ~u, size - x.bit_count() - y.bit_count())
    return AnchorSets(v, s, x, y, u, 3, ns)


def check_anchor_sets(g: Graph, a: AnchorSets, n: int, m: int) -> list[str]:
    bad = []
    if (a.x | a.y).bit_count() != n - m + 1:
        bad.append(f"|X ∪ Y| = {(a.x | a.y).bit_count()}, expected {n - m + 1}")
    if a.x & a.y:
        bad.append("X and Y overlap")
    if a.x.bit_count() < n - 3 * m + 3:
        bad.append("|X| too small")
    if a.u.bit_count() < n - 2 * m + 2:
        bad.append("|U| too small")
    if a.y.bit_count() > 3 * m - 3:
        bad.append("|Y| too large")
    if a.x & ~a.u or a.u & ~(a.x | a.y):
        bad.append("X ⊆ U ⊆ X ∪ Y fails")
    if not g.is_independent(a.u):
        bad.append("U is not independent")
    for w in iter_bits(a.x):
        if g.neighbors(w) & (a.x | a.y):
            bad.append(f"X vertex {w} has a G-neighbour in X ∪ Y")
            break
    return bad


# -- placement into X ∪ Y ----------------------------------------------------------


def embed_forest_pinned(
    tree: Tree,
    x: int,
    y: int,
    removed: int = 0,
    pins: dict[int, int] | None = None,
    *,
    avoid_y: int = 0,
    budget: int | None = None,
) -> dict[int, int]:
    """Map ``tree - removed`` into ``x ∪ y`` honouring ``pins`` (into ``x``).

    Only ``A``-side vertices go to ``y``, and only as many as needed to fit;
    pinned vertices and those in ``avoid_y`` always land in ``x``.  Valid in
    the complement whenever ``x`` is a complement-clique complete to ``y``.
    """
    pins = dict(pins or {})
    part = tree.vertex_mask & ~removed
    if part.bit_count() > (x | y).bit_count():
        raise EmbeddingError(f"{part.bit_count()} vertices do not fit into {(x | y).bit_count()} slots")
    pin_src = 0
    pin_dst = 0
    for w, u in pins.items():
        if not part >> w & 1:
            raise EmbeddingError(f"pinned pattern vertex {w} is removed")
        if not x >> u & 1:
            raise EmbeddingError(f"pin target {u} is outside X")
        if pin_src >> w & 1 or pin_dst >> u & 1:
            raise EmbeddingError("pins are not distinct")
        pin_src |= 1 << w
        pin_dst |= 1 << u
    if budget is not None:
        spent = (tree.a & (pin_src | avoid_y)).bit_count() + (tree.a & removed).bit_count()
        if spent > budget:
            raise EmbeddingError(f"A-side budget {spent} exceeds {budget}")
    need_y = max(0, part.bit_count() - x.bit_count())
    cand = tree.a & part & ~pin_src & ~avoid_y
    if cand.bit_count() < need_y:
        raise EmbeddingError(f"only {cand.bit_count()} A-vertices available for {need_y} Y-slots")
    to_y = take_lowest(cand, need_y)
    mapping = dict(pins)
    for p, h in zip(iter_bits(to_y), iter_bits(y)):
        mapping[p] = h
    rest = part & ~pin_src & ~to_y
    for p, h in zip(iter_bits(rest), iter_bits(x & ~pin_dst)):
        mapping[p] = h
    if len(mapping) != part.bit_count():
        raise EmbeddingError("X ran out of room")
    return mapping


# -- engine state -----------------------------------------------------------------


@dataclass
class ProofContext:
    g: Graph
    gbar: Graph
    tree: Tree
    n: int
    m: int
    first: AnchorSets | None = None
    second: AnchorSets | None = None
    z: int = 0
    w: int = 0
    z1: list[int] = field(default_factory=list)
    side: int = 1
    u1: int = 0  # possibly trimmed copies of the U sets
    u2: int = 0
    trace: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.g.order

    def anchors(self, side: int) -> AnchorSets:
        return self.first if side == 1 else self.second

    def fail(self, claim: str, message: str):
        return TheoremViolation(claim, message, {"n": self.n, "m": self.m, "trace": list(self.trace)})

    def witness(self, mapping: dict[int, int], route: str) -> Witness:
        self.trace.append(route)
        try:
            return complement_witness("tree", self.tree.graph, self.g, mapping, self.n, self.m, route)
        except TheoremViolation as exc:
            raise self.fail(route, str(exc)) from None


def _tree_witness(ctx: ProofContext, mapping: dict[int, int], route: str) -> Witness:
    return ctx.witness(mapping, route)


def _fill(mapping: dict[int, int], pattern: int, hosts: int) -> int:
    """Map ``pattern`` vertices (ascending) onto ``hosts`` (ascending) and
    return the host vertices used."""
    used = 0
    it = iter_bits(hosts)
    for p in iter_bits(pattern):
        h = next(it, None)
        if h is None:
            raise EmbeddingError("not enough host vertices")
        mapping[p] = h
        used |= 1 << h
    return used


# -- many leaves on one vertex -------------------------------------------------------


def heavy_leaf_vertex(t: Tree, threshold: int) -> int | None:
    for v in range(t.n):
        if t.leaf_neighbors(v).bit_count() >= threshold:
            return v
    return None


def heavy_leaf_witness(g: Graph, t: Tree, m: int, heavy_vertex: int, gbar: Graph | None = None) -> Witness:
    """Witness for a tree with a vertex carrying at least ``m - 1`` leaves.

    If some vertex of G has degree ``>= n + m - 1`` its neighbourhood holds
    ``X ∪ Y`` of size ``>= n`` and the whole tree goes there.  Otherwise the
    complement has minimum degree ``>= n - m``; the tree minus ``m - 1``
    leaves is embedded greedily with ``heavy_vertex`` on a vertex of
    complement degree ``>= n - 1``, which then takes the leaves.
    """
    n = t.n
    gbar = gbar or g.complement()
    ctx = ProofContext(g, gbar, t, n, m)
    for u in range(g.order):
        if g.degree(u) >= n + m - 1:
            try:
                ns = neighborhood_structure(g, u, None, m)
            except FanPresent as fp:
                return fan_witness(g, FanEmbedding(fp.center, tuple(fp.matching)), n, "heavy leaves / fan")
            if (ns.x | ns.y).bit_count() < n:
                raise ctx.fail("heavy leaves", f"|X ∪ Y| = {(ns.x | ns.y).bit_count()} < n at vertex {u}")
            try:
                mapping = embed_forest_pinned(t, ns.x, ns.y)
            except EmbeddingError as exc:
                raise ctx.fail("heavy leaves", str(exc)) from None
            return _tree_witness(ctx, mapping, "heavy leaves / high-degree neighbourhood")
    centre = next((w for w in range(g.order) if gbar.degree(w) >= n - 1), None)
    if centre is None:
        raise ctx.fail("heavy leaves", "no vertex of complement degree n - 1 (star centre) exists")
    leaves = take_lowest(t.leaf_neighbors(heavy_vertex), m - 1)
    try:
        emb = lemma3_greedy_embed(t, gbar, heavy_vertex, centre, skip=leaves)
    except EmbeddingError as exc:
        raise ctx.fail("heavy leaves", str(exc)) from None
    mapping = dict(emb.mapping)
    used = sum(1 << h for h in mapping.values())
    _fill(mapping, leaves, gbar.neighbors(centre) & ~used)
    return _tree_witness(ctx, mapping, "heavy leaves / star centre")


# -- splitting across the two cliques ---------------------------------------------------


def _sorted_branches(t: Tree, x: int, within: int) -> list[tuple[int, int]]:
    return sorted(t.branches(x, within), key=lambda rc: (rc[1].bit_count(), lowest(rc[1])))


def smallest_prefix(branches: list[tuple[int, int]], target: int) -> tuple[list[tuple[int, int]], int]:
    """Shortest ascending prefix of ``branches`` whose sizes sum to ``target``."""
    total = 0
    for i, (_, c) in enumerate(branches):
        total += c.bit_count()
        if total >= target:
            mask = 0
            for _, cc in branches[: i + 1]:
                mask |= cc
            return branches[: i + 1], mask
    raise ValueError("components too small to reach the target")


def clique_split_witness(ctx: ProofContext, w: int, home: int, away: int) -> Witness:
    """``w`` in clique ``home`` sees ``>= 2m-2`` vertices of clique ``away``
    in the complement: hang small branches of a separator off ``w``."""
    t, m = ctx.tree, ctx.m
    sep = lemma2_separator(t)
    x = sep.vertex
    chosen, c_mask = smallest_prefix(_sorted_branches(t, x, sep.k), 2 * m - 2)
    mapping = {x: w}
    rest = t.vertex_mask & ~c_mask & ~(1 << x)
    try:
        _fill(mapping, rest, home & ~(1 << w))
        roots = sum(1 << r for r, _ in chosen)
        used = _fill(mapping, roots, ctx.gbar.neighbors(w) & away)
        _fill(mapping, c_mask & ~roots, away & ~used)
    except EmbeddingError as exc:
        raise ctx.fail("clique split", str(exc)) from None
    return _tree_witness(ctx, mapping, "clique split")


def hub_split_witness(ctx: ProofContext, w: int, u1: int, u2: int) -> Witness:
    """``w`` outside both cliques with many complement-neighbours in each:
    put the separator vertex on ``w`` and one side in each clique."""
    t, gbar = ctx.tree, ctx.gbar
    nb1 = gbar.neighbors(w) & u1
    nb2 = gbar.neighbors(w) & u2
    sep = lemma2_separator(t)
    x = sep.vertex
    kb = _sorted_branches(t, x, sep.k)
    hb = _sorted_branches(t, x, sep.h)
    if len(kb) > nb1.bit_count():
        move = len(kb) - nb1.bit_count()
        hb = sorted(hb + kb[:move], key=lambda rc: (rc[1].bit_count(), lowest(rc[1])))
        kb = kb[move:]
    elif len(hb) > nb2.bit_count():
        move = len(hb) - nb2.bit_count()
        kb = sorted(kb + hb[:move], key=lambda rc: (rc[1].bit_count(), lowest(rc[1])))
        hb = hb[move:]
    if len(kb) > nb1.bit_count() or len(hb) > nb2.bit_count():
        raise ctx.fail("hub split", "separator degree exceeds the hub's complement degree after rebalancing")
    mapping = {x: w}
    try:
        for branches, nb, clique in ((kb, nb1, u1), (hb, nb2, u2)):
            roots = sum(1 << r for r, _ in branches)
            body = 0
            for _, c in branches:
                body |= c
            used = _fill(mapping, roots, nb)
            _fill(mapping, body & ~roots, clique & ~used)
    except EmbeddingError as exc:
        raise ctx.fail("hub split", str(exc)) from None
    return _tree_witness(ctx, mapping, "hub split")


def enforce_bipartite_structure(ctx: ProofContext) -> Witness | None:
    """Check that the two cliques ``U1``, ``U2`` are almost completely joined
    in G and that every outside vertex is sparse towards one of them.

    Any violation is turned into a witness.  Otherwise ``ctx.z1`` and
    ``ctx.side`` are set for the final embedding.
    """
    g, gbar, n, m = ctx.g, ctx.gbar, ctx.n, ctx.m
    u1, u2 = ctx.first.u, ctx.second.u
    for home, away in ((u1, u2), (u2, u1)):
        for w in iter_bits(home):
            if (gbar.neighbors(w) & away).bit_count() >= 2 * m - 2:
                return clique_split_witness(ctx, w, home, away)
    if 20 * ctx.tree.max_degree() >= 11 * n:
        raise ctx.fail("max degree", "tree maximum degree reached 11n/20 without a heavy-leaf vertex")
    outside = g.vertex_mask & ~(u1 | u2)
    for w in iter_bits(outside):
        a = (gbar.neighbors(w) & u1).bit_count()
        b = (gbar.neighbors(w) & u2).bit_count()
        if 40 * a >= 11 * n and 40 * b >= 11 * n:
            return hub_split_witness(ctx, w, u1, u2)
    for w in iter_bits(outside):
        fan = sparse_side_fan(ctx, w, u1, u2)
        if fan is not None:
            return fan
    ctx.u1, ctx.u2 = u1, u2
    assign_z1(ctx)
    return None


def sparse_side_fan(ctx: ProofContext, w: int, u1: int, u2: int, small=None) -> Witness | None:
    """If ``w`` is G-dense to one clique (``small`` holds for its number of
    complement-neighbours there) and has ``m`` G-neighbours in the other, the
    near-complete join between the cliques yields a fan centred at ``w``."""
    g, gbar, n, m = ctx.g, ctx.gbar, ctx.n, ctx.m
    if small is None:
        small = lambda count: 40 * count < 11 * n  # noqa: E731
    for near, far in ((u1, u2), (u2, u1)):
        if not small((gbar.neighbors(w) & far).bit_count()):
            continue
        left = g.neighbors(w) & near
        if left.bit_count() < m:
            continue
        pairs = greedy_cross_matching(g, left, g.neighbors(w) & far, m)
        if pairs is None:
            raise ctx.fail("sparse side", f"vertex {w} is dense to both cliques but no cross matching found")
        ctx.trace.append("sparse side / fan")
        return fan_witness(g, FanEmbedding(w, tuple(pairs)), n, "sparse side / fan")
    return None


def assign_z1(ctx: ProofContext) -> None:
    g, m = ctx.g, ctx.m
    a1, a2 = ctx.first, ctx.second
    ctx.z = g.vertex_mask & ~(a1.xy | a2.xy)
    ctx.w = g.vertex_mask & ~(ctx.u1 | ctx.u2)
    if ctx.z.bit_count() != 2 * m - 3:
        raise ctx.fail("leftover set", f"|Z| = {ctx.z.bit_count()}, expected {2 * m - 3}")
    if ctx.z & ~ctx.w:
        raise ctx.fail("leftover set", "Z is not contained in W")
    for side, u in ((1, ctx.u1), (2, ctx.u2)):
        good = [z for z in iter_bits(ctx.z) if g.degree_in(z, u) <= m - 1]
        if len(good) >= m - 1:
            ctx.z1, ctx.side = good[: m - 1], side
            return
    raise ctx.fail("leftover set", "neither clique has m - 1 sparse leftover vertices")


# -- the final removal-and-pin embedding ---------------------------------------------------


def choose_leaves(t: Tree, count: int, cap: int, exclude: int = 0) -> int:
    """Up to ``count`` leaves in id order, at most ``cap`` per parent."""
    taken = 0
    per_parent: dict[int, int] = {}
    for leaf in iter_bits(t.leaves & ~exclude):
        if taken.bit_count() == count:
            break
        parent = t.adj[leaf][0]
        if per_parent.get(parent, 0) < cap:
            per_parent[parent] = per_parent.get(parent, 0) + 1
            taken |= 1 << leaf
    return taken


def removal_multiplicity(t: Tree, d: int) -> int:
    return max(((t.adj_mask[v] & d).bit_count() for v in range(t.n) if not d >> v & 1), default=0)


@dataclass(frozen=True)
class RemovalPlan:
    removed: int
    neighbours: tuple[int, ...]
    targets: tuple[int, ...]  # images of the removed set, by ascending pattern id
    pins: dict[int, int]
    multiplicity: int
    case: int


def plan_removal(ctx: ProofContext, d: int, x_pool: int, case: int) -> RemovalPlan:
    """Send ``d`` onto ``Z1`` and pick, for each neighbour of ``d``, an
    ``X`` vertex complement-adjacent to all images of its ``d``-neighbours."""
    t, gbar = ctx.tree, ctx.gbar
    images = dict(zip(iter_bits(d), ctx.z1))
    ys = 0
    for v in iter_bits(d):
        ys |= t.adj_mask[v]
    ys &= ~d
    pins = {}
    taken = 0
    for y in iter_bits(ys):
        pool = x_pool & ~taken
        for dv in iter_bits(t.adj_mask[y] & d):
            pool &= gbar.neighbors(images[dv])
        if not pool:
            raise ctx.fail("pin selection", f"no X vertex is complement-adjacent to all images next to {y}")
        pins[y] = lowest(pool)
        taken |= 1 << pins[y]
    return RemovalPlan(d, tuple(bits(ys)), tuple(images[v] for v in iter_bits(d)), pins, removal_multiplicity(t, d), case)


def final_case_embed(ctx: ProofContext) -> Witness:
    t, m = ctx.tree, ctx.m
    a = ctx.anchors(ctx.side)
    if t.leaf_count >= m + 1:
        d = choose_leaves(t, m - 1, m - 4)
        case, limit = 1, m - 4
    else:
        k = lemma1_degree_two_set(t, 0).d
        if k.bit_count() + t.leaf_count < m + 3:
            raise ctx.fail("few leaves", f"|K| + |L| = {k.bit_count() + t.leaf_count} < m + 3")
        d = take_lowest(k, min(k.bit_count(), m - 1))
        d |= choose_leaves(t, m - 1 - d.bit_count(), m - 6)
        case, limit = 2, m - 5
    if d.bit_count() != m - 1:
        raise ctx.fail(f"removal case {case}", f"only {d.bit_count()} vertices selected for removal")
    plan = plan_removal(ctx, d, a.x, case)
    if plan.multiplicity > limit:
        raise ctx.fail(f"removal case {case}", f"multiplicity {plan.multiplicity} > {limit}")
    try:
        mapping = embed_forest_pinned(t, a.x, a.y, d, plan.pins, budget=m - 1)
    except EmbeddingError as exc:
        raise ctx.fail(f"removal case {case}", str(exc)) from None
    for v, h in zip(iter_bits(d), plan.targets):
        mapping[v] = h
    return _tree_witness(ctx, mapping, "leaf removal" if case == 1 else "degree-two removal")


# -- orchestration -------------------------------------------------------------------------


def seed_subtree(t: Tree, count: int) -> int:
    """Delete the lowest-id leaf ``count`` times; return the removed mask."""
    deg = list(t.degree)
    removed = 0
    for _ in range(count):
        leaf = next(v for v in range(t.n) if not removed >> v & 1 and deg[v] <= 1)
        removed |= 1 << leaf
        for u in t.adj[leaf]:
            deg[u] -= 1
    return removed


def _first_anchor_vertex(ctx: ProofContext, strategy: str) -> int | Witness:
    g, gbar, t, n = ctx.g, ctx.gbar, ctx.tree, ctx.n
    if strategy == "structural":
        v = next((v for v in range(g.order) if g.degree(v) >= n), None)
        if v is not None:
            return v
    root = min(range(t.n), key=lambda p: (-t.degree[p], p))
    host = min(range(g.order), key=lambda h: (-gbar.degree(h), h))
    res = greedy_extend(gbar, t.graph, {root: host})
    if isinstance(res, dict):
        return _tree_witness(ctx, res, "greedy")
    if g.degree(res.vertex) < n:
        raise ctx.fail("first anchor", f"stuck vertex {res.vertex} has degree {g.degree(res.vertex)} < n")
    return res.vertex


def _second_anchor_vertex(ctx: ProofContext, strategy: str) -> int | Witness:
    g, t, n, m = ctx.g, ctx.tree, ctx.n, ctx.m
    a1 = ctx.first
    o1 = g.vertex_mask & ~a1.xy
    if strategy == "structural":
        u = next((u for u in range(g.order) if g.degree_in(u, o1) >= n), None)
        if u is not None:
            return u
    removed = seed_subtree(t, m - 1)
    try:
        seed = embed_forest_pinned(t, a1.x, a1.y, removed)
    except EmbeddingError as exc:
        raise ctx.fail("second anchor", str(exc)) from None
    res = greedy_extend(ctx.gbar, t.graph, seed)
    if isinstance(res, dict):
        return _tree_witness(ctx, res, "anchored greedy")
    if g.degree_in(res.vertex, o1) < n:
        raise ctx.fail("second anchor", f"stuck vertex {res.vertex} has {g.degree_in(res.vertex, o1)} < n neighbours outside X1 ∪ Y1")
    return res.vertex


def find_witness_tree(
    g: Graph,
    t: Tree,
    m: int,
    *,
    strategy: str = "greedy",
    enforce_hypotheses: bool = True,
) -> Witness:
    """Fan ``F_m`` in ``g`` or a copy of ``t`` in the complement of ``g``.

    ``strategy="greedy"`` tries cheap greedy embeddings before each anchor
    step; ``"structural"`` takes an anchor vertex by degree whenever one
    exists, which drives more instances through the structural steps.
    """
    n = t.n
    if g.order != 2 * n - 1:
        raise HypothesisError(f"host has {g.order} vertices, expected 2n - 1 = {2 * n - 1}")
    if enforce_hypotheses:
        check_tree_hypotheses(n, m)
    if strategy not in ("greedy", "structural"):
        raise ValueError(f"unknown strategy {strategy!r}")
    fan = find_fan(g, m)
    if fan is not None:
        return fan_witness(g, fan, n)
    gbar = g.complement()
    ctx = ProofContext(g, gbar, t, n, m)
    heavy = heavy_leaf_vertex(t, m - 1)
    if heavy is not None:
        return heavy_leaf_witness(g, t, m, heavy, gbar)

    v = _first_anchor_vertex(ctx, strategy)
    if isinstance(v, Witness):
        return v
    ctx.first = build_anchor_sets(g, v, None, n, m)
    ctx.trace.append(f"first anchor {v} (case {ctx.first.case})")
    u = _second_anchor_vertex(ctx, strategy)
    if isinstance(u, Witness):
        return u
    o1 = g.vertex_mask & ~ctx.first.xy
    ctx.second = build_anchor_sets(g, u, o1, n, m)
    ctx.trace.append(f"second anchor {u} (case {ctx.second.case})")
    for a in (ctx.first, ctx.second):
        bad = check_anchor_sets(g, a, n, m)
        if bad:
            raise ctx.fail("anchor sets", "; ".join(bad))
    if ctx.first.xy & ctx.second.xy:
        raise ctx.fail("anchor sets", "the two anchor passes overlap")

    w = enforce_bipartite_structure(ctx)
    if w is not None:
        return w
    log.debug("final case on side %d with Z1=%s", ctx.side, ctx.z1)
    return final_case_embed(ctx)
