"""Witness engine for unicyclic patterns.

The pattern ``UC`` is cut at a cycle edge ``t1 t2`` into a tree ``T``.  The
engine embeds ``T`` in the complement of ``G`` while steering ``t1`` and
``t2`` onto complement-adjacent vertices (both into one complement-clique,
onto a known crossing complement edge, or through the image of their common
anchor), which restores the cut edge.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .cycles import DEFAULT_BUDGET, CyclePlan, cycle_witness
from .errors import EmbeddingError, HypothesisError, TheoremViolation
from .graph import Graph, iter_bits, lowest, take_lowest
from .matching import FanEmbedding, find_fan, greedy_cross_matching
from .tree_engine import (
    ProofContext,
    _fill,
    _sorted_branches,
    assign_z1,
    build_anchor_sets,
    check_anchor_sets,
    check_tree_hypotheses,
    choose_leaves,
    embed_forest_pinned,
    greedy_extend,
    heavy_leaf_vertex,
    plan_removal,
    smallest_prefix,
    sparse_side_fan,
)
from .trees import Tree, UnicyclicGraph, lemma1_degree_two_set, lemma2_separator, unicyclic_normalize
from .witness import Witness, complement_witness, fan_witness

log = logging.getLogger(__name__)


def check_unicyclic_hypotheses(n: int, m: int) -> None:
    check_tree_hypotheses(n, m, min_m=18)


# -- splitting the cut tree around t1, t2 ------------------------------------------


@dataclass(frozen=True)
class UCSplit:
    """``T - x`` partitioned into ``h`` and ``j`` with no edges between them.

    ``conditions`` lists which of the four placements of ``t1``, ``t2`` hold:
    1 ``x`` is one of them, 2 ``x`` is adjacent to neither, 3 both lie in
    ``h``, 4 both lie in ``j``.
    """

    x: int
    h: int
    j: int
    conditions: tuple[int, ...]
    branch: str


def split_conditions(t: Tree, t1: int, t2: int, x: int, h: int, j: int) -> tuple[int, ...]:
    ts = 1 << t1 | 1 << t2
    out = []
    if x in (t1, t2):
        out.append(1)
    if not t.adj_mask[x] & ts:
        out.append(2)
    if h & ts == ts:
        out.append(3)
    if j & ts == ts:
        out.append(4)
    return tuple(out)


def check_uc_split(t: Tree, t1: int, t2: int, m: int, s: UCSplit) -> list[str]:
    n = t.n
    bad = []
    rest = t.vertex_mask & ~(1 << s.x)
    if s.h & s.j or (s.h | s.j) != rest:
        bad.append("H and J do not partition T - x")
    if any(t.adj_mask[v] & s.j for v in iter_bits(s.h)):
        bad.append("an edge joins H and J")
    for name, part in (("H", s.h), ("J", s.j)):
        if not 2 * m - 2 <= part.bit_count() <= n - 2 * m + 1:
            bad.append(f"|{name}| = {part.bit_count()} outside [{2 * m - 2}, {n - 2 * m + 1}]")
    if (t.adj_mask[s.x] & s.h).bit_count() > 2 * m - 2:
        bad.append("d_H(x) exceeds 2m - 2")
    if not split_conditions(t, t1, t2, s.x, s.h, s.j):
        bad.append("t1, t2 are split across H and J next to x")
    return bad


def _make_split(t: Tree, t1: int, t2: int, x: int, h: int, branch: str) -> UCSplit:
    j = t.vertex_mask & ~h & ~(1 << x)
    return UCSplit(x, h, j, split_conditions(t, t1, t2, x, h, j), branch)


def _reroot(t: Tree, t1: int, t2: int, m: int, v: int, region: int, branch: str) -> UCSplit:
    _, h = smallest_prefix(_sorted_branches(t, v, region), 2 * m - 2)
    return _make_split(t, t1, t2, v, h, branch)


def _component_with(branches: list[tuple[int, int]], v: int) -> tuple[int, int]:
    return next((r, c) for r, c in branches if c >> v & 1)


def claim45_split(t: Tree, t1: int, t2: int, m: int) -> UCSplit:
    """Balanced split of ``T - x`` with small ``d_H(x)`` that never separates
    ``t1`` from ``t2`` next to ``x``.

    Starts from the separator of :func:`lemma2_separator`; when the first
    split fails, it regroups components or moves ``x`` to ``t1``, ``t2`` or
    a neighbour of ``x``.  ``branch`` records which construction fired.
    """
    n = t.n
    sep = lemma2_separator(t)
    x = sep.vertex
    order = _sorted_branches(t, x, sep.k) + _sorted_branches(t, x, sep.h)
    chosen, h = smallest_prefix(order, 2 * m - 2)
    result = _make_split(t, t1, t2, x, h, "prefix")
    if not check_uc_split(t, t1, t2, m, result):
        return result
    if result.conditions:
        raise TheoremViolation("split", "prefix split is out of bounds: " + "; ".join(check_uc_split(t, t1, t2, m, result)))

    inner, outer = (t1, t2) if h >> t1 & 1 else (t2, t1)
    _, ca = _component_with(order, inner)
    _, cb = _component_with(order, outer)
    pair = ca | cb
    if 2 * m - 2 <= pair.bit_count() <= n - 2 * m + 1:
        result = _make_split(t, t1, t2, x, pair, "pair")
    elif pair.bit_count() < 2 * m - 2:
        hh = h | cb
        if len(chosen) + 1 > 2 * m - 2:
            drop = next(c for _, c in chosen if c != ca and c.bit_count() == 1)
            hh &= ~drop
        result = _make_split(t, t1, t2, x, hh, "pair-with-prefix")
    else:
        near = t1 if t.adj_mask[x] >> t1 & 1 else t2
        far = t2 if near == t1 else t1
        _, cs = _component_with(order, near)
        y, cr = _component_with(order, far)
        if 2 * cs.bit_count() >= n - 2 * m + 2:
            result = _reroot(t, t1, t2, m, near, cs & ~(1 << near), "reroot-adjacent")
        elif y == far:
            result = _reroot(t, t1, t2, m, far, cr & ~(1 << far), "reroot-other")
        else:
            _, k = _component_with(t.branches(y), far)
            if k.bit_count() <= cr.bit_count() - 2 * m + 1:
                j = cr & ~(1 << y) & ~k
                result = _make_split(t, t1, t2, y, t.vertex_mask & ~(1 << y) & ~j, "cut-at-root")
            elif not t.adj_mask[y] >> far & 1:
                result = _reroot(t, t1, t2, m, y, cr & ~(1 << y), "reroot-root")
            else:
                result = _reroot(t, t1, t2, m, far, k & ~(1 << far), "reroot-other-inside")
    bad = check_uc_split(t, t1, t2, m, result)
    if bad:
        raise TheoremViolation("split", f"{result.branch}: " + "; ".join(bad))
    return result


def claim42_triple(gbar: Graph, k: int, h: int) -> tuple[int, int, int]:
    """``(x, y, z)`` with ``x, z ∈ k``, ``y ∈ h`` and ``y`` complement-adjacent
    to both: the first ``y`` (by id) with two complement-neighbours in ``k``."""
    for y in iter_bits(h):
        nb = gbar.neighbors(y) & k & ~(1 << y)
        if nb.bit_count() >= 2:
            x = lowest(nb)
            z = lowest(nb & ~(1 << x))
            return x, y, z
    raise TheoremViolation("triple", "no vertex of H has two complement-neighbours in K")


# -- engine state -------------------------------------------------------------------


@dataclass
class UCContext(ProofContext):
    uc: UnicyclicGraph | None = None
    t1: int = -1
    t2: int = -1

    @property
    def ts(self) -> int:
        return 1 << self.t1 | 1 << self.t2

    def witness(self, mapping: dict[int, int], route: str) -> Witness:
        self.trace.append(route)
        try:
            return complement_witness(
                "unicyclic", self.uc.graph, self.g, mapping, self.n, self.m, route, self.t1, self.t2
            )
        except TheoremViolation as exc:
            raise self.fail(route, str(exc)) from None


def _cycle_seed(u: UnicyclicGraph, plan: CyclePlan) -> dict[int, int]:
    return dict(zip(u.cycle, plan.cycle))


def pure_cycle_witness(g: Graph, u: UnicyclicGraph, m: int, gbar: Graph, budget: int) -> Witness:
    plan = cycle_witness(gbar, g, u.n, m, u.n, budget)
    t1, t2 = u.cycle[0], u.cycle[1]
    return complement_witness("unicyclic", u.graph, g, _cycle_seed(u, plan), u.n, m, f"cycle / {plan.method}", t1, t2)


def cycle_then_greedy(ctx: UCContext, budget: int) -> Witness:
    """Low maximum degree: embed the pattern's cycle first, then grow."""
    plan = cycle_witness(ctx.gbar, ctx.g, ctx.uc.cycle_length, ctx.m, ctx.n, budget)
    res = greedy_extend(ctx.gbar, ctx.uc.graph, _cycle_seed(ctx.uc, plan))
    if not isinstance(res, dict):
        raise ctx.fail("low degree", f"greedy growth stuck at {res.vertex} although Δ(G) < n")
    return ctx.witness(res, f"cycle / {plan.method} + greedy")


# -- no second anchor: embed into X1 ∪ Y1 and the outside --------------------------------


def _attach_leaves(ctx: UCContext, mapping: dict[int, int], leaves: int, pool: int) -> None:
    used = sum(1 << h for h in mapping.values())
    for leaf in iter_bits(leaves):
        parent = ctx.tree.adj[leaf][0]
        free = ctx.gbar.neighbors(mapping[parent]) & pool & ~used
        if not free:
            raise ctx.fail("second anchor", f"no free outside complement-neighbour for leaf {leaf}")
        mapping[leaf] = lowest(free)
        used |= 1 << mapping[leaf]


def low_outside_degree_witness(ctx: UCContext) -> Witness:
    """Every vertex of ``X1 ∪ Y1`` has ``>= m - 1`` complement-neighbours
    outside: embed ``T`` minus ``m - 1`` vertices into ``X1 ∪ Y1`` with
    ``t1``, ``t2`` in ``X1`` and hang the rest outside."""
    g, gbar, t, n, m = ctx.g, ctx.gbar, ctx.tree, ctx.n, ctx.m
    a1 = ctx.first
    outside = g.vertex_mask & ~a1.xy
    for u in iter_bits(a1.xy):
        if (gbar.neighbors(u) & outside).bit_count() < m - 1:
            raise ctx.fail("second anchor", f"vertex {u} has fewer than m - 1 complement-neighbours outside")
    try:
        if t.leaf_count >= m:
            leaves = take_lowest(t.leaves & ~(1 << ctx.t2), m - 1)
            mapping = embed_forest_pinned(t, a1.x, a1.y, leaves, avoid_y=ctx.ts)
            _attach_leaves(ctx, mapping, leaves, outside)
            return ctx.witness(mapping, "second anchor / leaves outside")
        leaves = t.leaves & ~(1 << ctx.t2)
        need = m - 1 - leaves.bit_count()
        dset = lemma1_degree_two_set(t, ctx.ts).d
        if dset.bit_count() < need:
            raise ctx.fail("second anchor", f"only {dset.bit_count()} degree-two vertices, need {need}")
        chosen = take_lowest(dset, need)
        mapping: dict[int, int] = {}
        pins: dict[int, int] = {}
        free_x, free_o = a1.x, outside
        for d in iter_bits(chosen):
            if free_o.bit_count() < n + 1 or 2 * free_x.bit_count() < free_o.bit_count() + 1:
                raise ctx.fail("triple", "counting preconditions for the triple fail")
            a, b, c = claim42_triple(gbar, free_x, free_o)
            left, right = t.adj[d]
            mapping[d] = b
            pins[left], pins[right] = a, c
            free_x &= ~(1 << a | 1 << c)
            free_o &= ~(1 << b)
        mapping.update(embed_forest_pinned(t, a1.x, a1.y, leaves | chosen, pins, avoid_y=ctx.ts))
        _attach_leaves(ctx, mapping, leaves, free_o)
    except EmbeddingError as exc:
        raise ctx.fail("second anchor", str(exc)) from None
    return ctx.witness(mapping, "second anchor / degree-two outside")


# -- many leaves on one vertex -------------------------------------------------------------


def uc_heavy_leaf_witness(ctx: UCContext, x: int, centre: int | None = None) -> Witness:
    """``x`` carries ``>= 2m - 1`` leaves.  A vertex ``w`` of complement
    degree ``>= n - 1`` (the lowest, unless ``centre`` is given) hosts ``x``;
    the branches of ``x`` are shared between the cliques, roots on
    complement-neighbours of ``w``, and the spare leaves go anywhere next
    to ``w``."""
    g, gbar, t, n = ctx.g, ctx.gbar, ctx.tree, ctx.n
    u1, u2 = ctx.first.u, ctx.second.u
    w = centre if centre is not None else next((v for v in range(g.order) if gbar.degree(v) >= n - 1), None)
    if w is not None and gbar.degree(w) < n - 1:
        raise ValueError(f"centre {w} has complement degree below n - 1")
    if w is None:
        raise ctx.fail("heavy leaves", "no vertex of complement degree n - 1 (star centre) exists")
    own = t.leaf_neighbors(x) & ~(1 << ctx.t2)
    mapping = {x: w}
    try:
        for clique in (u1, u2):
            if clique >> w & 1:
                moved = take_lowest(own, max(0, n - clique.bit_count()))
                _fill(mapping, moved, gbar.neighbors(w) & ~clique)
                _fill(mapping, t.vertex_mask & ~moved & ~(1 << x), clique & ~(1 << w))
                return ctx.witness(mapping, "heavy leaves / clique centre")
        near, far = (u1, u2) if (gbar.neighbors(w) & u1).bit_count() >= 4 else (u2, u1)
        nb_near, nb_far = gbar.neighbors(w) & near, gbar.neighbors(w) & far
        if nb_near.bit_count() < 4:
            raise ctx.fail("heavy leaves", f"star centre {w} has fewer than 4 complement-neighbours in either clique")
        comps = [(r, c) for r, c in t.branches(x) if c.bit_count() >= 2 or c >> ctx.t2 & 1]
        comps.sort(key=lambda rc: (not rc[1] & ctx.ts, rc[1].bit_count(), lowest(rc[1])))
        cut = nb_near.bit_count() - 2
        used = 1 << w
        for first, group, nb, clique in ((True, comps[:cut], nb_near, near), (False, comps[cut:], nb_far, far)):
            roots = sum(1 << r for r, _ in group)
            body = 0
            for _, c in group:
                body |= c
            if first and x in (ctx.t1, ctx.t2):
                roots |= ctx.ts & body  # the partner of x must see w
            used |= _fill(mapping, roots, nb & ~used)
            used |= _fill(mapping, body & ~roots, clique & ~used)
        rest = t.vertex_mask & ~sum(1 << p for p in mapping)
        _fill(mapping, rest, gbar.neighbors(w) & ~used)
    except EmbeddingError as exc:
        raise ctx.fail("heavy leaves", str(exc)) from None
    return ctx.witness(mapping, "heavy leaves / outside centre")


# -- split embeddings across the cliques -------------------------------------------------


def embed_split(
    ctx: UCContext,
    sp: UCSplit,
    w: int,
    h_clique: int,
    h_pool: int,
    j_clique: int,
    j_pool: int,
    cross: tuple[int, int] | None,
    route: str,
) -> Witness:
    """``x -> w``; ``H`` into ``h_clique`` and ``J`` into ``j_clique`` with
    the neighbours of ``x`` on the pools (complement-neighbours of ``w``).

    ``t1``/``t2`` are kept complement-adjacent: a partner of ``x`` goes to a
    pool, and a pair split across ``H``/``J`` goes onto the crossing edge
    ``cross = (in h_clique, in j_clique)``.
    """
    t = ctx.tree
    x = sp.x
    mapping = {x: w}
    used = 1 << w

    def put(p: int, pool: int) -> None:
        nonlocal used
        free = pool & ~used
        if not free:
            raise EmbeddingError(f"no room for pattern vertex {p}")
        mapping[p] = lowest(free)
        used |= 1 << mapping[p]

    try:
        if x in (ctx.t1, ctx.t2):
            other = ctx.t2 if x == ctx.t1 else ctx.t1
            put(other, h_pool if sp.h >> other & 1 else j_pool)
        elif bool(sp.h >> ctx.t1 & 1) != bool(sp.h >> ctx.t2 & 1):
            if cross is None or t.adj_mask[x] & ctx.ts:
                raise ctx.fail(route, "t1, t2 split next to x with no crossing edge available")
            th = ctx.t1 if sp.h >> ctx.t1 & 1 else ctx.t2
            tj = ctx.t2 if th == ctx.t1 else ctx.t1
            mapping[th], mapping[tj] = cross
            used |= 1 << cross[0] | 1 << cross[1]
        for part, clique, pool in ((sp.h, h_clique, h_pool), (sp.j, j_clique, j_pool)):
            for r in iter_bits(t.adj_mask[x] & part):
                if r not in mapping:
                    put(r, pool)
            for p in iter_bits(part):
                if p not in mapping:
                    put(p, clique)
    except EmbeddingError as exc:
        raise ctx.fail(route, str(exc)) from None
    return ctx.witness(mapping, f"{route} ({sp.branch})")


def uc_clique_split_witness(ctx: UCContext, w: int, home: int, away: int, cross: tuple[int, int]) -> Witness:
    """``w`` in ``home`` sees ``>= 2m - 1`` vertices of ``away``: ``H`` goes
    across, ``J`` stays home.  ``cross = (y in home, z in away)``, ``y != w``."""
    sp = claim45_split(ctx.tree, ctx.t1, ctx.t2, ctx.m)
    y, z = cross
    nb = ctx.gbar.neighbors(w) & away
    return embed_split(ctx, sp, w, away, nb, home, home, (z, y), "clique split")


def uc_hub_split_witness(ctx: UCContext, w: int, u1: int, u2: int, cross: tuple[int, int]) -> Witness:
    """``w`` outside both cliques with many complement-neighbours in each."""
    t = ctx.tree
    sp = claim45_split(t, ctx.t1, ctx.t2, ctx.m)
    nb1 = ctx.gbar.neighbors(w) & u1
    nb2 = ctx.gbar.neighbors(w) & u2
    dj = (t.adj_mask[sp.x] & sp.j).bit_count()
    if dj >= nb2.bit_count():
        movable = [rc for rc in _sorted_branches(t, sp.x, sp.j) if not rc[1] & ctx.ts]
        shift = 0
        for _, c in movable[: dj - nb2.bit_count() + 1]:
            shift |= c
        sp = UCSplit(sp.x, sp.h | shift, sp.j & ~shift, sp.conditions, sp.branch + "+rebalanced")
    return embed_split(ctx, sp, w, u1, nb1, u2, nb2, cross, "hub split")


def _crossing_edges(gbar: Graph, u1: int, u2: int) -> list[tuple[int, int]]:
    return [(a, b) for a in iter_bits(u1) for b in iter_bits(gbar.neighbors(a) & u2)]


def _has_two_disjoint(edges: list[tuple[int, int]]) -> bool:
    if not edges:
        return False
    a0, b0 = edges[0]
    return any(a != a0 and b != b0 for a, b in edges)


def enforce_bipartite_structure_uc(ctx: UCContext) -> Witness | None:
    g, gbar, n, m = ctx.g, ctx.gbar, ctx.n, ctx.m
    u1, u2 = ctx.first.u, ctx.second.u
    outside = g.vertex_mask & ~(u1 | u2)
    cross = _crossing_edges(gbar, u1, u2)
    if _has_two_disjoint(cross):
        for home, away, oriented in ((u1, u2, cross), (u2, u1, [(b, a) for a, b in cross])):
            for w in iter_bits(home):
                if (gbar.neighbors(w) & away).bit_count() >= 2 * m - 1:
                    edge = next(e for e in oriented if e[0] != w)
                    return uc_clique_split_witness(ctx, w, home, away, edge)
        for w in iter_bits(outside):
            a = (gbar.neighbors(w) & u1).bit_count()
            b = (gbar.neighbors(w) & u2).bit_count()
            if 18 * a >= 18 + 5 * n and 18 * b >= 18 + 5 * n:
                return uc_hub_split_witness(ctx, w, u1, u2, cross[0])
        for w in iter_bits(outside):
            fan = sparse_side_fan(ctx, w, u1, u2, small=lambda c: 18 * c < 18 + 5 * n)
            if fan is not None:
                return fan
        ctx.u1, ctx.u2 = u1, u2
    else:
        if cross:
            a0, b0 = cross[0]
            apex_in_u1 = len(cross) == 1 or all(a == a0 for a, _ in cross)
            if apex_in_u1:
                u1 &= ~(1 << a0)
            else:
                u2 &= ~(1 << b0)
        for w in iter_bits(outside):
            left, right = g.neighbors(w) & u1, g.neighbors(w) & u2
            if left.bit_count() >= m and right.bit_count() >= m:
                pairs = greedy_cross_matching(g, left, right, m)
                if pairs is None:
                    raise ctx.fail("trimmed cliques", f"no cross matching at {w} although the cliques are fully joined")
                ctx.trace.append("trimmed cliques / fan")
                return fan_witness(g, FanEmbedding(w, tuple(pairs)), n, "trimmed cliques / fan")
        ctx.u1, ctx.u2 = u1, u2
    assign_z1(ctx)
    return None


def final_case_embed_uc(ctx: UCContext) -> Witness:
    t, m = ctx.tree, ctx.m
    a = ctx.anchors(ctx.side)
    pool = a.x & (ctx.u1 if ctx.side == 1 else ctx.u2)
    if t.leaf_count >= 2 * m + 2:
        d = choose_leaves(t, m - 1, m - 4, exclude=1 << ctx.t2)
        case, limit = 1, m - 4
    else:
        k = lemma1_degree_two_set(t, ctx.ts).d
        if k.bit_count() + t.leaf_count < 2 * m + 4:
            raise ctx.fail("few leaves", f"|K| + |L| = {k.bit_count() + t.leaf_count} < 2m + 4")
        d = take_lowest(k, min(k.bit_count(), m - 2))
        d |= choose_leaves(t, m - 1 - d.bit_count(), m - 6, exclude=ctx.ts)
        case, limit = 2, m - 5
    if d.bit_count() != m - 1:
        raise ctx.fail(f"removal case {case}", f"only {d.bit_count()} vertices selected for removal")
    plan = plan_removal(ctx, d, pool, case)
    if plan.multiplicity > limit:
        raise ctx.fail(f"removal case {case}", f"multiplicity {plan.multiplicity} > {limit}")
    try:
        mapping = embed_forest_pinned(t, a.x, a.y, d, plan.pins, avoid_y=ctx.ts, budget=m + 1)
    except EmbeddingError as exc:
        raise ctx.fail(f"removal case {case}", str(exc)) from None
    for v, h in zip(iter_bits(d), plan.targets):
        mapping[v] = h
    for tv in (ctx.t1, ctx.t2):
        if not a.x >> mapping[tv] & 1:
            raise ctx.fail(f"removal case {case}", f"t-vertex {tv} landed outside X")
    return ctx.witness(mapping, "leaf removal" if case == 1 else "degree-two removal")


# -- orchestration -------------------------------------------------------------------------


def find_witness_unicyclic(
    g: Graph,
    u: UnicyclicGraph,
    m: int,
    *,
    enforce_hypotheses: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Witness:
    """Fan ``F_m`` in ``g`` or a copy of ``u`` in the complement of ``g``."""
    n = u.n
    if g.order != 2 * n - 1:
        raise HypothesisError(f"host has {g.order} vertices, expected 2n - 1 = {2 * n - 1}")
    if enforce_hypotheses:
        check_unicyclic_hypotheses(n, m)
    fan = find_fan(g, m)
    if fan is not None:
        return fan_witness(g, fan, n)
    gbar = g.complement()
    if u.is_cycle:
        return pure_cycle_witness(g, u, m, gbar, budget)
    t1, t2, tree = unicyclic_normalize(u)
    ctx = UCContext(g, gbar, tree, n, m, uc=u, t1=t1, t2=t2)
    if g.max_degree() < n:
        return cycle_then_greedy(ctx, budget)

    v = next(v for v in range(g.order) if g.degree(v) >= n)
    ctx.first = build_anchor_sets(g, v, None, n, m)
    ctx.trace.append(f"first anchor {v} (case {ctx.first.case})")
    outside = g.vertex_mask & ~ctx.first.xy
    second = next((w for w in iter_bits(ctx.first.xy) if g.degree_in(w, outside) >= n), None)
    if second is None:
        return low_outside_degree_witness(ctx)
    ctx.second = build_anchor_sets(g, second, outside, n, m)
    ctx.trace.append(f"second anchor {second} (case {ctx.second.case})")
    for a in (ctx.first, ctx.second):
        bad = check_anchor_sets(g, a, n, m)
        if bad:
            raise ctx.fail("anchor sets", "; ".join(bad))

    heavy = heavy_leaf_vertex(tree, 2 * m - 1)
    if heavy is not None:
        return uc_heavy_leaf_witness(ctx, heavy)
    if 9 * tree.max_degree() >= 5 * n:
        raise ctx.fail("max degree", "cut tree has maximum degree >= 5n/9 without a heavy-leaf vertex")

    w = enforce_bipartite_structure_uc(ctx)
    if w is not None:
        return w
    return final_case_embed_uc(ctx)
