"""Cycles in the complement: a constructive Dirac theorem and a finder for
a cycle of prescribed length, used when the pattern is unicyclic."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SearchBudgetExhausted
from .graph import Graph, bits, iter_bits, lowest
from .matching import neighborhood_structure

DEFAULT_BUDGET = 10**7


def is_cycle(h: Graph, cycle: list[int]) -> bool:
    """``cycle`` lists at least 3 distinct vertices, consecutive (cyclically) adjacent in ``h``."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    return all(h.has_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def dirac_hamiltonian(h: Graph) -> list[int]:
    """Hamiltonian cycle of ``h`` when ``δ(h) >= |V(h)|/2``.

    Keeps a path, extends it at both ends while possible, closes it into a
    cycle through a crossing chord pair, then reopens the cycle next to a
    vertex that still has an outside neighbour.
    """
    n = h.order
    if n < 3:
        raise ValueError("need at least 3 vertices")
    if 2 * h.min_degree() < n:
        raise ValueError(f"minimum degree {h.min_degree()} is below {n}/2")
    rows = h.rows
    path = [0]
    inside = 1
    while True:
        # extend both ends greedily
        for _ in range(2):
            while True:
                free = rows[path[-1]] & ~inside
                if not free:
                    break
                v = lowest(free)
                path.append(v)
                inside |= 1 << v
            path.reverse()
        cyc = _close(rows, path)
        if len(cyc) == n:
            return cyc
        for i, c in enumerate(cyc):
            out = rows[c] & ~inside
            if out:
                u = lowest(out)
                path = cyc[i + 1:] + cyc[: i + 1] + [u]
                inside |= 1 << u
                break
        else:
            raise AssertionError("graph with the Dirac condition is disconnected")


def _close(rows: tuple[int, ...], path: list[int]) -> list[int]:
    first, last = path[0], path[-1]
    if rows[first] >> last & 1:
        return list(path)
    for i in range(len(path) - 1):
        if rows[first] >> path[i + 1] & 1 and rows[path[i]] >> last & 1:
            return path[: i + 1] + path[:i:-1]
    raise AssertionError("no crossing chord pair on a maximal path")


@dataclass(frozen=True)
class CyclePlan:
    k: int
    cycle: tuple[int, ...]
    method: str  # "dirac-chord", "clique-in-U" or "searched"


def _chord_cycle(gbar: Graph, v: int, rest: int, k: int) -> list[int] | None:
    """Hamiltonian cycle of ``gbar[rest]`` plus a chord pair through ``v``."""
    order = bits(rest)
    if len(order) < max(3, k - 1):
        return None
    sub = gbar.induced(order)
    ham = [order[i] for i in dirac_hamiltonian(sub)]
    length = len(ham)
    nb = gbar.neighbors(v)
    for i in range(length):
        j = (i + k - 2) % length
        if nb >> ham[i] & 1 and nb >> ham[j] & 1:
            return [v] + [ham[(i + s) % length] for s in range(k - 1)]
    return None


def _dirac_core(gbar: Graph, k: int) -> int | None:
    """Peel minimum-degree vertices until ``2δ >= |V'| + 1``; None if the
    remaining set drops below ``k`` first."""
    alive = gbar.vertex_mask
    while alive.bit_count() >= k:
        size = alive.bit_count()
        worst = min(iter_bits(alive), key=lambda u: ((gbar.neighbors(u) & alive).bit_count(), u))
        if 2 * (gbar.neighbors(worst) & alive).bit_count() >= size + 1:
            return alive
        alive &= ~(1 << worst)
    return None


def search_cycle(h: Graph, k: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Depth-first search for a ``k``-cycle through its lowest vertex,
    preferring low-degree continuations; at most ``budget`` extension steps."""
    steps = 0
    rows = h.rows
    for s in range(h.order):
        allowed = h.vertex_mask & ~((1 << (s + 1)) - 1)
        if (rows[s] & allowed).bit_count() < 2:
            continue
        path = [s]
        used = 1 << s
        stack = [sorted(iter_bits(rows[s] & allowed), key=lambda u: -(rows[u] & allowed).bit_count())]
        while stack:
            steps += 1
            if steps > budget:
                raise SearchBudgetExhausted(f"no {k}-cycle found within {budget} steps", steps)
            if not stack[-1]:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            v = stack[-1].pop()
            if len(path) == k - 1:
                if rows[v] >> s & 1:
                    return path + [v]
                continue
            path.append(v)
            used |= 1 << v
            nxt = rows[v] & allowed & ~used
            stack.append(sorted(iter_bits(nxt), key=lambda u: -(rows[u] & allowed).bit_count()))
    raise SearchBudgetExhausted(f"the graph has no {k}-cycle", steps)


def cycle_witness(gbar: Graph, g: Graph, k: int, m: int, n: int, budget: int = DEFAULT_BUDGET) -> CyclePlan:
    """A ``k``-cycle in ``gbar`` (the complement of ``g``), assuming ``g``
    has no fan ``F_m``.

    If ``Δ(g) <= n - 2`` the complement minus any vertex is Dirac, and the
    cycle is a Hamiltonian arc closed through that vertex.  Otherwise an
    independent set ``U_u`` of a high-degree vertex may already be a large
    enough complement-clique.  Failing both, the search runs on a peeled
    Dirac core, and as a last resort by bounded depth-first search.
    """
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    if g.max_degree() <= n - 2:
        cyc = _chord_cycle(gbar, 0, gbar.vertex_mask & ~1, k)
        if cyc is not None:
            return CyclePlan(k, tuple(cyc), "dirac-chord")
    for u in sorted(range(g.order), key=lambda v: (-g.degree(v), v)):
        if g.degree(u) < k:
            break
        ns = neighborhood_structure(g, u, None, m)
        if ns.u.bit_count() >= k:
            return CyclePlan(k, tuple(bits(ns.u)[:k]), "clique-in-U")
    core = _dirac_core(gbar, k)
    if core is not None:
        v = min(iter_bits(core), key=lambda u: (-(gbar.neighbors(u) & core).bit_count(), u))
        rest = core & ~(1 << v)
        if rest.bit_count() >= 3:
            cyc = _chord_cycle(gbar, v, rest, k)
            if cyc is not None:
                return CyclePlan(k, tuple(cyc), "dirac-chord")
    return CyclePlan(k, tuple(search_cycle(gbar, k, budget)), "searched")
