"""Hereditary and saturated vertex sets, and the quotient graphs they index.

Saturation only ever adds vertices that emit at least one edge; a sink is
never forced into a saturated set.
"""

from __future__ import annotations

from typing import Iterable

from .graph import DirectedGraph, GraphError, natural_key, reachable_from, strongly_connected_components

DEFAULT_LATTICE_CAP = 2**20

# Hereditary saturated sets are plain frozensets of vertex ids.
HereditarySaturatedSet = frozenset


class LatticeCapExceeded(GraphError):
    pass


def is_hereditary(g: DirectedGraph, S: Iterable[str]) -> bool:
    s = set(S)
    return all(e.range in s for v in s for e in g.out_edges(v))


def is_saturated(g: DirectedGraph, S: Iterable[str]) -> bool:
    s = set(S)
    return not any(
        v not in s and g.out_edges(v) and all(e.range in s for e in g.out_edges(v))
        for v in g.vertices
    )


def is_hereditary_saturated(g: DirectedGraph, S: Iterable[str]) -> bool:
    s = frozenset(S)
    return s <= g.vertex_set and is_hereditary(g, s) and is_saturated(g, s)


def hereditary_closure(g: DirectedGraph, S: Iterable[str]) -> frozenset[str]:
    return reachable_from(g, list(S))


def saturate(g: DirectedGraph, S: Iterable[str]) -> frozenset[str]:
    s = set(S)
    for v in s:
        g.check_vertex(v)
    if not is_hereditary(g, s):
        raise GraphError("saturate expects a hereditary set")
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v not in s and g.out_edges(v) and all(e.range in s for e in g.out_edges(v)):
                s.add(v)
                changed = True
    return frozenset(s)


def generated_ideal(g: DirectedGraph, S: Iterable[str]) -> frozenset[str]:
    """Smallest hereditary saturated set containing ``S``."""
    return saturate(g, hereditary_closure(g, S))


def sort_key(s: frozenset[str]) -> tuple:
    return (len(s), sorted(map(natural_key, s)))


def down_sets(g: DirectedGraph, cap: int = DEFAULT_LATTICE_CAP):
    """Yield every successor-closed vertex set (every hereditary set).

    Hereditary sets are unions of SCCs closed under the condensation order,
    so we walk the condensation sinks-first and choose each component in or
    out.  ``cap`` bounds the number of sets produced.
    """
    scc = strongly_connected_components(g)
    k = len(scc.components)
    succ = [set() for _ in range(k)]
    for a, b in scc.condensation:
        succ[a].add(b)
    order = list(range(k - 1, -1, -1))
    chosen = [False] * k
    count = 0
    # explicit stack of (position, phase) keeps deep condensations off the C stack
    stack = [(0, 0)]
    while stack:
        pos, phase = stack.pop()
        if pos == len(order):
            count += 1
            if count > cap:
                raise LatticeCapExceeded(f"more than {cap} hereditary sets")
            yield frozenset(v for i in range(k) if chosen[i] for v in scc.components[i])
            continue
        c = order[pos]
        if phase == 0:
            stack.append((pos, 1))
            stack.append((pos + 1, 0))
        elif phase == 1:
            if all(chosen[d] for d in succ[c]):
                chosen[c] = True
                stack.append((pos, 2))
                stack.append((pos + 1, 0))
        else:
            chosen[c] = False


def enumerate_hereditary_saturated(g: DirectedGraph, cap: int = DEFAULT_LATTICE_CAP) -> list[frozenset[str]]:
    """All hereditary saturated subsets, sorted by size then by members."""
    return sorted((h for h in down_sets(g, cap) if is_saturated(g, h)), key=sort_key)


def lattice_order(sets: list[frozenset[str]]) -> list[tuple[int, int]]:
    """Strict inclusion pairs ``(i, j)`` with ``sets[i] < sets[j]``."""
    return [(i, j) for i, a in enumerate(sets) for j, b in enumerate(sets) if a < b]


def quotient_graph(g: DirectedGraph, H: Iterable[str]) -> DirectedGraph:
    """The subgraph on ``F = E^0 \\ H`` with the edges whose range lies in ``F``."""
    h = frozenset(H)
    if not is_hereditary_saturated(g, h):
        raise GraphError("quotient needs a hereditary saturated set")
    return g.range_restricted(v for v in g.vertices if v not in h)
