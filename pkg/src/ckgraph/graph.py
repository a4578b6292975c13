"""Finite directed multigraphs: paths, cycles, reachability and SCCs.

Vertex and edge ids are opaque strings.  Parallel edges and loops are
allowed.  Graphs are immutable once built.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_CYCLE_CAP = 10**6


class GraphError(ValueError):
    pass


class UnknownVertexError(GraphError):
    pass


class CycleLimitExceeded(GraphError):
    pass


_CHUNK = re.compile(r"(\d+)")


def natural_key(name: str) -> tuple:
    """Sort key that orders ``v2`` before ``v10``."""
    parts = _CHUNK.split(name)
    return tuple((0, int(p), p) if p.isdigit() else (1, 0, p) for p in parts)


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    source: str
    range: str


class DirectedGraph:
    """A finite directed graph ``(E0, E1, r, s)``.

    ``truncated`` marks graphs cut out of an infinite realization; they are
    fine for export and oracles but decisions must not be based on them.
    """

    __slots__ = ("vertices", "edges", "truncated", "_out", "_in", "_by_id", "_vset")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple] = (),
                 truncated: bool = False):
        vs = list(vertices)
        vset = set(vs)
        if len(vset) != len(vs):
            raise GraphError("duplicate vertex id")
        es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        by_id: dict[str, Edge] = {}
        for e in es:
            if e.id in by_id:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end in (e.source, e.range):
                if end not in vset:
                    raise UnknownVertexError(f"edge {e.id!r} uses undeclared vertex {end!r}")
            by_id[e.id] = e
        self.vertices: tuple[str, ...] = tuple(sorted(vs, key=natural_key))
        self.edges: tuple[Edge, ...] = tuple(sorted(es, key=lambda e: natural_key(e.id)))
        self.truncated = truncated
        self._vset = frozenset(vset)
        self._by_id = by_id
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        inn: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
            inn[e.range].append(e)
        self._out = {v: tuple(l) for v, l in out.items()}
        self._in = {v: tuple(l) for v, l in inn.items()}

    def __contains__(self, v: object) -> bool:
        return v in self._vset

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"DirectedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def vertex_set(self) -> frozenset[str]:
        return self._vset

    def check_vertex(self, v: str) -> None:
        if v not in self._vset:
            raise UnknownVertexError(f"unknown vertex {v!r}")

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def in_edges(self, v: str) -> tuple[Edge, ...]:
        return self._in[v]

    def successors(self, v: str) -> list[str]:
        seen: dict[str, None] = {}
        for e in self._out[v]:
            seen.setdefault(e.range)
        return list(seen)

    def predecessors(self, v: str) -> list[str]:
        seen: dict[str, None] = {}
        for e in self._in[v]:
            seen.setdefault(e.source)
        return list(seen)

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def sinks(self) -> frozenset[str]:
        return frozenset(v for v in self.vertices if not self._out[v])

    def induced(self, keep: Iterable[str]) -> "DirectedGraph":
        ks = set(keep)
        return DirectedGraph(
            [v for v in self.vertices if v in ks],
            [e for e in self.edges if e.source in ks and e.range in ks],
        )

    def range_restricted(self, keep: Iterable[str]) -> "DirectedGraph":
        """Subgraph ``(F, {e : r(e) in F})``; raises if some kept edge leaves F."""
        ks = set(keep)
        edges = [e for e in self.edges if e.range in ks]
        for e in edges:
            if e.source not in ks:
                raise GraphError(f"edge {e.id!r} enters the kept set from outside")
        return DirectedGraph([v for v in self.vertices if v in ks], edges)


@dataclass(frozen=True)
class Path:
    """A finite path, stored as edge ids plus the vertex sequence it visits."""

    edges: tuple[str, ...]
    vertices: tuple[str, ...]

    @classmethod
    def from_edges(cls, g: DirectedGraph, edge_ids: Sequence[str]) -> "Path":
        if not edge_ids:
            raise GraphError("a path needs at least one edge")
        es = [g.edge(i) for i in edge_ids]
        for a, b in zip(es, es[1:]):
            if b.source != a.range:
                raise GraphError(f"edges {a.id!r} and {b.id!r} do not chain")
        return cls(tuple(edge_ids), (es[0].source,) + tuple(e.range for e in es))

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def range(self) -> str:
        return self.vertices[-1]

    @property
    def is_cycle(self) -> bool:
        return self.source == self.range

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.edges)


Cycle = Path


@dataclass(frozen=True)
class DegreeProfile:
    row_finite: bool
    locally_finite: bool
    sinks: frozenset[str]
    has_zero_rows: bool


def degree_profile(g: DirectedGraph) -> DegreeProfile:
    # Finite graphs are trivially row- and locally finite.
    sinks = g.sinks()
    return DegreeProfile(True, True, sinks, bool(sinks))


def simple_cycles(g: DirectedGraph, cap: int = DEFAULT_CYCLE_CAP) -> list[Path]:
    """All simple cycles, each rooted at its smallest vertex.

    Parallel edges give distinct cycles.  Raises ``CycleLimitExceeded`` once
    more than ``cap`` cycles have been found.
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    found: list[Path] = []
    for root in g.vertices:
        r = order[root]
        stack: list[tuple[str, Iterator[Edge]]] = [(root, iter(g.out_edges(root)))]
        path_edges: list[Edge] = []
        on_path = {root}
        while stack:
            v, it = stack[-1]
            e = next(it, None)
            if e is None:
                stack.pop()
                if path_edges:
                    on_path.discard(path_edges.pop().range)
                continue
            w = e.range
            if w == root:
                es = path_edges + [e]
                found.append(Path(tuple(x.id for x in es), (root,) + tuple(x.range for x in es)))
                if len(found) > cap:
                    raise CycleLimitExceeded(f"more than {cap} simple cycles")
            elif order[w] > r and w not in on_path:
                path_edges.append(e)
                on_path.add(w)
                stack.append((w, iter(g.out_edges(w))))
    return found


def cycle_has_exit(g: DirectedGraph, c: Path) -> bool:
    if not c.is_cycle:
        raise GraphError("not a cycle")
    own = set(c.edges)
    return any(e.id not in own for v in c.vertices for e in g.out_edges(v))


def exit_edges(g: DirectedGraph, c: Path) -> list[str]:
    own = set(c.edges)
    seen: dict[str, None] = {}
    for v in c.vertices:
        for e in g.out_edges(v):
            if e.id not in own:
                seen.setdefault(e.id)
    return list(seen)


@dataclass(frozen=True)
class SCCDecomposition:
    """SCC partition.  ``components`` is listed in topological order of the
    condensation (sources first); ``condensation`` holds component-index arcs."""

    components: tuple[frozenset[str], ...]
    component_of: dict
    condensation: frozenset[tuple[int, int]]
    cyclic: tuple[bool, ...]

    def component(self, v: str) -> frozenset[str]:
        return self.components[self.component_of[v]]


def strongly_connected_components(g: DirectedGraph) -> SCCDecomposition:
    # Iterative Tarjan; emits components sinks-first, reversed at the end.
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[frozenset[str]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            w = next(it, None)
            if w is not None:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == v:
                        break
                comps.append(frozenset(comp))
    comps.reverse()
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    arcs = frozenset(
        (comp_of[e.source], comp_of[e.range]) for e in g.edges if comp_of[e.source] != comp_of[e.range]
    )
    cyclic = tuple(
        len(c) > 1 or any(e.range == next(iter(c)) for e in g.out_edges(next(iter(c)))) for c in comps
    )
    return SCCDecomposition(tuple(comps), comp_of, arcs, cyclic)


def reachable_from(g: DirectedGraph, v: str | Iterable[str]) -> frozenset[str]:
    """``{v}`` together with every vertex at the end of a path from ``v``."""
    starts = [v] if isinstance(v, str) else list(v)
    for s in starts:
        g.check_vertex(s)
    seen = set(starts)
    queue = deque(starts)
    while queue:
        x = queue.popleft()
        for y in g.successors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def reaching(g: DirectedGraph, targets: Iterable[str]) -> frozenset[str]:
    """Vertices with a (possibly empty) path into ``targets``."""
    ts = list(targets)
    seen = set(ts)
    queue = deque(ts)
    while queue:
        x = queue.popleft()
        for y in g.predecessors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def shortest_path(g: DirectedGraph, src: str, targets: Iterable[str]) -> Path | None:
    """BFS path from ``src`` to the nearest target; ``None`` if src is a target
    or no target is reachable."""
    ts = set(targets)
    if src in ts:
        return None
    parent: dict[str, Edge] = {}
    seen = {src}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for e in g.out_edges(x):
            y = e.range
            if y in seen:
                continue
            seen.add(y)
            parent[y] = e
            if y in ts:
                es = []
                while y != src:
                    es.append(parent[y])
                    y = parent[y].source
                es.reverse()
                return Path(tuple(e.id for e in es), (src,) + tuple(e.range for e in es))
            queue.append(y)
    return None


def cycle_through(g: DirectedGraph, v: str, first_edge: Edge | None = None) -> Path | None:
    """A simple cycle through ``v`` (starting with ``first_edge`` if given)."""
    starts = [first_edge] if first_edge is not None else list(g.out_edges(v))
    for e in starts:
        if e.range == v:
            return Path((e.id,), (v, v))
        back = shortest_path(g, e.range, [v])
        if back is not None:
            return Path((e.id,) + back.edges, (v,) + back.vertices)
    return None


def branching_components(g: DirectedGraph, scc: SCCDecomposition | None = None) -> list[int]:
    """Indices of cyclic SCCs containing a vertex of out-degree >= 2.

    A cyclic SCC either has such a vertex, and then every cycle through that
    vertex has an exit, or it is a single exit-free cycle.
    """
    scc = scc or strongly_connected_components(g)
    return [
        i for i, c in enumerate(scc.components)
        if scc.cyclic[i] and any(len(g.out_edges(v)) >= 2 for v in c)
    ]


def exit_free_cycle_components(g: DirectedGraph, scc: SCCDecomposition | None = None) -> list[int]:
    scc = scc or strongly_connected_components(g)
    return [
        i for i, c in enumerate(scc.components)
        if scc.cyclic[i] and all(len(g.out_edges(v)) == 1 for v in c)
    ]


def cycle_with_exit_at(g: DirectedGraph, w: str) -> Path:
    """Shortest cycle based at ``w`` that has an exit; ``w`` must have
    out-degree >= 2 and lie on a cycle."""
    found = [c for c in (cycle_through(g, w, e) for e in g.out_edges(w))
             if c is not None and cycle_has_exit(g, c)]
    if found:
        return min(found, key=len)
    raise GraphError(f"no cycle with an exit based at {w!r}")


def connects_to_cycle_with_exit(g: DirectedGraph, v: str,
                                scc: SCCDecomposition | None = None):
    """Return ``(path_or_None, cycle)`` witnessing that ``v`` reaches a cycle with
    an exit, or ``None`` when it does not."""
    scc = scc or strongly_connected_components(g)
    targets = [x for i in branching_components(g, scc) for x in scc.components[i]
               if len(g.out_edges(x)) >= 2]
    if not targets:
        return None
    tset = set(targets)
    if v in tset:
        return None, cycle_with_exit_at(g, v)
    p = shortest_path(g, v, tset)
    if p is None:
        return None
    return p, cycle_with_exit_at(g, p.range)


def topological_order(g: DirectedGraph) -> list[str] | None:
    """Kahn order, or ``None`` if the graph has a cycle."""
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    out = []
    while queue:
        v = queue.popleft()
        out.append(v)
        for e in g.out_edges(v):
            indeg[e.range] -= 1
            if indeg[e.range] == 0:
                queue.append(e.range)
    return out if len(out) == len(g.vertices) else None


def find_cycle(g: DirectedGraph) -> Path | None:
    scc = strongly_connected_components(g)
    for i, c in enumerate(scc.components):
        if scc.cyclic[i]:
            v = min(c, key=natural_key)
            return cycle_through(g.induced(c), v)
    return None
