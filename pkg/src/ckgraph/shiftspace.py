"""Cylinder calculus for the one-sided Markov shift of a finite 0-1 matrix.

Points of the shift space are infinite paths in the matrix graph.  Nothing
here materializes that space; every statement is about finite words.  A
matrix without zero rows lets every admissible word extend forever, so each
cylinder is nonempty and two cylinders are either nested or disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .classify import is_af, torus_corners
from .graph import GraphError, Path, connects_to_cycle_with_exit, shortest_path, strongly_connected_components
from .presentations import AdjacencyMatrix, graph_of_matrix
from .verdict import Verdict, no, path_dict, yes

APERIODIC_CONDITION = "some shift orbit point is not eventually periodic iff a vertex on two distinct cycles is reachable"


class ZeroRowError(GraphError):
    pass


class CylinderError(GraphError):
    pass


@dataclass(frozen=True, order=True)
class Cylinder:
    """``Z(word)``: all infinite paths whose first vertices spell ``word`` (1-based)."""

    word: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.word)

    @property
    def last(self) -> int:
        return self.word[-1]

    def __str__(self) -> str:
        return "Z(" + ",".join(map(str, self.word)) + ")"


class Relation(str, Enum):
    EQUAL = "equal"
    STRICT_SUBSET = "strict_subset"
    STRICT_SUPERSET = "strict_superset"
    DISJOINT = "disjoint"


def _require_no_zero_rows(A: AdjacencyMatrix) -> None:
    if A.zero_rows():
        raise ZeroRowError(f"matrix has zero rows {A.zero_rows()}")


def cylinder(A: AdjacencyMatrix, word: Iterable[int]) -> Cylinder:
    w = tuple(int(i) for i in word)
    if not w:
        raise CylinderError("a cylinder needs a nonempty word")
    for i in w:
        if not 1 <= i <= A.n:
            raise CylinderError(f"symbol {i} outside 1..{A.n}")
    for a, b in zip(w, w[1:]):
        if not A(a, b):
            raise CylinderError(f"A({a},{b}) = 0, word is not a path")
    return Cylinder(w)


def _check(A: AdjacencyMatrix, c: Cylinder) -> Cylinder:
    return cylinder(A, c.word)


def successors_after(A: AdjacencyMatrix, i: int, steps: int) -> list[int]:
    """Vertices at the end of a path of exactly ``steps`` edges from ``i``."""
    cur = {i}
    for _ in range(steps):
        cur = {j for k in cur for j in A.successors(k)}
    return sorted(cur)


def shift_image(A: AdjacencyMatrix, c: Cylinder, n: int) -> frozenset[Cylinder]:
    _require_no_zero_rows(A)
    c = _check(A, c)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < len(c):
        return frozenset({Cylinder(c.word[n:])})
    return frozenset(Cylinder((j,)) for j in successors_after(A, c.last, n - len(c) + 1))


def _forced(A: AdjacencyMatrix, word: Sequence[int]) -> bool:
    """Does every vertex in ``word`` have a single successor?"""
    return all(len(A.successors(i)) == 1 for i in word)


def cylinder_compare(A: AdjacencyMatrix, c1: Cylinder, c2: Cylinder) -> Relation:
    """How ``Z(c1)`` sits relative to ``Z(c2)``."""
    _require_no_zero_rows(A)
    a, b = _check(A, c1).word, _check(A, c2).word
    k = min(len(a), len(b))
    if a[:k] != b[:k]:
        return Relation.DISJOINT
    if len(a) == len(b):
        return Relation.EQUAL
    # the shorter word is a prefix; the longer one adds constraints unless every
    # step it takes beyond the prefix was forced
    short, long_ = (a, b) if len(a) < len(b) else (b, a)
    if _forced(A, long_[len(short) - 1:-1]):
        return Relation.EQUAL
    return Relation.STRICT_SUPERSET if short is a else Relation.STRICT_SUBSET


def _expand(A: AdjacencyMatrix, words: Iterable[tuple[int, ...]], length: int) -> set[tuple[int, ...]]:
    out = set()
    for w in words:
        stack = [w]
        while stack:
            u = stack.pop()
            if len(u) == length:
                out.add(u)
            else:
                stack.extend(u + (j,) for j in A.successors(u[-1]))
    return out


def union_relation(A: AdjacencyMatrix, inner: Iterable[Cylinder], outer: Iterable[Cylinder]) -> str:
    """Compare two finite unions of cylinders by refining both to words of a
    common length.  Returns ``equal``, ``strict_subset``, ``strict_superset``,
    ``disjoint`` or ``overlap``."""
    _require_no_zero_rows(A)
    inner, outer = [c.word for c in inner], [c.word for c in outer]
    L = max(len(w) for w in inner + outer)
    a, b = _expand(A, inner, L), _expand(A, outer, L)
    if a == b:
        return "equal"
    if a < b:
        return "strict_subset"
    if a > b:
        return "strict_superset"
    return "disjoint" if not (a & b) else "overlap"


@dataclass(frozen=True)
class ContractionWitness:
    vertex: int
    W: Cylinder
    n: int
    m: int
    path: tuple[int, ...]
    cycle: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"vertex": self.vertex, "W": list(self.W.word), "n": self.n, "m": self.m,
                "path": list(self.path), "cycle": list(self.cycle)}


def verify_contraction(A: AdjacencyMatrix, w: ContractionWitness) -> bool:
    if w.n == w.m:
        return False
    W = _check(A, w.W)
    return union_relation(A, shift_image(A, W, w.n), shift_image(A, W, w.m)) == "strict_subset"


def contraction_witness(A: AdjacencyMatrix, v: int) -> ContractionWitness:
    """``W = Z(alpha gamma)`` with ``alpha`` a path from ``v`` to the base of a
    cycle ``gamma`` that has an exit.  Then ``T^|alpha| W = Z(gamma)`` sits
    strictly inside ``Z(base) = T^(|alpha|+|gamma|) W``."""
    _require_no_zero_rows(A)
    g = graph_of_matrix(A)
    g.check_vertex(str(v))
    hit = connects_to_cycle_with_exit(g, str(v))
    if hit is None:
        raise GraphError(f"vertex {v} reaches no cycle with an exit")
    path, cyc = hit
    alpha = tuple(int(x) for x in path.vertices[:-1]) if path else ()
    gamma = tuple(int(x) for x in cyc.vertices)
    W = Cylinder(alpha + gamma)
    n = len(alpha)
    w = ContractionWitness(v, W, n, n + len(gamma) - 1, alpha, gamma)
    (inner,), (outer,) = shift_image(A, W, w.n), shift_image(A, W, w.m)
    if cylinder_compare(A, inner, outer) is not Relation.STRICT_SUBSET or not verify_contraction(A, w):
        raise ArithmeticError(f"contraction witness for {v} failed verification")
    return w


def _two_cycles_at(g, comp: set[str]) -> tuple[str, Path, Path] | None:
    for u in sorted(comp, key=int):
        inner = [e for e in g.out_edges(u) if e.range in comp]
        if len(inner) < 2:
            continue
        cycles = []
        for e in inner[:2]:
            back = shortest_path(g.induced(comp), e.range, [u])
            ids = [e.id] + (list(back.edges) if back else [])
            cycles.append(Path.from_edges(g, ids))
        return u, cycles[0], cycles[1]
    return None


def aperiodic_points(A: AdjacencyMatrix) -> dict[int, Verdict]:
    """Per vertex: is there an infinite path from it that is not eventually periodic?"""
    _require_no_zero_rows(A)
    g = graph_of_matrix(A)
    scc = strongly_connected_components(g)
    hubs = {}
    for i, comp in enumerate(scc.components):
        if scc.cyclic[i]:
            found = _two_cycles_at(g, set(comp))
            if found:
                hubs[found[0]] = found
    out = {}
    for v in g.vertices:
        p = shortest_path(g, v, list(hubs)) if hubs and v not in hubs else None
        if v in hubs or p is not None:
            u, c1, c2 = hubs[v if v in hubs else p.range]
            out[int(v)] = yes({"kind": "two_cycles", "path": path_dict(p) if p else None,
                               "vertex": u, "cycles": [path_dict(c1), path_dict(c2)]}, APERIODIC_CONDITION)
        else:
            out[int(v)] = no({"kind": "only_simple_cycles"}, APERIODIC_CONDITION)
    return out


def markov_classify(A: AdjacencyMatrix) -> dict:
    _require_no_zero_rows(A)
    g = graph_of_matrix(A)
    return {
        "af": is_af(A),
        "isolated_periodic": torus_corners(g),
        "aperiodic_point": aperiodic_points(A),
    }


__all__ = [
    "Cylinder", "Relation", "ContractionWitness", "ZeroRowError", "CylinderError", "cylinder",
    "graph_of_matrix", "shift_image", "cylinder_compare", "union_relation", "contraction_witness",
    "verify_contraction", "aperiodic_points", "markov_classify",
]
