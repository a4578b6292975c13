"""Decisions on periodic presentations.

The realized graph is infinite, so every answer here comes from one of three
sources: the shift-weighted quotient (mean cycle analysis), a finite
truncation whose height is justified by a pumping argument, or an explicit
algebraic witness.  When none of these settles a question the verdict is
UNKNOWN.

Bounds used throughout (``nb`` = number of block vertices):

* a vertex at level ``<= K`` is left-infinite iff it is reachable from level
  ``K + nb + 1`` inside the truncation of that height;
* a realized closed walk exists iff one exists below level ``nb**2 + 1``;
  more generally a closed walk peaking ``> nb**2`` levels above some floor can
  be pumped down without leaving that floor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import sympy as sp

from .graph import (
    DirectedGraph, Edge, GraphError, Path, find_cycle, natural_key, reachable_from, shortest_path,
    strongly_connected_components,
)
from .ideals import DEFAULT_LATTICE_CAP, down_sets, sort_key
from .polynomial import (
    X, NumberField, RealRoot, charpoly, compare_roots, largest_real_root, poly, poly_str,
    real_roots_above, to_sympy,
)
from .presentations import (
    RESERVED, PeriodicPresentation, Realization, RVertex, rname,
)
from .verdict import Verdict, no, path_dict, unknown, yes

STABLE_CONDITION = "no left-finite cycles, and no non-zero bounded graph-trace on the subgraph S^0"
UNITAL_CONDITION = "a unital quotient exists iff some cycle is left-finite"
PI_CONDITION = "every vertex connects to a cycle with an exit in every quotient by a hereditary saturated set"
CYCLE_CONDITION = "a realized cycle is a closed walk of zero net displacement"


# -- shift quotient and mean cycles -------------------------------------------------

@dataclass(frozen=True, eq=False)
class ShiftQuotient:
    graph: DirectedGraph
    weights: Mapping[str, int]
    stem: frozenset = frozenset()

    def weight(self, eid: str) -> int:
        return self.weights[eid]

    def path_weight(self, p: Path) -> int:
        return sum(self.weights[e] for e in p.edges)

    def prefix_min(self, p: Path) -> int:
        s = m = 0
        for e in p.edges:
            s += self.weights[e]
            m = min(m, s)
        return m

    def restricted(self, keep: Iterable[str]) -> "ShiftQuotient":
        g = self.graph.induced(keep)
        return ShiftQuotient(g, {e.id: self.weights[e.id] for e in g.edges}, self.stem & g.vertex_set)


def shift_quotient(p: PeriodicPresentation) -> ShiftQuotient:
    vs = list(p.stem.vertices) + list(p.block.vertices)
    edges, w = [], {}
    for e in list(p.stem.edges) + list(p.block.edges):
        edges.append(e)
        w[e.id] = 0
    for c in p.cross:
        edges.append(Edge(c.id, c.source, c.range))
        w[c.id] = c.shift
    for sb in p.stem_block:
        edges.append(Edge(sb.id, sb.source, sb.range))
        w[sb.id] = 0
    return ShiftQuotient(DirectedGraph(vs, edges), w, p.stem.vertex_set)


def block_quotient(p: PeriodicPresentation) -> ShiftQuotient:
    return shift_quotient(p).restricted(p.block.vertices)


@dataclass(frozen=True)
class SCCMeans:
    component: tuple[str, ...]
    min_mean: Fraction
    min_cycle: Path
    max_mean: Fraction
    max_cycle: Path

    def to_dict(self) -> dict:
        return {
            "component": list(self.component),
            "min_mean": str(self.min_mean),
            "min_cycle": path_dict(self.min_cycle),
            "max_mean": str(self.max_mean),
            "max_cycle": path_dict(self.max_cycle),
        }


def _karp_min(g: DirectedGraph, w: Mapping[str, int]) -> tuple[Fraction, Path]:
    """Karp's minimum mean cycle on a strongly connected ``g`` with a cycle."""
    verts = list(g.vertices)
    n = len(verts)
    s = verts[0]
    D: list[dict[str, int | None]] = [{v: None for v in verts} for _ in range(n + 1)]
    D[0][s] = 0
    for k in range(1, n + 1):
        prev, cur = D[k - 1], D[k]
        for e in g.edges:
            if prev[e.source] is not None:
                c = prev[e.source] + w[e.id]
                if cur[e.range] is None or c < cur[e.range]:
                    cur[e.range] = c
    best = None
    for v in verts:
        if D[n][v] is None:
            continue
        worst = max(Fraction(D[n][v] - D[k][v], n - k) for k in range(n) if D[k][v] is not None)
        if best is None or worst < best:
            best = worst
    # Witness: shift weights by the optimum, then every optimal cycle is tight
    # for Bellman-Ford potentials.
    wp = {e.id: w[e.id] - best for e in g.edges}
    d = {v: Fraction(0) for v in verts}
    for _ in range(n):
        for e in g.edges:
            if d[e.source] + wp[e.id] < d[e.range]:
                d[e.range] = d[e.source] + wp[e.id]
    tight = DirectedGraph(verts, [e for e in g.edges if d[e.source] + wp[e.id] == d[e.range]])
    cyc = find_cycle(tight)
    return best, Path.from_edges(g, cyc.edges)


def mean_cycles(q: ShiftQuotient) -> list[SCCMeans]:
    """Exact min and max mean cycle weight for every cyclic SCC."""
    scc = strongly_connected_components(q.graph)
    out = []
    for i, comp in enumerate(scc.components):
        if not scc.cyclic[i]:
            continue
        sub = q.graph.induced(comp)
        lo, cmin = _karp_min(sub, q.weights)
        neg = {k: -v for k, v in q.weights.items()}
        hi, cmax = _karp_min(sub, neg)
        out.append(SCCMeans(tuple(sorted(comp, key=natural_key)), lo, cmin, -hi, cmax))
    return out


# -- realized-graph search ------------------------------------------------------------

def parse_rname(name: str) -> RVertex:
    if RESERVED in name:
        x, k = name.rsplit(RESERVED, 1)
        return x, int(k)
    return name, 0


def _forward(r: Realization, starts: Iterable[RVertex], top: int,
             allow: Callable[[RVertex], bool] = lambda v: True) -> set[RVertex]:
    seen = {v for v in starts if allow(v)}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for _, w in r.out_edges(v):
            if w[1] <= top and w not in seen and allow(w):
                seen.add(w)
                queue.append(w)
    return seen


def _backward(r: Realization, targets: Iterable[RVertex], top: int,
              allow: Callable[[RVertex], bool] = lambda v: True) -> set[RVertex]:
    seen = {v for v in targets if allow(v)}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for _, w in r.in_edges(v):
            if w[1] <= top and w not in seen and allow(w):
                seen.add(w)
                queue.append(w)
    return seen


def _region_graph(r: Realization, verts: set[RVertex]) -> DirectedGraph:
    edges = [Edge(eid, rname(v), rname(w)) for v in verts for eid, w in r.out_edges(v) if w in verts]
    return DirectedGraph([rname(v) for v in verts], edges)


def pumping_depth(p: PeriodicPresentation) -> int:
    nb = len(p.block.vertices)
    return nb * nb + 1


def realized_cycle_exists(p: PeriodicPresentation) -> Verdict:
    r = Realization(p)
    depth = pumping_depth(p)
    g = _region_graph(r, set(r.vertices_upto(depth)))
    c = find_cycle(g)
    cert = {"search_depth": depth}
    # the quotient-level mean test over-approximates near copy 1, so it is only reported
    means = [m.to_dict() for m in mean_cycles(block_quotient(p)) if m.min_mean <= 0 <= m.max_mean]
    cert["zero_mean_block_components"] = [m["component"] for m in means]
    if c is None:
        return no({"kind": "no_realized_cycle", **cert}, CYCLE_CONDITION)
    return yes({"kind": "realized_cycle", "cycle": path_dict(c), **cert}, CYCLE_CONDITION)


def periodic_is_af(p: PeriodicPresentation) -> Verdict:
    """AF exactly when the realized graph has no cycle."""
    c = realized_cycle_exists(p)
    cond = "AF iff the graph has no cycles"
    if c.yes:
        return no(c.certificate, cond, ["row-finite"])
    return yes(c.certificate, cond, ["row-finite"])


# -- left-infiniteness ------------------------------------------------------------------

LI, LF, UNRESOLVED = "left_infinite", "left_finite", "unresolved"


@dataclass
class LeftInfiniteReport:
    """Left-infinite status of every realized vertex.

    ``labels`` is exact for every vertex at level ``<= depth``.  Above that
    level a block vertex follows ``eventual``: ``left_infinite`` (from
    ``threshold[x]`` on), ``left_finite`` at every level, or ``unresolved``.
    """

    depth: int
    labels: dict[RVertex, bool]
    eventual: dict[str, str]
    threshold: dict[str, int]
    negative_components: list[tuple[str, ...]] = field(default_factory=list)

    def is_left_infinite(self, v: RVertex) -> bool | None:
        if v in self.labels:
            return self.labels[v]
        kind = self.eventual[v[0]]
        if kind == UNRESOLVED:
            return None
        return kind == LI

    @property
    def stem(self) -> dict[str, bool]:
        return {v[0]: li for v, li in self.labels.items() if v[1] == 0}

    @property
    def resolved(self) -> bool:
        return UNRESOLVED not in self.eventual.values()

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "stem": {s: (LI if li else LF) for s, li in sorted(self.stem.items())},
            "block": {x: {"eventual": self.eventual[x], "from_level": self.threshold.get(x)}
                      for x in sorted(self.eventual, key=natural_key)},
        }


def _li_labels(r: Realization, nb: int, depth: int) -> dict[RVertex, bool]:
    top = depth + nb + 1
    seen = _forward(r, r.level_vertices(top), top)
    return {v: v in seen for v in r.vertices_upto(depth)}


def _rotations(q: ShiftQuotient, c: Path):
    n = len(c.edges)
    for i in range(n):
        es = c.edges[i:] + c.edges[:i]
        yield Path(es, c.vertices[i:-1] + c.vertices[:i] + (c.vertices[i],))


class _Analysis:
    """Shared state for the stability and unital-quotient decisions."""

    def __init__(self, p: PeriodicPresentation, depth: int | None = None):
        self.p = p
        self.r = Realization(p)
        self.nb = nb = len(p.block.vertices)
        self.q = shift_quotient(p)
        self.qb = self.q.restricted(p.block.vertices)
        self.means = mean_cycles(self.qb)

        # block vertices fed from arbitrarily high copies, with level thresholds
        self.k: dict[str, int] = {}
        neg = [m for m in self.means if m.min_mean < 0]
        for m in neg:
            for rot in _rotations(self.qb, m.min_cycle):
                mu = self.qb.prefix_min(rot)
                c = rot.source
                for x in reachable_from(self.qb.graph, c):
                    pth = shortest_path(self.qb.graph, c, [x])
                    w = self.qb.path_weight(pth) if pth else 0
                    rho = self.qb.prefix_min(pth) if pth else 0
                    kx = max(1, w + 1 - min(mu, rho))
                    if x not in self.k or kx < self.k[x]:
                        self.k[x] = kx
        self.Rb = frozenset(self.k)
        self.T = max([1] + list(self.k.values()))
        self.D_cycle = self.T + nb * nb + 1
        self.L0 = self.T + 2 * nb + 2
        self.depth = max(self.D_cycle, self.L0, depth or 0)
        labels = _li_labels(self.r, nb, self.depth)

        li_stem = [s for s in p.stem.vertices if labels[(s, 0)]]
        fed = reachable_from(self.q.graph, li_stem) if li_stem else frozenset()
        self.A = frozenset(x for x in p.block.vertices if x not in self.Rb and x in fed)
        self.U = frozenset(x for x in p.block.vertices if x not in self.Rb and x not in self.A)
        eventual = {x: LI if x in self.Rb else UNRESOLVED if x in self.A else LF for x in p.block.vertices}
        threshold = {}
        for x in self.Rb:
            k0 = self.depth
            while k0 >= 1 and labels[(x, k0)]:
                k0 -= 1
            threshold[x] = k0 + 1
        self.li = LeftInfiniteReport(self.depth, labels, eventual, threshold,
                                     [m.component for m in neg])
        self._lf_cycle = None
        self._lf_cycle_done = False

    def is_lf(self, v: RVertex) -> bool:
        return self.li.labels.get(v) is False

    def lf_cycle(self) -> Path | None:
        """A realized cycle of left-finite vertices below ``D_cycle``, if any."""
        if not self._lf_cycle_done:
            verts = {v for v in self.r.vertices_upto(self.D_cycle) if self.is_lf(v)}
            self._lf_cycle = find_cycle(_region_graph(self.r, verts))
            self._lf_cycle_done = True
        return self._lf_cycle

    def predecessor_set(self, v: RVertex, cap: int = 10**6) -> set[RVertex]:
        """``L(v)`` by backward search; only called for left-finite ``v``."""
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for _, w in self.r.in_edges(u):
                if w not in seen:
                    seen.add(w)
                    if len(seen) > cap:
                        raise GraphError("predecessor set exceeds cap")
                    queue.append(w)
        return seen

    def lf_cycle_certificate(self, c: Path) -> dict:
        v = parse_rname(c.source)
        L = self.predecessor_set(v)
        return {
            "kind": "left_finite_cycle",
            "cycle": path_dict(c),
            "L": sorted((rname(u) for u in L), key=natural_key),
        }


# -- S^0 -------------------------------------------------------------------------------

@dataclass(frozen=True)
class S0Set:
    """``S^0`` as a finite low part plus the block vertices it contains at
    every level ``>= tail_from``."""

    low: frozenset
    tail: frozenset
    tail_from: int
    resolved: bool = True

    def __contains__(self, v: RVertex) -> bool:
        if v[1] >= self.tail_from:
            return v[0] in self.tail
        return v in self.low

    @property
    def empty(self) -> bool:
        return not self.low and not self.tail

    def vertices_upto(self, depth: int) -> list[RVertex]:
        out = [v for v in self.low if v[1] <= depth]
        out += [(x, k) for k in range(self.tail_from, depth + 1) for x in self.tail]
        return sorted(out, key=lambda v: (v[1], natural_key(v[0])))

    def to_dict(self) -> dict:
        return {
            "low": sorted((rname(v) for v in self.low), key=natural_key),
            "tail": sorted(self.tail, key=natural_key),
            "tail_from": self.tail_from,
            "resolved": self.resolved,
        }


def _u_inf(a: _Analysis) -> frozenset:
    sub = a.qb.restricted(a.U)
    scc = strongly_connected_components(sub.graph)
    cyc = [x for i, c in enumerate(scc.components) if scc.cyclic[i] for x in c]
    if not cyc:
        return frozenset()
    rev = [y for y in sub.graph.vertices if reachable_from(sub.graph, y) & set(cyc)]
    return frozenset(rev)


def _s0(a: _Analysis) -> S0Set:
    if a.A:
        return S0Set(frozenset(), frozenset(), a.L0, resolved=False)
    tail = _u_inf(a)
    seeds = [(x, a.L0) for x in tail]
    low = _backward(a.r, seeds, a.L0, a.is_lf)
    low = frozenset(v for v in low if v[1] < a.L0)
    return S0Set(low, tail, a.L0)


def s0_periodic(p: PeriodicPresentation, depth: int | None = None) -> S0Set:
    return _s0(_Analysis(p, depth))


def s0_subgraph_truncated(p: PeriodicPresentation, s0: S0Set, depth: int) -> DirectedGraph:
    """``S`` cut at ``depth``: the ``S^0`` vertices up to that level and the
    edges between them."""
    r = Realization(p)
    keep = set(s0.vertices_upto(depth))
    return _region_graph(r, keep)


# -- Perron analysis ---------------------------------------------------------------------

@dataclass
class PerronWitness:
    vertices: list[str]
    M: list[list[int]]
    klass: list[str]
    minimal_polynomial: sp.Poly
    root: RealRoot
    vector: dict[str, sp.Poly]
    level: int

    def to_dict(self) -> dict:
        lo, hi = self.root.interval()
        return {
            "kind": "perron_trace",
            "vertices": self.vertices,
            "M": self.M,
            "class": self.klass,
            "minimal_polynomial": poly_str(self.minimal_polynomial),
            "root_interval": [str(lo), str(hi)],
            "vector": {x: poly_str(v) for x, v in sorted(self.vector.items())},
            "level": self.level,
        }


def transfer_matrix(a: _Analysis, verts: list[str]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    idx = {x: i for i, x in enumerate(verts)}
    n = len(verts)
    A0 = [[0] * n for _ in range(n)]
    A1 = [[0] * n for _ in range(n)]
    for e in a.qb.graph.edges:
        if e.source in idx and e.range in idx:
            w = a.qb.weight(e.id)
            (A0 if w == 0 else A1)[idx[e.source]][idx[e.range]] += 1
    # A0 is nilpotent (a zero-weight cycle would be a left-finite cycle), so
    # (I - A0)^{-1} = I + A0 + ... + A0^{n-1}.
    S = [[int(i == j) for j in range(n)] for i in range(n)]
    P = [row[:] for row in S]
    for _ in range(n):
        P = [[sum(P[i][k] * A0[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        S = [[S[i][j] + P[i][j] for j in range(n)] for i in range(n)]
    if any(any(row) for row in P):
        raise ArithmeticError("zero-weight part is not nilpotent")
    M = [[sum(S[i][k] * A1[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return A0, A1, M


def _matrix_classes(M: list[list[int]]):
    n = len(M)
    g = DirectedGraph([str(i) for i in range(n)],
                      [Edge(f"{i}>{j}", str(i), str(j)) for i in range(n) for j in range(n) if M[i][j]])
    return g, strongly_connected_components(g)


def perron_analysis(a: _Analysis, verts: list[str]):
    """Return ``(witness_or_None, summary)``; a witness exists iff some class of
    the transfer matrix has spectral radius ``> 1``."""
    A0, A1, M = transfer_matrix(a, verts)
    g, scc = _matrix_classes(M)
    classes = []
    for i, comp in enumerate(scc.components):
        ids = sorted(int(c) for c in comp)
        sub = [[M[r][c] for c in ids] for r in ids]
        p = charpoly(sub)
        classes.append({"members": [verts[j] for j in ids], "charpoly": poly_str(p),
                        "roots_above_one": real_roots_above(p, 1) if scc.cyclic[i] else 0,
                        "_ids": ids, "_p": p, "_cyclic": scc.cyclic[i]})
    summary = {"vertices": verts, "A0": A0, "A1": A1, "M": M,
               "classes": [{k: v for k, v in c.items() if not k.startswith("_")} for c in classes]}
    big = [i for i, c in enumerate(classes) if c["_cyclic"] and c["roots_above_one"] > 0]
    if not big:
        return None, summary
    roots = {i: largest_real_root(classes[i]["_p"]) for i in big}
    best = big[0]
    for i in big[1:]:
        if compare_roots(roots[i], roots[best]) > 0:
            best = i
    lam = roots[best]
    top = [i for i in big if compare_roots(roots[i], lam) == 0]
    upstream = {i: {j for j in range(len(classes)) if j != i and
                    str(classes[i]["_ids"][0]) in reachable_from(g, str(classes[j]["_ids"][0]))}
                for i in top}
    chosen = next(i for i in top if not any(j in top for j in upstream[i]))
    support = sorted(classes[chosen]["_ids"] + [v for j in upstream[chosen] for v in classes[j]["_ids"]])
    N = sp.Matrix([[M[r][c] for c in support] for r in support])
    adj = (X * sp.eye(len(support)) - N).adjugate()
    col = support.index(classes[chosen]["_ids"][0])
    f = lam.minimal_factor()
    K = NumberField(f)
    vec = {verts[j]: K.reduce(poly(sp.expand(adj[k, col]))) for k, j in enumerate(support)}
    lead = vec[verts[classes[chosen]["_ids"][0]]]
    if lam.sign_of(lead) < 0:
        vec = {x: -v for x, v in vec.items()}
    for x in verts:
        vec.setdefault(x, poly(0))
    return PerronWitness(verts, M, [verts[j] for j in classes[chosen]["_ids"]], f, lam, vec, a.L0), summary


def verify_perron_witness(p: PeriodicPresentation, w: PerronWitness, copies: int = 3) -> bool:
    """Check the graph-trace equation for ``tau(x, k) = lam^(-k) r_x`` on
    ``copies`` consecutive copies, exactly in ``Q(lam)``, plus ``lam > 1`` and
    ``r >= 0`` with ``r`` non-zero."""
    f = w.minimal_polynomial
    K = NumberField(f)
    lo, hi = (to_sympy(b) for b in w.root.interval())
    if (f.eval(lo) != 0) if lo == hi else (f.count_roots(lo, hi) != 1):
        return False
    root = RealRoot(f, lo, hi)
    while not root.is_exact() and root.lo <= 1 < root.hi:
        root.refine()
    if root.lo <= 1:
        return False
    signs = [root.sign_of(v) for v in w.vector.values()]
    if any(s < 0 for s in signs) or not any(s > 0 for s in signs):
        return False
    inside = set(w.vertices)
    qb = block_quotient(p)
    lam = poly(X)
    for k in range(w.level, w.level + copies):
        tau_k = K.power(lam, -k)
        tau_k1 = K.power(lam, -(k + 1))
        for x in w.vertices:
            lhs = K.mul(tau_k, w.vector[x])
            rhs = poly(0)
            for e in qb.graph.out_edges(x):
                if e.range not in inside:
                    continue
                s = qb.weight(e.id)
                if s == 0:
                    rhs = rhs + K.mul(tau_k, w.vector[e.range])
                elif s == 1:
                    rhs = rhs + K.mul(tau_k1, w.vector[e.range])
                else:
                    return False
            if not K.is_zero(lhs - rhs):
                return False
    return True


# -- verdicts ---------------------------------------------------------------------------

def _sink_refusal(p: PeriodicPresentation, condition: str) -> Verdict | None:
    sinks = Realization(p).sinks()
    if sinks:
        return unknown("realized graph has sinks", condition, ["locally finite", "no sinks"],
                       sinks=sorted(rname(v) for v in sinks))
    return None


def left_infinite_vertices(p: PeriodicPresentation, depth: int | None = None) -> LeftInfiniteReport:
    return _Analysis(p, depth).li


def periodic_has_unital_quotient(p: PeriodicPresentation, depth: int | None = None) -> Verdict:
    hyp = ["locally finite", "no sinks"]
    bad = _sink_refusal(p, UNITAL_CONDITION)
    if bad:
        return bad
    a = _Analysis(p, depth)
    c = a.lf_cycle()
    if c is not None:
        return yes(a.lf_cycle_certificate(c), UNITAL_CONDITION, hyp)
    if a.A:
        return unknown("left-infiniteness unresolved at high copies", UNITAL_CONDITION, hyp,
                       unresolved=sorted(a.A, key=natural_key), depth=a.depth)
    return no({"kind": "no_left_finite_cycle", "search_depth": a.D_cycle,
               "left_infinite": a.li.to_dict()}, UNITAL_CONDITION, hyp)


def periodic_is_stable(p: PeriodicPresentation, depth: int | None = None) -> Verdict:
    hyp = ["locally finite", "no sinks"]
    bad = _sink_refusal(p, STABLE_CONDITION)
    if bad:
        return bad
    a = _Analysis(p, depth)
    c = a.lf_cycle()
    if c is not None:
        return no(a.lf_cycle_certificate(c), STABLE_CONDITION, hyp)
    if a.A:
        return unknown("left-infiniteness unresolved at high copies", STABLE_CONDITION, hyp,
                       unresolved=sorted(a.A, key=natural_key), depth=a.depth)
    s0 = _s0(a)
    base = {"search_depth": a.D_cycle, "left_infinite": a.li.to_dict(), "S0": s0.to_dict()}
    if s0.empty:
        return yes({"kind": "S0_empty", **base}, STABLE_CONDITION, hyp)
    tail = sorted(s0.tail, key=natural_key)
    inner = [e for e in a.qb.graph.edges if e.source in s0.tail and e.range in s0.tail]
    if any(a.qb.weight(e.id) < 0 for e in inner):
        return unknown("S^0 tail uses -1 edges; no transfer-matrix test", STABLE_CONDITION, hyp, **base)
    witness, summary = perron_analysis(a, tail)
    if witness is None:
        return yes({"kind": "perron_no_trace", **base, "transfer": summary}, STABLE_CONDITION, hyp)
    if not verify_perron_witness(p, witness):
        raise ArithmeticError("Perron witness failed verification")
    return no({**witness.to_dict(), **base, "transfer": summary}, STABLE_CONDITION, hyp)


# -- presentation-level ideals and quotients -----------------------------------------------

def _realized_out_ranges(p: PeriodicPresentation, r: Realization, level: int, x: str) -> list[str]:
    """Quotient vertex names of the out-edges of ``x`` at a level (0, 1 or 2)."""
    v = (x, level)
    return [w[0] for _, w in r.out_edges(v)]


def is_presentation_saturated(p: PeriodicPresentation, H: frozenset, r: Realization | None = None) -> bool:
    r = r or Realization(p)
    for s in p.stem.vertices:
        if s not in H:
            outs = _realized_out_ranges(p, r, 0, s)
            if outs and all(y in H for y in outs):
                return False
    for x in p.block.vertices:
        if x in H:
            continue
        for level in (1, 2):
            outs = _realized_out_ranges(p, r, level, x)
            if outs and all(y in H for y in outs):
                return False
    return True


def presentation_hereditary_saturated(p: PeriodicPresentation,
                                      cap: int = DEFAULT_LATTICE_CAP) -> list[frozenset[str]]:
    """Hereditary saturated sets of the realized graph that are unions of
    whole stem vertices and whole block columns."""
    q = shift_quotient(p)
    r = Realization(p)
    return sorted((h for h in down_sets(q.graph, cap) if is_presentation_saturated(p, h, r)), key=sort_key)


def quotient_presentation(p: PeriodicPresentation, H: Iterable[str]) -> PeriodicPresentation | DirectedGraph:
    h = frozenset(H)
    stem = p.stem.range_restricted(v for v in p.stem.vertices if v not in h)
    keep_b = [v for v in p.block.vertices if v not in h]
    if not keep_b:
        return stem
    block = p.block.range_restricted(keep_b)
    cross = tuple(c for c in p.cross if c.range not in h)
    sb = tuple(s for s in p.stem_block if s.range not in h)
    return PeriodicPresentation(stem, block, cross, sb)


# -- pure infiniteness ---------------------------------------------------------------------

def _exit_free_cycle(p: PeriodicPresentation) -> Path | None:
    cycles, _ = periodic_torus_corners(p)
    return cycles[0] if cycles else None


def torus_search_depth(p: PeriodicPresentation) -> int:
    # an exit-free cycle is a periodic orbit of the out-degree-one map; its
    # projection is a zero-displacement quotient cycle, so its span is < nb
    return len(p.block.vertices) + 3


def periodic_torus_corners(p: PeriodicPresentation) -> tuple[list[Path], int]:
    """Exit-free realized cycles, one per orbit under the copy shift, found
    below ``torus_search_depth``."""
    r = Realization(p)
    depth = torus_search_depth(p)
    verts = {v for v in r.vertices_upto(depth) if len(r.out_edges(v)) == 1}
    g = _region_graph(r, verts)
    scc = strongly_connected_components(g)
    out, seen = [], set()
    for i, comp in enumerate(scc.components):
        if not scc.cyclic[i] or any(len(g.out_edges(v)) != 1 for v in comp):
            continue
        pts = [parse_rname(v) for v in comp]
        low = min(k for _, k in pts)
        shape = frozenset((x, k - low if low >= 2 else k) for x, k in pts), low >= 2
        if shape in seen:
            continue
        seen.add(shape)
        out.append(_cycle_from(g, min(comp, key=natural_key)))
    return out, depth


def _cycle_from(g: DirectedGraph, v: str) -> Path:
    edges, cur = [], v
    while True:
        (e,) = g.out_edges(cur)
        edges.append(e.id)
        cur = e.range
        if cur == v:
            return Path.from_edges(g, edges)


def _strongly_connected(p: PeriodicPresentation, depth: int) -> dict | None:
    """Sufficient test that the realized graph is strongly connected."""
    r = Realization(p)
    nb = len(p.block.vertices)
    L = nb + 1
    top = max(depth, L + nb * nb + nb + 2)
    z = p.block.vertices[0]
    blk = lambda v: v[1] >= 1  # noqa: E731
    if (z, L + 1) not in _forward(r, [(z, L)], top, blk):
        return None
    if (z, L) not in _forward(r, [(z, L + 1)], top, blk):
        return None
    chain = lambda v: v[0] == z and v[1] >= L  # noqa: E731
    for x in p.block.vertices:
        if not any(chain(v) for v in _forward(r, [(x, L)], top, blk)):
            return None
        if not any(chain(v) for v in _backward(r, [(x, L)], top, blk)):
            return None
    low = [v for v in r.vertices_upto(L - 1)]
    for v in low:
        if not any(chain(w) for w in _forward(r, [v], top)):
            return None
        if not any(chain(w) for w in _backward(r, [v], top)):
            return None
    return {"anchor": z, "level": L, "depth": top}


def _periodic_obstruction(p: PeriodicPresentation) -> dict | None:
    c = realized_cycle_exists(p)
    if c.no:
        return {"obstruction": "no_realized_cycle", "search_depth": c.certificate["search_depth"]}
    t = _exit_free_cycle(p)
    if t is not None:
        return {"obstruction": "exit_free_cycle", "cycle": path_dict(t)}
    return None


def periodic_is_purely_infinite(p: PeriodicPresentation, depth: int | None = None,
                                cap: int = DEFAULT_LATTICE_CAP) -> Verdict:
    from .classify import is_purely_infinite

    hyp = ["locally finite", "no sinks"]
    bad = _sink_refusal(p, PI_CONDITION)
    if bad:
        return bad
    depth = depth if depth is not None else len(p.stem.vertices) + 3 * len(p.block.vertices)
    obs = _periodic_obstruction(p)
    if obs is not None:
        return no({"kind": "quotient_obstruction", "H": [], **obs}, PI_CONDITION, hyp)
    sc = _strongly_connected(p, depth)
    if sc is not None:
        c = realized_cycle_exists(p)
        return yes({"kind": "strongly_connected", **sc, "cycle": c.certificate["cycle"]}, PI_CONDITION, hyp)
    everything = frozenset(p.stem.vertices) | frozenset(p.block.vertices)
    for h in presentation_hereditary_saturated(p, cap):
        if not h or h == everything:
            continue
        qp = quotient_presentation(p, h)
        if isinstance(qp, DirectedGraph):
            v = is_purely_infinite(qp)
            if v.no:
                return no({"kind": "quotient_obstruction", "H": sorted(h, key=natural_key),
                           "obstruction": "finite_quotient", "finite": v.certificate}, PI_CONDITION, hyp)
            continue
        obs = _periodic_obstruction(qp)
        if obs is not None:
            return no({"kind": "quotient_obstruction", "H": sorted(h, key=natural_key), **obs},
                      PI_CONDITION, hyp)
    return unknown("no obstruction found and strong connectivity not established", PI_CONDITION, hyp,
                   depth=depth)


__all__ = [
    "periodic_is_af", "periodic_torus_corners", "ShiftQuotient", "SCCMeans", "LeftInfiniteReport", "S0Set", "PerronWitness",
    "shift_quotient", "block_quotient", "mean_cycles", "realized_cycle_exists",
    "left_infinite_vertices", "periodic_is_stable", "periodic_has_unital_quotient",
    "periodic_is_purely_infinite", "presentation_hereditary_saturated", "quotient_presentation",
    "s0_periodic", "s0_subgraph_truncated", "verify_perron_witness", "parse_rname",
]
