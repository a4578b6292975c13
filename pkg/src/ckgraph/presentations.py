"""Input classes: edge-list graphs, 0/1 matrices and periodic presentations.

Text formats
------------
edgelist (``.ckg``)::

    vertex v
    edge e v w        # comments run to end of line

matrix (``.mtx``)::

    matrix 2
    1 1
    1 1

periodic (``.period``)::

    [stem]
    vertex s
    [block]
    vertex b
    [cross]
    edge up b b +1
    edge down b b -1
    [stem-block]
    edge in s b to-block
    edge out s b to-stem

A periodic presentation realizes the infinite graph on the stem plus copies
``1, 2, ...`` of the block.  A ``+1`` cross edge ``x -> y`` runs from copy
``k`` to copy ``k+1``; a ``-1`` cross edge runs from copy ``k+1`` to copy
``k``.  Stem-block edges attach to copy 1 only.  Realized block vertices are
named ``x@k``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .graph import DirectedGraph, Edge, GraphError, natural_key

RESERVED = "@"


class ParseError(GraphError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Square 0/1 matrix; row/column ``i`` is vertex ``str(i + 1)``."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise GraphError(f"row {i + 1} has {len(row)} entries, expected {n}")
            for j, a in enumerate(row):
                if a not in (0, 1):
                    raise GraphError(f"entry ({i + 1},{j + 1}) = {a!r} is not 0 or 1")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "AdjacencyMatrix":
        return cls(tuple(tuple(int(a) for a in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> int:
        """1-based entry ``A(i, j)``."""
        return self.entries[i - 1][j - 1]

    def successors(self, i: int) -> list[int]:
        return [j + 1 for j, a in enumerate(self.entries[i - 1]) if a]

    def zero_rows(self) -> list[int]:
        return [i + 1 for i, row in enumerate(self.entries) if not any(row)]


def graph_of_matrix(a: AdjacencyMatrix) -> DirectedGraph:
    """The graph ``E_A``: vertices ``1..n`` and an edge ``i>j`` iff ``A(i,j) = 1``."""
    vs = [str(i) for i in range(1, a.n + 1)]
    es = [Edge(f"{i}>{j}", str(i), str(j))
          for i in range(1, a.n + 1) for j in range(1, a.n + 1) if a(i, j)]
    return DirectedGraph(vs, es)


@dataclass(frozen=True)
class CrossEdge:
    id: str
    source: str
    range: str
    shift: int


@dataclass(frozen=True)
class StemBlockEdge:
    id: str
    stem: str
    block: str
    to_block: bool

    @property
    def source(self) -> str:
        return self.stem if self.to_block else self.block

    @property
    def range(self) -> str:
        return self.block if self.to_block else self.stem


@dataclass(frozen=True)
class PeriodicPresentation:
    stem: DirectedGraph
    block: DirectedGraph
    cross: tuple[CrossEdge, ...] = ()
    stem_block: tuple[StemBlockEdge, ...] = ()

    def __post_init__(self):
        if not self.block.vertices:
            raise GraphError("periodic presentation needs a nonempty block")
        clash = self.stem.vertex_set & self.block.vertex_set
        if clash:
            raise GraphError(f"stem and block share vertex ids {sorted(clash)}")
        ids = [e.id for e in self.stem.edges] + [e.id for e in self.block.edges]
        ids += [e.id for e in self.cross] + [e.id for e in self.stem_block]
        if len(set(ids)) != len(ids):
            raise GraphError("edge ids must be unique across all sections")
        for name in list(self.stem.vertices) + list(self.block.vertices) + ids:
            if RESERVED in name:
                raise GraphError(f"id {name!r} contains reserved character {RESERVED!r}")
        for c in self.cross:
            if c.shift not in (1, -1):
                raise GraphError(f"cross edge {c.id!r} has shift {c.shift}, expected +1 or -1")
            for end in (c.source, c.range):
                if end not in self.block:
                    raise GraphError(f"cross edge {c.id!r} uses non-block vertex {end!r}")
        for sb in self.stem_block:
            if sb.stem not in self.stem:
                raise GraphError(f"stem-block edge {sb.id!r}: {sb.stem!r} is not a stem vertex")
            if sb.block not in self.block:
                raise GraphError(f"stem-block edge {sb.id!r}: {sb.block!r} is not a block vertex")
        object.__setattr__(self, "cross", tuple(sorted(self.cross, key=lambda e: natural_key(e.id))))
        object.__setattr__(self, "stem_block",
                           tuple(sorted(self.stem_block, key=lambda e: natural_key(e.id))))


# A realized vertex is (name, level); stem vertices sit at level 0.
RVertex = tuple[str, int]


def rname(v: RVertex) -> str:
    return v[0] if v[1] == 0 else f"{v[0]}{RESERVED}{v[1]}"


class Realization:
    """Implicit view of the infinite graph realized by a presentation.

    Out- and in-edges are generated on demand as ``(edge_id, other_end)``.
    """

    def __init__(self, p: PeriodicPresentation):
        self.p = p
        blk = p.block
        self._b_out: dict[str, list[tuple[str, str, int]]] = {x: [] for x in blk.vertices}
        self._b_in: dict[str, list[tuple[str, str, int]]] = {x: [] for x in blk.vertices}
        for e in blk.edges:
            self._b_out[e.source].append((e.id, e.range, 0))
            self._b_in[e.range].append((e.id, e.source, 0))
        for c in p.cross:
            self._b_out[c.source].append((c.id, c.range, c.shift))
            self._b_in[c.range].append((c.id, c.source, c.shift))
        self._to_stem: dict[str, list[StemBlockEdge]] = {x: [] for x in blk.vertices}
        self._from_stem: dict[str, list[StemBlockEdge]] = {x: [] for x in blk.vertices}
        self._stem_to_block: dict[str, list[StemBlockEdge]] = {s: [] for s in p.stem.vertices}
        self._block_to_stem: dict[str, list[StemBlockEdge]] = {s: [] for s in p.stem.vertices}
        for sb in p.stem_block:
            if sb.to_block:
                self._stem_to_block[sb.stem].append(sb)
                self._from_stem[sb.block].append(sb)
            else:
                self._to_stem[sb.block].append(sb)
                self._block_to_stem[sb.stem].append(sb)

    def out_edges(self, v: RVertex) -> list[tuple[str, RVertex]]:
        x, k = v
        if k == 0:
            res = [(e.id, (e.range, 0)) for e in self.p.stem.out_edges(x)]
            res += [(sb.id, (sb.block, 1)) for sb in self._stem_to_block[x]]
            return res
        res = []
        for eid, y, s in self._b_out[x]:
            if s == 0:
                res.append((f"{eid}{RESERVED}{k}", (y, k)))
            elif s == 1:
                res.append((f"{eid}{RESERVED}{k}", (y, k + 1)))
            elif k >= 2:
                res.append((f"{eid}{RESERVED}{k - 1}", (y, k - 1)))
        if k == 1:
            res += [(sb.id, (sb.stem, 0)) for sb in self._to_stem[x]]
        return res

    def in_edges(self, v: RVertex) -> list[tuple[str, RVertex]]:
        x, k = v
        if k == 0:
            res = [(e.id, (e.source, 0)) for e in self.p.stem.in_edges(x)]
            res += [(sb.id, (sb.block, 1)) for sb in self._block_to_stem[x]]
            return res
        res = []
        for eid, y, s in self._b_in[x]:
            if s == 0:
                res.append((f"{eid}{RESERVED}{k}", (y, k)))
            elif s == 1:
                if k >= 2:
                    res.append((f"{eid}{RESERVED}{k - 1}", (y, k - 1)))
            else:
                res.append((f"{eid}{RESERVED}{k}", (y, k + 1)))
        if k == 1:
            res += [(sb.id, (sb.stem, 0)) for sb in self._from_stem[x]]
        return res

    def level_vertices(self, k: int) -> list[RVertex]:
        if k == 0:
            return [(s, 0) for s in self.p.stem.vertices]
        return [(x, k) for x in self.p.block.vertices]

    def vertices_upto(self, depth: int) -> list[RVertex]:
        out = self.level_vertices(0)
        for k in range(1, depth + 1):
            out += self.level_vertices(k)
        return out

    def sinks(self) -> list[RVertex]:
        """Realized sinks.  Copies >= 2 all look alike, so levels 0..2 suffice."""
        return [v for v in self.vertices_upto(2) if not self.out_edges(v)]


def realize_truncation(p: PeriodicPresentation, copies: int) -> DirectedGraph:
    """Stem plus block copies ``1..copies``; edges into copy ``copies+1`` are dropped."""
    if copies < 1:
        raise GraphError("copies must be >= 1")
    r = Realization(p)
    vs = r.vertices_upto(copies)
    edges = []
    for v in vs:
        for eid, w in r.out_edges(v):
            if w[1] <= copies:
                edges.append(Edge(eid, rname(v), rname(w)))
    return DirectedGraph([rname(v) for v in vs], edges, truncated=True)


@dataclass(frozen=True)
class GraphClass:
    tag: str  # "finite" | "matrix" | "periodic"
    no_sinks: bool
    locally_finite: bool
    row_finite: bool
    no_zero_rows: bool
    zero_rows: tuple = ()

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "no_sinks": self.no_sinks,
            "locally_finite": self.locally_finite,
            "row_finite": self.row_finite,
            "no_zero_rows": self.no_zero_rows,
        }


Presentable = Union[DirectedGraph, AdjacencyMatrix, PeriodicPresentation]


@dataclass(frozen=True)
class ParsedInput:
    kind: str
    obj: Presentable
    graph_class: GraphClass
    graph: DirectedGraph | None = field(default=None, compare=False)


def classify_input(obj: Presentable) -> ParsedInput:
    if isinstance(obj, AdjacencyMatrix):
        zr = tuple(obj.zero_rows())
        gc = GraphClass("matrix", not zr, True, True, not zr, zr)
        return ParsedInput("matrix", obj, gc, graph_of_matrix(obj))
    if isinstance(obj, PeriodicPresentation):
        ok = not Realization(obj).sinks()
        return ParsedInput("periodic", obj, GraphClass("periodic", ok, True, True, ok))
    if isinstance(obj, DirectedGraph):
        ok = not obj.sinks()
        return ParsedInput("finite", obj, GraphClass("finite", ok, True, True, ok), obj)
    raise TypeError(f"cannot classify {type(obj).__name__}")


# -- parsing -----------------------------------------------------------------

def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


class _GraphBuilder:
    def __init__(self):
        self.vertices: dict[str, tuple[int, int]] = {}
        self.edges: list[tuple[str, str, str, int, list[tuple[int, str]]]] = []

    def line(self, lineno: int, toks: list[tuple[int, str]]) -> bool:
        kw = toks[0][1]
        if kw == "vertex":
            if len(toks) != 2:
                raise ParseError("expected 'vertex <id>'", lineno, toks[0][0])
            col, vid = toks[1]
            if vid in self.vertices:
                raise ParseError(f"duplicate vertex {vid!r}", lineno, col)
            self.vertices[vid] = (lineno, col)
            return True
        if kw == "edge":
            if len(toks) != 4:
                raise ParseError("expected 'edge <id> <src> <dst>'", lineno, toks[0][0])
            self.edges.append((toks[1][1], toks[2][1], toks[3][1], lineno, toks))
            return True
        return False

    def build(self) -> DirectedGraph:
        seen: set[str] = set()
        for eid, s, d, lineno, toks in self.edges:
            if eid in seen:
                raise ParseError(f"duplicate edge {eid!r}", lineno, toks[1][0])
            seen.add(eid)
            for tok_i, end in ((2, s), (3, d)):
                if end not in self.vertices:
                    raise ParseError(f"undeclared vertex {end!r}", lineno, toks[tok_i][0])
        return DirectedGraph(self.vertices, [Edge(e, s, d) for e, s, d, *_ in self.edges])


def parse_edgelist(text: str) -> DirectedGraph:
    b = _GraphBuilder()
    for lineno, toks in _tokens(text):
        if not b.line(lineno, toks):
            raise ParseError(f"unknown keyword {toks[0][1]!r}", lineno, toks[0][0])
    return b.build()


def parse_matrix(text: str) -> AdjacencyMatrix:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty matrix file", 1, 1)
    lineno, toks = lines[0]
    if toks[0][1] != "matrix" or len(toks) != 2:
        raise ParseError("expected 'matrix <n>'", lineno, toks[0][0])
    try:
        n = int(toks[1][1])
    except ValueError:
        raise ParseError("matrix dimension must be an integer", lineno, toks[1][0]) from None
    if n < 0:
        raise ParseError("matrix dimension must be >= 0", lineno, toks[1][0])
    rows = lines[1:]
    if len(rows) != n:
        where = rows[n] if len(rows) > n else (lines[-1][0] + 1, [(1, "")])
        raise ParseError(f"expected {n} matrix rows, found {len(rows)}", where[0], where[1][0][0])
    out = []
    for lineno, toks in rows:
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno, toks[0][0])
        row = []
        for col, t in toks:
            if t not in ("0", "1"):
                raise ParseError(f"matrix entry {t!r} is not 0 or 1", lineno, col)
            row.append(int(t))
        out.append(tuple(row))
    return AdjacencyMatrix(tuple(out))


SECTIONS = ("stem", "block", "cross", "stem-block")


def parse_periodic(text: str) -> PeriodicPresentation:
    stem, block = _GraphBuilder(), _GraphBuilder()
    cross: list[CrossEdge] = []
    cross_pos: list[tuple[int, list]] = []
    sblk: list[tuple[StemBlockEdge, int, list]] = []
    section = None
    for lineno, toks in _tokens(text):
        first = toks[0][1]
        if first.startswith("["):
            name = first.strip("[]")
            if not (first.startswith("[") and first.endswith("]")) or name not in SECTIONS or len(toks) != 1:
                raise ParseError(f"bad section header {first!r}", lineno, toks[0][0])
            section = name
            continue
        if section is None:
            raise ParseError("content before first section header", lineno, toks[0][0])
        if section in ("stem", "block"):
            target = stem if section == "stem" else block
            if not target.line(lineno, toks):
                raise ParseError(f"unknown keyword {first!r}", lineno, toks[0][0])
        elif section == "cross":
            if first != "edge" or len(toks) != 5:
                raise ParseError("expected 'edge <id> <blocksrc> <blockdst> <+1|-1>'", lineno, toks[0][0])
            col, sh = toks[4]
            if sh not in ("+1", "-1", "1"):
                raise ParseError(f"shift {sh!r} must be +1 or -1", lineno, col)
            cross.append(CrossEdge(toks[1][1], toks[2][1], toks[3][1], 1 if sh != "-1" else -1))
            cross_pos.append((lineno, toks))
        else:
            if first != "edge" or len(toks) != 5:
                raise ParseError("expected 'edge <id> <stemv> <blockv> <to-block|to-stem>'", lineno, toks[0][0])
            col, d = toks[4]
            if d not in ("to-block", "to-stem"):
                raise ParseError(f"direction {d!r} must be to-block or to-stem", lineno, col)
            sblk.append((StemBlockEdge(toks[1][1], toks[2][1], toks[3][1], d == "to-block"), lineno, toks))
    for c, (lineno, toks) in zip(cross, cross_pos):
        for tok_i, end in ((2, c.source), (3, c.range)):
            if end not in block.vertices:
                raise ParseError(f"undeclared block vertex {end!r}", lineno, toks[tok_i][0])
    for sb, lineno, toks in sblk:
        if sb.stem not in stem.vertices:
            raise ParseError(f"undeclared stem vertex {sb.stem!r}", lineno, toks[2][0])
        if sb.block not in block.vertices:
            raise ParseError(f"undeclared block vertex {sb.block!r}", lineno, toks[3][0])
    try:
        return PeriodicPresentation(stem.build(), block.build(), tuple(cross), tuple(s for s, *_ in sblk))
    except ParseError:
        raise
    except GraphError as exc:
        raise ParseError(str(exc)) from None


FORMATS = {".ckg": "edgelist", ".mtx": "matrix", ".period": "periodic"}


def sniff_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    try:
        return FORMATS[ext]
    except KeyError:
        raise ParseError(f"cannot infer format from extension {ext!r}; pass --format") from None


def parse(text: str, format: str) -> ParsedInput:
    if format == "edgelist":
        obj: Presentable = parse_edgelist(text)
    elif format == "matrix":
        obj = parse_matrix(text)
    elif format == "periodic":
        obj = parse_periodic(text)
    else:
        raise ParseError(f"unknown format {format!r}")
    return classify_input(obj)


# -- serialization -----------------------------------------------------------

def _graph_lines(g: DirectedGraph) -> list[str]:
    out = [f"vertex {v}" for v in g.vertices]
    out += [f"edge {e.id} {e.source} {e.range}" for e in g.edges]
    return out


def serialize(obj: Presentable) -> str:
    if isinstance(obj, AdjacencyMatrix):
        lines = [f"matrix {obj.n}"] + [" ".join(map(str, r)) for r in obj.entries]
    elif isinstance(obj, PeriodicPresentation):
        lines = ["[stem]"] + _graph_lines(obj.stem) + ["[block]"] + _graph_lines(obj.block)
        lines += ["[cross]"] + [f"edge {c.id} {c.source} {c.range} {'+1' if c.shift == 1 else '-1'}"
                                for c in obj.cross]
        lines += ["[stem-block]"] + [
            f"edge {s.id} {s.stem} {s.block} {'to-block' if s.to_block else 'to-stem'}"
            for s in obj.stem_block
        ]
    elif isinstance(obj, DirectedGraph):
        lines = _graph_lines(obj)
    else:
        raise TypeError(type(obj).__name__)
    return "\n".join(lines) + "\n"


def format_of(obj: Presentable) -> str:
    if isinstance(obj, AdjacencyMatrix):
        return "matrix"
    if isinstance(obj, PeriodicPresentation):
        return "periodic"
    return "edgelist"
