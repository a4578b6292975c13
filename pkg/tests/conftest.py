import random
import sys

from hypothesis import strategies as st

from ckgraph.graph import DirectedGraph, Edge


def random_graph(rng: random.Random, n: int, p: float = 0.3, multi: bool = False) -> DirectedGraph:
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for a in vs:
        for b in vs:
            reps = rng.choice((1, 1, 2)) if multi else 1
            for _ in range(reps):
                if rng.random() < p:
                    edges.append(Edge(f"e{len(edges)}", a, b))
    return DirectedGraph(vs, edges)


def random_no_sink_graph(rng: random.Random, n: int, p: float = 0.25) -> DirectedGraph:
    g = random_graph(rng, n, p)
    edges = list(g.edges)
    for v in g.vertices:
        if not g.out_edges(v):
            edges.append(Edge(f"e{len(edges)}", v, rng.choice(g.vertices)))
    return DirectedGraph(g.vertices, edges)


def random_dag(rng: random.Random, n: int, p: float = 0.35) -> DirectedGraph:
    vs = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append(Edge(f"e{len(edges)}", vs[i], vs[j]))
    return DirectedGraph(vs, edges)


@st.composite
def graphs(draw, max_n: int = 7, no_sinks: bool = False):
    n = draw(st.integers(1, max_n))
    vs = [f"v{i}" for i in range(n)]
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    if no_sinks:
        pairs += [(i, draw(st.integers(0, n - 1))) for i in range(n)]
    return DirectedGraph(vs, [Edge(f"e{k}", vs[a], vs[b]) for k, (a, b) in enumerate(pairs)])


def graph_from(text_edges: str) -> DirectedGraph:
    """Build from ``"a>b b>c"``-style shorthand; edge ids e0, e1, ..."""
    pairs = [tok.split(">") for tok in text_edges.split()]
    vs = sorted({x for p in pairs for x in p})
    return DirectedGraph(vs, [Edge(f"e{i}", a, b) for i, (a, b) in enumerate(pairs)])


def random_presentation(rng: random.Random, ns: int = 2, nb: int = 3, p: float = 0.3):
    """Random periodic presentation; edge density ``p`` per slot."""
    from ckgraph.presentations import CrossEdge, PeriodicPresentation, StemBlockEdge

    stem_v = [f"s{i}" for i in range(ns)]
    blk_v = [f"b{i}" for i in range(nb)]
    se = [Edge(f"t{k}", a, b) for k, (a, b) in enumerate((a, b) for a in stem_v for b in stem_v)
          if rng.random() < p]
    be = [Edge(f"i{k}", a, b) for k, (a, b) in enumerate((a, b) for a in blk_v for b in blk_v)
          if rng.random() < p]
    cross = [CrossEdge(f"c{k}", a, b, s) for k, (a, b, s) in
             enumerate((a, b, s) for a in blk_v for b in blk_v for s in (1, -1)) if rng.random() < p / 2]
    sb = [StemBlockEdge(f"j{k}", a, b, d) for k, (a, b, d) in
          enumerate((a, b, d) for a in stem_v for b in blk_v for d in (True, False)) if rng.random() < p]
    return PeriodicPresentation(DirectedGraph(stem_v, se), DirectedGraph(blk_v, be), tuple(cross), tuple(sb))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
