"""Walk through the finite-graph classifiers on a few small graphs.

Run with ``python3 demos/finite_classification.py``.
"""

from ckgraph import is_af, is_purely_infinite, parse, properly_infinite_vertex, torus_corners

GRAPHS = {
    # a path has no cycles at all; it has sinks, so pure infiniteness is left open
    "path": "vertex a\nvertex b\nvertex c\nedge ab a b\nedge bc b c\n",
    # one loop, no exit: the algebra is C(T)
    "loop": "vertex v\nedge e v v\n",
    # two loops at one vertex
    "two loops": "vertex v\nedge e v v\nedge f v v\n",
    # two loops feeding a lone loop; the lone loop becomes exit-free in the quotient
    "u feeds w": "vertex u\nvertex w\nedge a u u\nedge b u u\nedge c u w\nedge d w w\n",
}

for name, text in GRAPHS.items():
    g = parse(text, "edgelist").graph
    af = is_af(g)
    pi = is_purely_infinite(g)
    corners = torus_corners(g)
    print(f"{name:10}  AF={af.value.value:7} purely infinite={pi.value.value:7} "
          f"torus corners={[c.period for c in corners]}")
    if pi.no:
        print("            obstruction:", pi.certificate["kind"])

# properly infinite projections, vertex by vertex
g = parse(GRAPHS["u feeds w"], "edgelist").graph
for v in g.vertices:
    print(f"p_{v} properly infinite:", properly_infinite_vertex(g, v).value.value)
