"""Enumerate hereditary saturated vertex sets and look at the quotients."""

from ckgraph import enumerate_hereditary_saturated, is_af, parse, quotient_graph
from ckgraph.ideals import lattice_order

text = """
vertex u
vertex w
vertex x
edge a u u
edge b u u
edge c u w
edge d w w
edge e w x
"""
g = parse(text, "edgelist").graph

sets = enumerate_hereditary_saturated(g)
for i, H in enumerate(sets):
    q = quotient_graph(g, H)
    print(i, sorted(H), "-> quotient on", list(q.vertices), "AF" if is_af(q).yes else "not AF")

# cover relations of the lattice (i, j): set i is covered by set j
print("covers:", lattice_order(sets))
