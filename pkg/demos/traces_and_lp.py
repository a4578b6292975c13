"""Graph-traces come out of an exact rational feasibility problem.

Either we get a nonnegative normalized solution, or a Farkas vector showing
there is none.  Both are checked with plain Fraction arithmetic.
"""

from fractions import Fraction

from ckgraph import bounded_graph_trace, parse, path_count_identity
from ckgraph.exact_lp import RationalLinearSystem, feasible_nonnegative
from ckgraph.traces import path_counts, trace_solution_dimension

# tiny LP first: x + y = 1, x - y = 1/2
sys_ = RationalLinearSystem.of([[1, 1], [1, -1]], [1, Fraction(1, 2)])
res = feasible_nonnegative(sys_)
print("feasible:", res.feasible, "x =", [str(v) for v in res.x], "verified:", res.verify(sys_))

# and an infeasible one: x + y = -1
bad = RationalLinearSystem.of([[1, 1]], [-1])
res = feasible_nonnegative(bad)
print("feasible:", res.feasible, "farkas y =", [str(v) for v in res.y], "verified:", res.verify(bad))

# a diamond with two sinks
diamond = parse("""
vertex s
vertex l
vertex r
vertex t1
vertex t2
edge sl s l
edge sr s r
edge lt l t1
edge rt r t2
edge lt2 l t2
""", "edgelist").graph

v = bounded_graph_trace(diamond)
tau = {k: Fraction(x) for k, x in v.certificate["values"].items()}
print("graph trace:", v.value.value, v.certificate["values"])
print("solution space dimension:", trace_solution_dimension(diamond))

# on an acyclic graph a trace is fixed by its sink values: tau(v) = sum n_i tau(sink_i)
print("paths from s into each sink:", path_counts(diamond, "s"))
sinks = {k: tau[k] for k in ("t1", "t2")}
for u in diamond.vertices:
    assert path_count_identity(diamond, u, sinks) == tau[u]
print("path-count identity checked at every vertex")

# a loop with an exit admits no trace: the Farkas vector says why
loop = parse("vertex v\nvertex w\nedge e v v\nedge f v w\nedge g w v\n", "edgelist").graph
v = bounded_graph_trace(loop)
print("loop with exit:", v.value.value, v.certificate["kind"])
