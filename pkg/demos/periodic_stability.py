"""Infinite periodic graphs: a finite stem glued to infinitely many copies of a block.

The shift quotient folds the copies together and weights each edge by how
many levels it climbs.  Mean cycle weights then say which cycles survive in
the realized graph, and the left-infinite labels decide stability.
"""

from pathlib import Path

from ckgraph import mean_cycles, parse, periodic_is_stable, realize_truncation, shift_quotient
from ckgraph.traces import has_unital_quotient
from ckgraph.periodic import left_infinite_vertices, s0_periodic

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

for name in ("ray.period", "two_ray.period", "ladder.period", "binary_tree.period"):
    p = parse((CORPUS / name).read_text(), "periodic").obj
    print(f"== {name}")
    q = shift_quotient(p)
    for m in mean_cycles(q):
        print(f"   SCC {m.component}: mean weight in [{m.min_mean}, {m.max_mean}]")

    li = left_infinite_vertices(p)
    print("   left-infinite eventual classes:", li.eventual)
    print("   S0:", s0_periodic(p).to_dict())

    st = periodic_is_stable(p)
    uq = has_unital_quotient(p)
    print(f"   stable={st.value.value} ({st.certificate.get('kind')})  "
          f"unital quotient={uq.value.value}")

    g = realize_truncation(p, 2)
    print(f"   two copies realized: {len(g.vertices)} vertices, {len(g.edges)} edges")
