"""Cylinder sets in the one-sided Markov shift of a 0-1 matrix."""

from ckgraph import cylinder_compare, contraction_witness, markov_classify, parse, shift_image
from ckgraph.shiftspace import cylinder, verify_contraction

A = parse("matrix 2\n0 1\n1 1\n", "matrix").obj

# 1 must go to 2, so Z(1) and Z(1,2) are the same set
print("Z(1) vs Z(1,2):", cylinder_compare(A, cylinder(A, [1]), cylinder(A, [1, 2])).value)
print("Z(2) vs Z(2,1):", cylinder_compare(A, cylinder(A, [2]), cylinder(A, [2, 1])).value)
print("Z(1) vs Z(2):  ", cylinder_compare(A, cylinder(A, [1]), cylinder(A, [2])).value)

print("T^2 Z(1,2):", sorted(str(c) for c in shift_image(A, cylinder(A, [1, 2]), 2)))

for v in (1, 2):
    w = contraction_witness(A, v)
    print(f"vertex {v}: W={w.W} n={w.n} m={w.m} verified={verify_contraction(A, w)}")

mk = markov_classify(A)
print("AF:", mk["af"].value.value)
print("aperiodic points from:", [v for v, d in mk["aperiodic_point"].items() if d.yes])

# a permutation matrix: every point is periodic
P = parse("matrix 2\n0 1\n1 0\n", "matrix").obj
print("permutation, aperiodic points from:",
      [v for v, d in markov_classify(P)["aperiodic_point"].items() if d.yes])
