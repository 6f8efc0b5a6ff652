"""Which Sol torus bundles are achiral, and why D = 136 is the interesting case.

Run: python3 demos/achirality_tour.py
"""
from solchiral import genus, qform, solman
from solchiral.mat2 import Mat2

# A monodromy determines a discriminant and a quadratic form.
for rows in ([[1, 1], [1, 2]], [[2, 3], [1, 2]], [[5, 8], [8, 13]]):
    phi = Mat2.of(rows)
    d = solman.discriminant_of(phi)
    print(f"phi = {phi}: u = {d.u}, D = {d.D}, Q = {d.form}, achiral = {solman.is_achiral_bundle(phi)}")

# The class-group test agrees with a direct hunt for an orientation-reversing symmetry.
phi = Mat2.of([[1, 1], [1, 2]])
print("\nwitnesses for [[1,1],[1,2]] with entries <= 3:")
for A in solman.achirality_witnesses(phi, 3):
    print("  ", A, "det", A.det)

# D = 136: the class passes the genus test, but x^2 - 136 y^2 = -4 has no solution.
D = 136
G = qform.class_group(D)
trace = solman.realize_discriminant(D).trace
print(f"\nC({D}) has {len(G)} classes; bundles of trace {trace} in each class:")
for c in G:
    phi = solman.from_form_and_trace(c.canonical, trace)
    print(f"  {c.canonical}: order {G.order(c)}, phi = {phi}, achiral = {solman.is_achiral_bundle(phi)}")
print("achiral commensurability class:", genus.achiral_class(D))
print("contains a non-orientable manifold:", solman.class_contains_nonorientable(D))

# Multiplying D by 9 or 16 always kills achirality while staying commensurable.
for D in (5, 13, 136):
    for c in (3, 4):
        phi = solman.realize_discriminant(c * c * D)
        print(f"D = {c * c * D}: phi = {phi}, achiral = {solman.is_achiral_bundle(phi)}")
