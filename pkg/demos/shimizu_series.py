"""Truncated Shimizu L-series: identically zero for achiral bundles, not otherwise.

Run: python3 demos/shimizu_series.py
"""
from solchiral import shimizu, solman
from solchiral.mat2 import W, Mat2

N = 30
for rows in ([[1, 1], [1, 2]], [[2, 3], [1, 2]], [[2, 1], [3, 2]], [[3, 2], [4, 3]]):
    phi = Mat2.of(rows)
    table = shimizu.orbit_counts(phi, N)
    print(f"phi = {phi}  Q = {solman.qform_of(phi)}  box = {table.box_bound}  achiral = {solman.is_achiral_bundle(phi)}")
    print("  c_n:", table.coefficients())

phi = Mat2.of([[2, 3], [1, 2]])
c = shimizu.l_coefficients(phi, N)
# orientation reversal negates the series, the sign of phi does not matter
assert shimizu.l_coefficients(phi.inverse(), N) == [-x for x in c]
assert shimizu.l_coefficients(W @ phi @ W, N) == [-x for x in c]
assert shimizu.l_coefficients(-phi, N) == c
# a degree-two cover doubles it
assert shimizu.l_coefficients(phi @ phi, N) == [2 * x for x in c]
for s in (1.5, 2.0, 3.0):
    print(f"L(M, {s}) ~ {shimizu.l_eval(phi, s, 400).value:.6f}  (N = 400)")
