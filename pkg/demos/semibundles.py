"""Torus semi-bundles, their double covers and the trace-zero achiral ones.

Run: python3 demos/semibundles.py
"""
from solchiral import intarith, solman
from solchiral.mat2 import Mat2

for rows in ([[1, 1], [1, 2]], [[2, 1], [-5, -2]], [[1, 2], [3, 7]]):
    psi = Mat2.of(rows)
    phi = solman.semibundle_double_cover(psi)
    alt = solman.semibundle_double_cover(psi, alternate=True)
    d = solman.discriminant_of(phi)
    print(f"psi = {psi}: cover {phi} (alternate {alt}), D = {d.D} = 4abcd/gcd(ac,bd)^2 = {solman.semibundle_cover_discriminant(psi)}")
    print(f"  achiral semi-bundle: {solman.is_achiral_semibundle(psi)}, cover achiral: {solman.is_achiral_bundle(phi)}, {solman.double_covers_semibundle(phi)}")

print("\nachiral semi-bundles from the negative Pell equation:")
for D in range(5, 60):
    if D % 4 not in (0, 1) or intarith.is_square(D):
        continue
    r = solman.achiral_semibundle_for(D)
    if r is not None:
        print(f"  D = {D:>2}: psi = {r.psi}, double cover has discriminant {r.cover_case}")
