"""Density of achiral classes and of classes containing a non-orientable manifold.

The achiral fraction drifts down slowly (its limit is 0).  The non-orientable
share among achiral classes sits near 0.81 at 10^6, well above its limiting
value 1 - rho = 0.58058: prime discriminants always admit a solution of the
negative Pell equation and still make up a large part of the sample.

Run: python3 demos/density_sweep.py
"""
import math
from collections import Counter

from solchiral import intarith, survey

print(f"rho = {survey.rho(1e-12):.8f}, 1 - rho = {1 - survey.rho(1e-12):.5f}, 3/pi^2 = {3 / math.pi**2:.6f}\n")
print(f"{'X':>9} {'#fund':>7} {'frac':>8} {'achiral':>8} {'nonor/achiral':>14}")
for X in (10**3, 10**4, 10**5, 10**6):
    records, rep = survey.sweep(X)
    print(f"{X:>9} {rep.n_fundamental:>7} {rep.frac_fundamental:>8.5f} {rep.frac_achiral_among_all:>8.4f} {rep.frac_nonorientable_among_achiral:>14.4f}")

print("\nby number of prime factors, X = 10^6:")
tot, yes = Counter(), Counter()
for r in records:
    if r.achiral_class:
        k = len(intarith.factorize(r.D))
        tot[k] += 1
        yes[k] += r.nonorientable
for k in sorted(tot):
    print(f"  {k} primes: {tot[k]:>6} achiral D, solvable fraction {yes[k] / tot[k]:.3f}")
