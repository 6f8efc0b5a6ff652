"""Genus theory: the character chi_D, the subgroup H_D of (Z/D)^* and the
achirality criteria that follow from it.

H_D is cut out by (a/p) = 1 for every odd prime p | D together with a
congruence on a that depends on D mod 32:

    D = 8 (mod 32)          a = 1, 7 (mod 8)
    D = 12, 16, 28 (mod 32) a = 1 (mod 4)
    D = 24 (mod 32)         a = 1, 3 (mod 8)
    D = 0 (mod 32)          a = 1 (mod 8)

For odd D and for D = 4, 20 (mod 32) no 2-adic condition is imposed; the
index identity |Ker chi_D / H_D| = |C(D)| / |2C(D)| is checked in the tests
to confirm this choice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import intarith, qform
from .errors import DomainError


@dataclass(frozen=True)
class GenusContext:
    D: int
    odd_prime_divisors: tuple
    two_adic_case: str  # one of TWO_ADIC_CASES


TWO_ADIC_CASES = ("none", "8 mod 32", "12/16/28 mod 32", "24 mod 32", "0 mod 32")


def genus_context(D: int) -> GenusContext:
    intarith.check_discriminant(D)
    odd = tuple(p for p, _ in intarith.factorize(D) if p != 2)
    r = D % 32
    if r == 8:
        case = "8 mod 32"
    elif r in (12, 16, 28):
        case = "12/16/28 mod 32"
    elif r == 24:
        case = "24 mod 32"
    elif r == 0:
        case = "0 mod 32"
    else:
        case = "none"
    return GenusContext(D, odd, case)


def chi_D(a: int, D: int) -> int:
    """Kronecker character a -> (D/a)."""
    return intarith.kronecker(D, a)


def _two_adic_ok(a: int, case: str) -> bool:
    if case == "8 mod 32":
        return a % 8 in (1, 7)
    if case == "12/16/28 mod 32":
        return a % 4 == 1
    if case == "24 mod 32":
        return a % 8 in (1, 3)
    if case == "0 mod 32":
        return a % 8 == 1
    return True


def in_H_D(a: int, D, ctx: GenusContext | None = None) -> bool:
    """Membership of the residue class of ``a`` in H_D."""
    ctx = ctx or genus_context(D)
    if math.gcd(a, ctx.D) != 1:
        raise DomainError(f"{a} is not a unit modulo {ctx.D}")
    if any(intarith.kronecker(a, p) != 1 for p in ctx.odd_prime_divisors):
        return False
    return _two_adic_ok(a, ctx.two_adic_case)


def minus_one_in_H(D: int) -> bool:
    return in_H_D(-1, D)


def achiral_discriminant(D: int) -> bool:
    """Some oriented Sol torus bundle of discriminant D is achiral."""
    intarith.check_discriminant(D)
    if D % 16 == 0:
        return False
    return all(p % 4 != 3 for p, _ in intarith.factorize(D))


def achiral_class(D_fund: int) -> bool:
    """The commensurable class with fundamental discriminant D_fund is achiral."""
    if not intarith.is_fundamental_discriminant(D_fund):
        raise DomainError(f"{D_fund!r} is not a fundamental discriminant")
    return all(p % 4 != 3 for p, _ in intarith.factorize(D_fund))


def achiral_by_class_group(D: int) -> bool:
    """Whether some class [Q] in C(D) has 2[Q] = [-Q0]."""
    G = qform.class_group(D)
    target = qform.class_of(qform.negate(qform.principal_form(D)))
    return any(G.double(x) == target for x in G)


def genus_index(D: int) -> int:
    """|Ker chi_D / H_D| by direct enumeration of (Z/D)^*."""
    ctx = genus_context(D)
    ker = h = 0
    for a in range(1, D):
        if math.gcd(a, D) != 1:
            continue
        if chi_D(a, D) == 1:
            ker += 1
            if in_H_D(a, D, ctx):
                h += 1
    if ker % h:
        raise ArithmeticError(f"H_D does not divide Ker chi_D for D={D}")
    return ker // h
