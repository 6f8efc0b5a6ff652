"""Exact integer utilities: factorization, discriminants, Kronecker symbols,
continued fractions of quadratic irrationals and Pell equations."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

DEFAULT_BOUND = 2**63
TRIAL_LIMIT = 10**6
# n below this is factored through a smallest-prime-factor table
SPF_LIMIT = 1 << 22

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def _spf_table() -> np.ndarray:
    spf = np.zeros(SPF_LIMIT, dtype=np.int32)
    for p in range(2, math.isqrt(SPF_LIMIT - 1) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    return spf


@lru_cache(maxsize=None)
def _trial_primes() -> tuple:
    spf = _spf_table()
    n = np.arange(TRIAL_LIMIT + 1)
    return tuple(int(p) for p in np.flatnonzero((spf[: TRIAL_LIMIT + 1] == n) & (n >= 2)))


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, 10_000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _pollard_brent(n)
    _split(f, out)
    _split(n // f, out)


def factorize(n: int, bound: int = DEFAULT_BOUND) -> tuple:
    """Prime factorization as a tuple of ``(prime, exponent)`` pairs, ascending.

    >>> factorize(136)
    ((2, 3), (17, 1))
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"factorize needs a positive integer, got {n!r}")
    if n > bound:
        raise DomainError(f"{n} exceeds the factorization bound {bound}")
    out: dict = {}
    if n < SPF_LIMIT:
        spf = _spf_table()
        while n > 1:
            p = int(spf[n])
            while n % p == 0:
                n //= p
                out[p] = out.get(p, 0) + 1
        return tuple(sorted(out.items()))
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        _split(n, out)
    return tuple(sorted(out.items()))


def squarefree_decompose(n: int) -> tuple:
    """Write ``n = d * c**2`` with ``d`` squarefree; returns ``(d, c)``."""
    d = c = 1
    for p, e in factorize(n):
        c *= p ** (e // 2)
        if e % 2:
            d *= p
    return d, c


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def check_discriminant(D: int) -> None:
    if not isinstance(D, int) or D <= 0 or D % 4 not in (0, 1) or is_square(D):
        raise DomainError(f"{D!r} is not a positive non-square integer = 0, 1 mod 4")


def fundamental_discriminant(D: int) -> int:
    """Discriminant of the real quadratic field Q(sqrt(D))."""
    check_discriminant(D)
    d, _ = squarefree_decompose(D)
    return d if d % 4 == 1 else 4 * d


def is_fundamental_discriminant(D: int) -> bool:
    if not isinstance(D, int) or D <= 1 or D % 4 not in (0, 1):
        return False
    d, c = squarefree_decompose(D)
    if d == 1:
        return False
    return (c == 1 and d % 4 == 1) or (c == 2 and d % 4 in (2, 3))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    k = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 and a % 8 in (3, 5):
        k = -k
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


# -- continued fractions -------------------------------------------------


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    period: tuple

    def __len__(self):
        return len(self.period)


def _cf_quadratic(P: int, Q: int, D: int):
    """Partial quotients of (P + sqrt(D)) / Q, with Q | D - P**2 and Q > 0.

    Yields ``(a, P, Q)`` for the current complete quotient forever.
    """
    s = math.isqrt(D)
    while True:
        a = (P + s) // Q
        yield a, P, Q
        P = a * Q - P
        Q = (D - P * P) // Q


def cf_sqrt(D: int) -> CFExpansion:
    """Continued fraction of sqrt(D): ``a0`` and the minimal period."""
    if not isinstance(D, int) or D < 2 or is_square(D):
        raise DomainError(f"cf_sqrt needs a non-square integer >= 2, got {D!r}")
    gen = _cf_quadratic(0, 1, D)
    a0, _, _ = next(gen)
    period = []
    for a, _, Q in gen:
        period.append(a)
        if Q == 1:
            break
    return CFExpansion(a0, tuple(period))


def sqrt_period_is_odd(d: int) -> bool:
    """Parity of the period of sqrt(d), decided at the palindrome midpoint."""
    if d < 2 or is_square(d):
        raise DomainError(f"{d} must be a non-square integer >= 2")
    s = math.isqrt(d)
    m, q, a = 0, 1, s
    while True:
        m1 = a * q - m
        q1 = (d - m1 * m1) // q
        if q1 == q:
            return True
        if m1 == m:
            return False
        m, q = m1, q1
        a = (s + m) // q


def negative_pell_solvable(D: int) -> bool:
    """Whether x^2 - D y^2 = -4 has an integer solution.

    For 4 | D this is u^2 - (D/4) v^2 = -1; for D = 1 mod 4 a solution of the
    -4 equation with odd x, y cubes to one with even x, y, so it is again the
    -1 equation for D itself.
    """
    check_discriminant(D)
    return sqrt_period_is_odd(D // 4 if D % 4 == 0 else D)


# -- Pell equations ------------------------------------------------------


class PellKind(str, enum.Enum):
    plus1 = "plus1"
    minus1 = "minus1"
    plus4 = "plus4"
    minus4 = "minus4"

    @property
    def rhs(self) -> int:
        return {"plus1": 1, "minus1": -1, "plus4": 4, "minus4": -4}[self.value]


@dataclass(frozen=True)
class PellSolution:
    D: int
    equation_kind: PellKind
    solvable: bool
    x: int = 0
    y: int = 0

    def check(self) -> bool:
        return not self.solvable or self.x**2 - self.D * self.y**2 == self.equation_kind.rhs


def _convergents(P: int, Q: int, D: int):
    """Convergents ``(h, k)`` of (P + sqrt(D))/Q."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    for a, _, _ in _cf_quadratic(P, Q, D):
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        yield h1, k1


def _pell_unit(D: int, rhs: int) -> tuple | None:
    """Minimal positive (x, y) with x^2 - D y^2 = rhs, rhs in {1, -1}."""
    for h, k in _convergents(0, 1, D):
        v = h * h - D * k * k
        if v == rhs:
            return h, k
        if v == 1 and rhs == -1:
            # the first +1 unit precedes any -1 unit only when none exists
            return None
    return None  # pragma: no cover


def _pell_quarter(D: int, rhs: int) -> tuple | None:
    """Minimal positive (x, y) with x^2 - D y^2 = rhs (rhs = +-4), D = 1 mod 4.

    Walks the convergents h/k of (1 + sqrt(D))/2; each gives the candidate
    unit (2h - k + k sqrt(D))/2.
    """
    for h, k in _convergents(1, 2, D):
        x, y = 2 * h - k, k
        v = x * x - D * y * y
        if v == rhs and x > 0:
            return x, y
        if v == 4 and rhs == -4:
            return None
    return None  # pragma: no cover


def pell(D: int, kind) -> PellSolution:
    """Minimal positive solution of x^2 - D y^2 = +-1 or +-4.

    For the +-4 kinds ``D`` must be 0 or 1 mod 4; when 4 | D the problem is
    reduced to u^2 - (D/4) v^2 = +-1 and (2u, v) returned.
    """
    kind = PellKind(kind)
    if not isinstance(D, int) or D < 2 or is_square(D):
        raise DomainError(f"Pell needs a non-square integer >= 2, got {D!r}")
    rhs = kind.rhs
    if abs(rhs) == 1:
        sol = _pell_unit(D, rhs)
    else:
        check_discriminant(D)
        if D % 4 == 0:
            sol = _pell_unit(D // 4, rhs // 4)
            if sol is not None:
                sol = (2 * sol[0], sol[1])
        else:
            sol = _pell_quarter(D, rhs)
    if sol is None:
        return PellSolution(D, kind, False)
    out = PellSolution(D, kind, True, sol[0], sol[1])
    assert out.check()
    return out
