"""Slow reference implementations used only to check the library.

Each one takes a different route from the code under test: plain trial
division, Cohen's composition formulas, breadth-first search over SL2 words,
exhaustive Pell scans.
"""
import itertools
import math


def naive_factor(n):
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def naive_squarefree(n):
    return all(n % (k * k) for k in range(2, math.isqrt(n) + 1))


def naive_fundamental(D):
    if D <= 1:
        return False
    if D % 4 == 1:
        return naive_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and naive_squarefree(m)
    return False


def euler_legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def pell_scan(D, rhs, ymax):
    """Least y in 1..ymax with D y^2 + rhs a positive square; returns (x, y) or None."""
    for y in range(1, ymax + 1):
        t = D * y * y + rhs
        if t > 0:
            x = math.isqrt(t)
            if x * x == t:
                return x, y
    return None


def _ext_gcd(a, b):
    """(g, u, v) with u a + v b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def cohen_compose(f1, f2):
    """Composition of forms (a, b, c) following Cohen, Algorithm 5.4.7.

    Works verbatim for indefinite forms with nonzero leading coefficients.
    """
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    if abs(a1) > abs(a2):
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a1 % a2 == 0:
        y1, d = 0, abs(a2)
    else:
        d, u, _ = _ext_gcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = _ext_gcd(s, d)
        x2, y2 = u, -v
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    assert b3 * b3 - 4 * a3 * c3 == b1 * b1 - 4 * a1 * c1
    return a3, b3, c3


def _act(f, m):
    """f((x, y) m) for m = (p, q, r, s) meaning [[p, q], [r, s]]."""
    a, b, c = f
    p, q, r, s = m
    # (x, y) m = (p x + r y, q x + s y)
    return (
        a * p * p + b * p * q + c * q * q,
        2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s,
        a * r * r + b * r * s + c * s * s,
    )


_GENS = ((0, -1, 1, 0), (1, 1, 0, 1), (1, -1, 0, 1))


def _ball(f, depth):
    seen = {f}
    frontier = [f]
    for _ in range(depth):
        nxt = []
        for g in frontier:
            for m in _GENS:
                h = _act(g, m)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def word_equivalent(f1, f2, length=12):
    """Whether f2 = f1 acted on by a word of at most ``length`` letters in S, T, T^-1.

    Meets in the middle: the generator set is closed under inverses (S^-1
    acts as S on forms), so two balls of half the radius suffice.
    """
    h = length // 2
    return not _ball(tuple(f1), h).isdisjoint(_ball(tuple(f2), length - h))


def random_word(rng, length):
    m = (1, 0, 0, 1)
    for _ in range(length):
        g = _GENS[rng.randrange(3)]
        p, q, r, s = m
        P, Q, R, S = g
        m = (p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)
    return m


def anosov_sl2(bound):
    """All [a, b, c, d] in SL2(Z), entries in [-bound, bound], |trace| > 2."""
    R = range(-bound, bound + 1)
    return [
        (a, b, c, d)
        for a, b, c, d in itertools.product(R, repeat=4)
        if a * d - b * c == 1 and abs(a + d) > 2
    ]
