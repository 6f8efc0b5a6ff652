"""Indefinite binary quadratic forms and the class group C(D).

A form (alpha, beta, gamma) stands for alpha x^2 + beta xy + gamma y^2.
Matrices act on the right of row vectors: ``apply_matrix(Q, A)`` is the form
v -> Q(v A), so two forms are SL2(Z)-equivalent when Q1 = apply_matrix(Q2, A)
for some A of determinant +1.  Under this convention applying A and then B
is the same as applying the product ``B @ A``.

Reduction follows Gauss: (a, b, c) is reduced when 0 < b < sqrt(D) and
sqrt(D) - b < 2|a| < sqrt(D) + b.  The reduced forms of a class make up one
cycle under the rho step, and the class is named by the cycle member that is
least under the key (|a|, a, b, c).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import intarith
from .errors import DomainError
from .mat2 import IDENTITY, Mat2

_MAX_RHO_STEPS = 1_000_000


@dataclass(frozen=True)
class QForm:
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        D = self.beta * self.beta - 4 * self.alpha * self.gamma
        if D <= 0 or intarith.is_square(D):
            raise DomainError(f"{self.coeffs()} has discriminant {D}, need positive non-square")
        if math.gcd(self.alpha, self.beta, self.gamma) != 1:
            raise DomainError(f"{self.coeffs()} is not primitive")

    @property
    def disc(self) -> int:
        return self.beta * self.beta - 4 * self.alpha * self.gamma

    def coeffs(self) -> tuple:
        return (self.alpha, self.beta, self.gamma)

    def __call__(self, x: int, y: int) -> int:
        return self.alpha * x * x + self.beta * x * y + self.gamma * y * y

    def __str__(self):
        return f"({self.alpha}, {self.beta}, {self.gamma})"


def _key(f: QForm):
    return (abs(f.alpha), f.alpha, f.beta, f.gamma)


@dataclass(frozen=True)
class FormClass:
    canonical: QForm
    discriminant: int

    def __str__(self):
        return f"[{self.canonical}]"


def disc(Q: QForm) -> int:
    return Q.disc


def principal_form(D: int) -> QForm:
    intarith.check_discriminant(D)
    if D % 4 == 0:
        return QForm(1, 0, -D // 4)
    return QForm(1, 1, (1 - D) // 4)


def negate(Q: QForm) -> QForm:
    return QForm(-Q.alpha, -Q.beta, -Q.gamma)


def class_inverse(Q: QForm) -> QForm:
    return QForm(Q.alpha, -Q.beta, Q.gamma)


def apply_matrix(Q: QForm, A: Mat2) -> QForm:
    """The form (x, y) -> Q((x, y) A)."""
    al, be, ga = Q.alpha, Q.beta, Q.gamma
    a, b, c, d = A.a, A.b, A.c, A.d
    return QForm(
        Q(a, b),
        2 * al * a * c + be * (a * d + b * c) + 2 * ga * b * d,
        Q(c, d),
    )


def is_reduced(Q: QForm) -> bool:
    s = math.isqrt(Q.disc)
    b, a2 = Q.beta, 2 * abs(Q.alpha)
    return 0 < b <= s and a2 + b > s and a2 - b <= s


def _rho(Q: QForm, s: int):
    """One reduction step; returns the new form and its matrix M (new = Q.M)."""
    a, b, c = Q.alpha, Q.beta, Q.gamma
    ac = abs(c)
    lo = s - 2 * ac + 1 if ac <= s else -ac + 1
    b1 = lo + (-b - lo) % (2 * ac)
    t = (b1 + b) // (2 * c)
    D = b * b - 4 * a * c
    return QForm(c, b1, (b1 * b1 - D) // (4 * c)), Mat2(0, 1, -1, t)


def rho(Q: QForm) -> QForm:
    return _rho(Q, math.isqrt(Q.disc))[0]


def reduce(Q: QForm):
    """Reduced form equivalent to ``Q`` and a determinant-one witness W with
    ``apply_matrix(Q, W) == reduced``."""
    s = math.isqrt(Q.disc)
    W = IDENTITY
    f = Q
    for _ in range(_MAX_RHO_STEPS):
        if is_reduced(f):
            return f, W
        f, M = _rho(f, s)
        W = M @ W
    raise RuntimeError(f"reduction of {Q} did not terminate")


def _cycle_from(R: QForm, s: int):
    cycle = [R]
    f = _rho(R, s)[0]
    while f != R:
        cycle.append(f)
        f = _rho(f, s)[0]
        if len(cycle) > _MAX_RHO_STEPS:
            raise RuntimeError(f"cycle of {R} did not close")
    return cycle


def reduction_cycle(Q: QForm) -> list:
    """All reduced forms equivalent to ``Q``, in rho order starting at reduce(Q)."""
    return _cycle_from(reduce(Q)[0], math.isqrt(Q.disc))


@lru_cache(maxsize=1 << 16)
def class_of(Q: QForm) -> FormClass:
    return FormClass(min(reduction_cycle(Q), key=_key), Q.disc)


def _same_disc(Q1: QForm, Q2: QForm) -> None:
    if Q1.disc != Q2.disc:
        raise DomainError(f"discriminants differ: {Q1.disc} vs {Q2.disc}")


def equivalent(Q1: QForm, Q2: QForm) -> bool:
    _same_disc(Q1, Q2)
    return class_of(Q1) == class_of(Q2)


def equivalence_witness(Q1: QForm, Q2: QForm):
    """A in SL2(Z) with ``Q1 == apply_matrix(Q2, A)``, or None if inequivalent."""
    _same_disc(Q1, Q2)
    s = math.isqrt(Q1.disc)
    R1, W1 = reduce(Q1)
    R2, W2 = reduce(Q2)
    f, P = R2, IDENTITY
    while True:
        if f == R1:
            return W1.inverse() @ P @ W2
        f, M = _rho(f, s)
        P = M @ P
        if f == R2:
            return None


# -- composition ---------------------------------------------------------


def _complete_row(p: int, q: int) -> Mat2:
    """A determinant-one matrix with first row (p, q); gcd(p, q) must be 1."""
    g, x, y = _egcd(p, q)
    assert g == 1
    # p*x + q*y = 1, so [[p, q], [-y, x]] has determinant 1
    return Mat2(p, q, -y, x)


def _egcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _small_vectors():
    """Primitive vectors (p, q) ordered by max(|p|, |q|), q >= 0."""
    yield (1, 0)
    for r in itertools.count(1):
        for p in range(-r, r + 1):
            for q in (r,) if abs(p) < r else range(0, r + 1):
                if math.gcd(p, q) == 1:
                    yield (p, q)


def coprime_representative(Q: QForm, m: int) -> QForm:
    """A form equivalent to ``Q`` whose leading coefficient is prime to ``m``."""
    for f in reduction_cycle(Q):
        if math.gcd(f.alpha, m) == 1:
            return f
    for p, q in _small_vectors():
        v = Q(p, q)
        if v != 0 and math.gcd(v, m) == 1:
            return apply_matrix(Q, _complete_row(p, q))
    raise AssertionError("unreachable: every class represents integers prime to m")


def compose(Q1: QForm, Q2: QForm, coprime_to: int = 1) -> QForm:
    """A form in the class [Q1] + [Q2] (Dirichlet composition).

    Both inputs are first replaced by equivalent forms with coprime leading
    coefficients; the leading coefficient of the result is then their
    product, also prime to ``coprime_to``.
    """
    _same_disc(Q1, Q2)
    D = Q1.disc
    f1 = coprime_representative(Q1, coprime_to)
    f2 = None
    for g in reduction_cycle(Q2):
        if math.gcd(g.alpha, f1.alpha * coprime_to) == 1:
            f2 = g
            break
    if f2 is None:
        f2 = coprime_representative(Q2, f1.alpha * coprime_to)
    a1, a2 = f1.alpha, f2.alpha
    m1, m2 = abs(a1), abs(a2)
    # beta = b1 mod 2 m1, beta = b2 mod 2 m2; the square condition then holds
    k = ((f2.beta - f1.beta) // 2) * pow(m1, -1, m2) % m2 if m2 > 1 else 0
    beta = f1.beta + 2 * m1 * k
    mod = 2 * m1 * m2
    beta %= mod
    if beta > m1 * m2:
        beta -= mod
    num = beta * beta - D
    assert num % (4 * a1 * a2) == 0
    return QForm(a1 * a2, beta, num // (4 * a1 * a2))


# -- class group ---------------------------------------------------------


def _divisors(m: int):
    divs = [1]
    for p, e in intarith.factorize(m):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def reduced_forms(D: int) -> list:
    """Every reduced primitive form of discriminant D."""
    intarith.check_discriminant(D)
    s = math.isqrt(D)
    out = []
    for b in range(2 - D % 2, s + 1, 2):
        m = (D - b * b) // 4
        for a in _divisors(m):
            if 2 * a + b <= s or 2 * a - b > s:
                continue
            c = m // a
            if math.gcd(a, b, c) != 1:
                continue
            out.append(QForm(a, b, -c))
            out.append(QForm(-a, b, c))
    return out


class ClassGroup:
    """The finite abelian group C(D) of SL2(Z)-classes of primitive forms."""

    def __init__(self, D: int, elements):
        self.discriminant = D
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.identity = class_of(principal_form(D))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    @property
    def class_number(self) -> int:
        return len(self.elements)

    def index(self, x: FormClass) -> int:
        return self._index[x]

    def add(self, x: FormClass, y: FormClass) -> FormClass:
        return class_of(compose(x.canonical, y.canonical))

    def neg(self, x: FormClass) -> FormClass:
        return class_of(class_inverse(x.canonical))

    def double(self, x: FormClass) -> FormClass:
        return self.add(x, x)

    @cached_property
    def table(self) -> tuple:
        """``table[i][j]`` is the index of elements[i] + elements[j]."""
        n = len(self.elements)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                k = self._index[self.add(self.elements[i], self.elements[j])]
                rows[i][j] = rows[j][i] = k
        return tuple(tuple(r) for r in rows)

    def order(self, x: FormClass) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.add(y, x)
            n += 1
        return n

    def doubles(self) -> frozenset:
        return frozenset(self.double(x) for x in self.elements)

    def __repr__(self):
        return f"ClassGroup(D={self.discriminant}, h={len(self)})"


@lru_cache(maxsize=4096)
def class_group(D: int) -> ClassGroup:
    forms = reduced_forms(D)
    seen = set()
    classes = []
    s = math.isqrt(D)
    for f in forms:
        if f in seen:
            continue
        cyc = _cycle_from(f, s)
        seen.update(cyc)
        classes.append(FormClass(min(cyc, key=_key), D))
    classes.sort(key=lambda c: _key(c.canonical))
    return ClassGroup(D, classes)


def represents(Q: QForm, n: int, bound: int | None = None) -> bool:
    """Whether Q(x, y) = n for some integers.

    With ``bound`` the search runs over |x|, |y| <= bound.  Without it only
    n = +1 and n = -1 are accepted and decided exactly at the class level.
    """
    if n == 0:
        raise DomainError("represents needs a nonzero target")
    if bound is None:
        if n not in (1, -1):
            raise DomainError("an exact test is only available for n = +1, -1")
        P = principal_form(Q.disc)
        return class_of(Q) == class_of(P if n == 1 else negate(P))
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if Q(x, y) == n:
                return True
    return False


def class_order(Q: QForm) -> int:
    identity = class_of(principal_form(Q.disc))
    target = class_of(Q)
    n, acc = 1, target
    while acc != identity:
        acc = class_of(compose(acc.canonical, Q))
        n += 1
    return n


def is_ambiguous(Q: QForm) -> bool:
    return class_of(compose(Q, Q)) == class_of(principal_form(Q.disc))
