"""Sol torus bundles and semi-bundles described by integer matrices.

A monodromy phi = [[a, b], [c, d]] in GL2(Z) with real eigenvalues other than
+-1 gives the torus bundle M_phi; it is orientable exactly when det phi = 1.
For such phi,

    u = sign(tr phi) * gcd(b, c, d - a)
    D = ((a + d)^2 - 4 det phi) / u^2
    Q_phi = (c, d - a, -b) / u

and the achirality, homeomorphism and commensurability questions are decided
through the class of Q_phi in C(D).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import genus, intarith, qform
from .errors import ConsistencyError, DomainError
from .mat2 import IDENTITY, W, Mat2, parse_matrix  # noqa: F401
from .qform import QForm


@dataclass(frozen=True)
class DiscriminantData:
    u: int
    D: int
    form: QForm


@dataclass(frozen=True)
class TorusBundle:
    phi: Mat2

    def __post_init__(self):
        check_anosov(self.phi)

    @property
    def orientable(self) -> bool:
        return self.phi.det == 1


@dataclass(frozen=True)
class SemiBundle:
    psi: Mat2

    def __post_init__(self):
        p = self.psi
        if p.det != 1 or p.a * p.b * p.c * p.d == 0:
            raise DomainError(f"semi-bundle gluing map needs det 1 and abcd != 0, got {p}")


def is_anosov(phi: Mat2) -> bool:
    t = phi.trace
    return abs(t) > 2 if phi.det == 1 else t != 0


def check_anosov(phi: Mat2) -> None:
    if not is_anosov(phi):
        raise DomainError(f"{phi} is not Anosov")


def _invariants(phi: Mat2) -> DiscriminantData:
    check_anosov(phi)
    a, b, c, d = phi.a, phi.b, phi.c, phi.d
    t = a + d
    u = math.gcd(b, c, d - a) * (1 if t > 0 else -1)
    D = (t * t - 4 * phi.det) // (u * u)
    return DiscriminantData(u, D, QForm(c // u, (d - a) // u, -b // u))


def discriminant_of(phi: Mat2) -> DiscriminantData:
    """u, D_phi and Q_phi of an orientable Anosov monodromy."""
    if phi.det != 1:
        raise DomainError(f"{phi} has determinant -1; orientable monodromy expected")
    return _invariants(phi)


def bundle_discriminant(phi: Mat2) -> int:
    """D of M_phi, or of its orientation double cover M_{phi^2} when det = -1.

    Both give (tr^2 - 4 det)/u^2 since phi and phi^2 share fixed points.
    """
    return _invariants(phi).D


def qform_of(phi: Mat2) -> QForm:
    return _invariants(phi).form


def _principal_pair(D: int):
    P = qform.principal_form(D)
    return qform.class_of(P), qform.class_of(qform.negate(P))


def is_achiral_bundle(phi: Mat2) -> bool:
    """Achirality of the oriented bundle M_phi:
    [Q0] = [-Q0] or 2[Q_phi] = [-Q0] in C(D_phi)."""
    data = discriminant_of(phi)
    zero, minus = _principal_pair(data.D)
    if zero == minus:
        return True
    return qform.class_of(qform.compose(data.form, data.form)) == minus


def _commuting_scan(phi: Mat2, target: Mat2, det: int, bound: int):
    """All A with entries in [-bound, bound], phi A = A target, det A = det.

    Two of the four linear conditions determine the second column of A from
    its first once target has c != 0, so only (A11, A21) is scanned.
    """
    a, b, c, d = phi.a, phi.b, phi.c, phi.d
    a2, b2, c2, d2 = target.a, target.b, target.c, target.d
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    x, y = np.meshgrid(r, r, indexing="ij")
    x, y = x.ravel(), y.ravel()
    # A = [[x, z], [y, w]]; entry (2,1) of phi A = A target:
    #   c x + d y = y a2 + w c2  ->  w = (c x + (d - a2) y) / c2
    # entry (1,1): a x + b y = x a2 + z c2 -> z = ((a - a2) x + b y) / c2
    zn = (a - a2) * x + b * y
    wn = c * x + (d - a2) * y
    ok = (zn % c2 == 0) & (wn % c2 == 0)
    x, y, z, w = x[ok], y[ok], zn[ok] // c2, wn[ok] // c2
    ok = (np.abs(z) <= bound) & (np.abs(w) <= bound) & (x * w - z * y == det)
    x, y, z, w = x[ok], y[ok], z[ok], w[ok]
    # remaining two entries of the matrix identity
    ok = (a * z + b * w == x * b2 + z * d2) & (c * z + d * w == y * b2 + w * d2)
    return [Mat2(int(p), int(q), int(s), int(t)) for p, q, s, t in zip(x[ok], z[ok], y[ok], w[ok])]


def achirality_witnesses(phi: Mat2, bound: int):
    """Matrices A with entries in [-bound, bound] and either
    phi A = A phi with det A = -1, or phi A = A phi^-1 with det A = 1."""
    if phi.det != 1:
        raise DomainError(f"{phi} has determinant -1; orientable monodromy expected")
    check_anosov(phi)
    return _commuting_scan(phi, phi, -1, bound) + _commuting_scan(phi, phi.inverse(), 1, bound)


def is_achiral_bundle_oracle(phi: Mat2, bound: int) -> bool:
    """Bounded search for an orientation-reversing symmetry of M_phi."""
    return bool(achirality_witnesses(phi, bound))


def _sl2_conjugate(phi: Mat2, psi: Mat2) -> bool:
    """SL2(Z)-conjugacy of two Anosov matrices of equal determinant.

    A matrix is recovered from its trace and its form, so conjugacy is equal
    trace plus equal class of the forms.
    """
    if phi.det != psi.det or phi.trace != psi.trace:
        return False
    f, g = qform_of(phi), qform_of(psi)
    return f.disc == g.disc and qform.class_of(f) == qform.class_of(g)


def sl2_conjugator(phi: Mat2, psi: Mat2, bound: int):
    """Brute-force search for A in SL2(Z), entries <= bound, with A psi A^-1 = phi."""
    found = _commuting_scan(phi, psi, 1, bound)
    return found[0] if found else None


def oriented_homeomorphic(phi1: Mat2, phi2: Mat2) -> bool:
    """M_phi1 and M_phi2 are homeomorphic as oriented manifolds."""
    for p in (phi1, phi2):
        if p.det != 1:
            raise DomainError(f"{p} is not orientable")
        check_anosov(p)
    return _sl2_conjugate(phi1, phi2) or _sl2_conjugate(phi1, W @ phi2.inverse() @ W)


def unoriented_homeomorphic(phi1: Mat2, phi2: Mat2) -> bool:
    """phi2 or phi2^-1 is GL2(Z)-conjugate to phi1."""
    check_anosov(phi1)
    check_anosov(phi2)
    inv = phi2.inverse()
    return any(_sl2_conjugate(phi1, m) for m in (phi2, inv, W @ phi2 @ W, W @ inv @ W))


def commensurable(phi1: Mat2, phi2: Mat2) -> bool:
    f1 = intarith.fundamental_discriminant(bundle_discriminant(phi1))
    f2 = intarith.fundamental_discriminant(bundle_discriminant(phi2))
    return f1 == f2


def from_form_and_trace(Q: QForm, trace: int) -> Mat2:
    """The unique det-one phi with Q_phi = Q and tr phi = trace, if integral."""
    D = Q.disc
    num = trace * trace - 4
    if num <= 0 or num % D or not intarith.is_square(num // D):
        raise DomainError(f"trace {trace} is incompatible with discriminant {D}")
    s = math.isqrt(num // D)
    sgn = 1 if trace > 0 else -1
    t = abs(trace)
    if (t + Q.beta * s) % 2:
        raise DomainError(f"trace {trace} is incompatible with {Q}")
    return Mat2(
        sgn * (t - Q.beta * s) // 2,
        -sgn * Q.gamma * s,
        sgn * Q.alpha * s,
        sgn * (t + Q.beta * s) // 2,
    )


# -- constructions -------------------------------------------------------


def _validated(phi: Mat2, D: int, det: int) -> Mat2:
    if phi.det != det or not is_anosov(phi) or bundle_discriminant(phi) != D:
        raise ConsistencyError(f"constructed {phi} does not have det {det} and D = {D}")
    return phi


def realize_discriminant(D: int) -> Mat2:
    """An orientable Anosov phi with D_phi = D, built from the least solution
    of the appropriate x^2 - d y^2 = 1."""
    intarith.check_discriminant(D)
    if D % 4 == 0:
        sol = intarith.pell(D // 4, "plus1")
        w, v = sol.x, sol.y
        phi = Mat2(w, D // 4 * v, v, w)
    else:
        sol = intarith.pell(D, "plus1")
        w, v = sol.x, sol.y
        phi = Mat2(w - v, (D - 1) // 2 * v, 2 * v, w + v)
    return _validated(phi, D, 1)


def nonorientable_bundle_for(D: int):
    """A det -1 monodromy psi with D_psi = D, or None when x^2 - D y^2 = -4
    has no solution."""
    intarith.check_discriminant(D)
    if D % 4 == 0:
        sol = intarith.pell(D // 4, "minus1")
        if not sol.solvable:
            return None
        u, v = sol.x, sol.y
        psi = Mat2(u, D // 4 * v, v, u)
    else:
        sol = intarith.pell(D, "minus1")
        if not sol.solvable:
            return None
        u, v = sol.x, sol.y
        psi = Mat2(u - v, (D - 1) // 2 * v, 2 * v, u + v)
    return _validated(psi, D, -1)


def semibundle_double_cover(psi: Mat2, alternate: bool = False) -> Mat2:
    """Monodromy of the torus bundle doubly covering N_psi.

    The default is [[2bc+1, 2ab], [2cd, 2bc+1]].  ``alternate=True`` gives
    [[2bc+1, 2bd], [2ac, 2bc+1]], the other form in circulation; both have
    the same trace and discriminant.
    """
    sb = SemiBundle(psi) if not isinstance(psi, SemiBundle) else psi
    a, b, c, d = sb.psi.a, sb.psi.b, sb.psi.c, sb.psi.d
    e = 2 * b * c + 1
    if alternate:
        return Mat2(e, 2 * b * d, 2 * a * c, e)
    return Mat2(e, 2 * a * b, 2 * c * d, e)


def semibundle_cover_discriminant(psi: Mat2) -> int:
    """4abcd / gcd(ac, bd)^2, the discriminant of the double cover."""
    a, b, c, d = psi.a, psi.b, psi.c, psi.d
    g = math.gcd(a * c, b * d)
    return 4 * a * b * c * d // (g * g)


def is_achiral_semibundle(psi: Mat2) -> bool:
    SemiBundle(psi)
    return psi.a + psi.d == 0


@dataclass(frozen=True)
class AchiralSemiBundle:
    psi: Mat2
    cover_discriminant: int
    D: int

    @property
    def cover_case(self) -> str:
        return "D" if self.cover_discriminant == self.D else "4D"


def achiral_semibundle_for(D: int):
    """A trace-zero semi-bundle whose double cover has discriminant D or 4D,
    or None if x^2 - D y^2 = -4 is unsolvable."""
    intarith.check_discriminant(D)
    if D % 4 == 0:
        sol = intarith.pell(D, "minus4")
        if not sol.solvable:
            return None
        a, b = sol.x // 2, sol.y
        psi = Mat2(a, b, -D * b // 4, -a)
    else:
        # an even-x solution (2a, b) of the -4 equation is (2u, 2v) with u^2 - D v^2 = -1
        sol = intarith.pell(D, "minus1")
        if not sol.solvable:
            return None
        a, b = sol.x, 2 * sol.y
        psi = Mat2(a, b // 2, -D * b // 2, -a)
    sb = SemiBundle(psi)
    cover = discriminant_of(semibundle_double_cover(sb.psi)).D
    if cover not in (D, 4 * D):
        raise ConsistencyError(f"double cover of {psi} has discriminant {cover}")
    return AchiralSemiBundle(psi, cover, D)


@dataclass(frozen=True)
class SemiBundleCover:
    covers: bool
    class_order: int
    mod2_identity: bool

    def __bool__(self):
        return self.covers


def double_covers_semibundle(phi: Mat2) -> SemiBundleCover:
    """Whether M_phi doubly covers a torus semi-bundle: 2[Q_phi] = 0 and
    phi = I mod 2.  Truthiness is the verdict; the fields are the evidence."""
    data = discriminant_of(phi)
    order = qform.class_order(data.form)
    mod2 = phi.mod2_is_identity()
    return SemiBundleCover(order <= 2 and mod2, order, mod2)


def class_contains_nonorientable(D_fund: int) -> bool:
    if not intarith.is_fundamental_discriminant(D_fund):
        raise DomainError(f"{D_fund!r} is not a fundamental discriminant")
    return intarith.pell(D_fund, "minus4").solvable


def semibundles_homeomorphic(psi1: Mat2, psi2: Mat2) -> bool:
    """psi2 = E psi1^{+-1} F for diagonal sign matrices E, F."""
    SemiBundle(psi1)
    SemiBundle(psi2)
    signs = [Mat2(s, 0, 0, t) for s in (1, -1) for t in (1, -1)]
    for base in (psi1, psi1.inverse()):
        for E in signs:
            for F in signs:
                if E @ base @ F == psi2:
                    return True
    return False


def achiral_class_of(phi: Mat2) -> bool:
    """Achirality of the commensurable class containing M_phi."""
    return genus.achiral_class(intarith.fundamental_discriminant(bundle_discriminant(phi)))
