"""Truncated Shimizu L-series of an oriented Sol torus bundle.

The lattice orbits are taken under the row-vector action v -> v phi^T,
which preserves Q_phi.  |K_{n,phi}| is the number of such orbits on the level
set Q_phi = n, and the L-series coefficient is c_n = |K_n| - |K_{-n}|.

Each orbit is represented by its element minimising (x^2 + y^2, x, y).  Along
an orbit the squared norm is A mu^k + B mu^-k + C with mu > 1 and A, B > 0, a
strictly convex function of k, so a point beating both of its neighbours is
the orbit minimum.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import solman
from .errors import BoxInstabilityError, DomainError
from .mat2 import Mat2

WALK_LIMIT = 10_000


@dataclass(frozen=True)
class OrbitCountTable:
    phi: Mat2
    N: int
    counts: dict = field(repr=False)
    box_bound: int

    def __getitem__(self, n: int) -> int:
        if n == 0 or abs(n) > self.N:
            raise KeyError(n)
        return self.counts.get(n, 0)

    def coefficients(self) -> list:
        return [self[n] - self[-n] for n in range(1, self.N + 1)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "K_plus", "K_minus", "c_n"])
        for n in range(1, self.N + 1):
            w.writerow([n, self[n], self[-n], self[n] - self[-n]])
        return buf.getvalue()


def _oriented(phi: Mat2):
    data = solman.discriminant_of(phi)
    return data, phi.transpose()


def default_box_bound(phi: Mat2, N: int) -> int:
    """Sup-norm box certain to contain every orbit minimum with |Q| <= N.

    With Q = alpha (x - z1 y)(x - z2 y) and lam the dominant eigenvalue, some
    orbit element has both linear factors at most sqrt(|lam| N / |alpha|), so
    lies in the box of radius B0 below; the orbit minimum has Euclidean norm
    at most sqrt(2) B0.
    """
    data, _ = _oriented(phi)
    al, be, ga = data.form.coeffs()
    D = data.D
    t = abs(phi.trace)
    lam = (t + math.sqrt(t * t - 4)) / 2
    sd = math.sqrt(D)
    z1 = abs((-be + sd) / (2 * al))
    z2 = abs((-be - sd) / (2 * al))
    b0 = math.ceil(math.sqrt(N * abs(al) * lam / D) * max(z1 + z2, 2.0)) + 1
    return math.ceil(math.sqrt(2) * b0) + 1


def _level_points(form, N: int, B: int):
    """All (x, y) with |x|, |y| <= B and 0 < |Q(x, y)| <= N."""
    al, be, ga = form.coeffs()
    sgn = 1 if al > 0 else -1
    a, b, c = sgn * al, sgn * be, sgn * ga
    D = b * b - 4 * a * c
    y = np.arange(-B, B + 1, dtype=np.float64)
    # roots in x of a x^2 + b y x + c y^2 = +-N
    outer = np.sqrt(D * y * y + 4 * a * N)
    lo_out = np.floor((-b * y - outer) / (2 * a)) - 1
    hi_out = np.ceil((-b * y + outer) / (2 * a)) + 1
    inner_sq = D * y * y - 4 * a * N
    has_inner = inner_sq > 0
    inner = np.sqrt(np.where(has_inner, inner_sq, 0.0))
    lo_in = np.where(has_inner, np.ceil((-b * y - inner) / (2 * a)) + 1, hi_out + 1)
    hi_in = np.where(has_inner, np.floor((-b * y + inner) / (2 * a)) - 1, hi_out)
    lo_in = np.maximum(lo_in, lo_out)
    hi_in = np.minimum(hi_in, hi_out)
    # candidate runs: [lo_out, lo_in - 1] and [hi_in + 1, hi_out]
    starts = np.concatenate([lo_out, hi_in + 1])
    stops = np.concatenate([lo_in - 1, hi_out])
    ys = np.concatenate([y, y])
    starts = np.clip(starts, -B, B + 1)
    stops = np.clip(stops, -B - 1, B)
    lengths = np.maximum(stops - starts + 1, 0).astype(np.int64)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros((0, 2), dtype=np.int64)
    offsets = np.arange(total) - np.repeat(np.cumsum(lengths) - lengths, lengths)
    xs = np.repeat(starts.astype(np.int64), lengths) + offsets
    yy = np.repeat(ys.astype(np.int64), lengths)
    pts = np.stack([xs, yy], axis=1)
    pts = np.unique(pts, axis=0)
    q = al * pts[:, 0] ** 2 + be * pts[:, 0] * pts[:, 1] + ga * pts[:, 1] ** 2
    keep = (q != 0) & (np.abs(q) <= N)
    return pts[keep]


def _less(p, q):
    """Row-wise lexicographic (norm^2, x, y) comparison p < q."""
    np_, nq = (p * p).sum(axis=1), (q * q).sum(axis=1)
    return (np_ < nq) | (
        (np_ == nq) & ((p[:, 0] < q[:, 0]) | ((p[:, 0] == q[:, 0]) & (p[:, 1] < q[:, 1])))
    )


def _orbit_minima(pts, M: Mat2):
    fwd = np.array(M.rows(), dtype=pts.dtype)
    bwd = np.array(M.inverse().rows(), dtype=pts.dtype)
    return _less(pts, pts @ fwd) & _less(pts, pts @ bwd)


def _count(phi: Mat2, N: int, B: int) -> dict:
    data, M = _oriented(phi)
    pts = _level_points(data.form, N, B)
    big = max(abs(v) for v in (M.a, M.b, M.c, M.d))
    if (B * 2 * big) ** 2 * 2 > 2**62:
        pts = pts.astype(object)
    pts = pts[_orbit_minima(pts, M)]
    al, be, ga = data.form.coeffs()
    q = al * pts[:, 0] ** 2 + be * pts[:, 0] * pts[:, 1] + ga * pts[:, 1] ** 2
    vals, cnt = np.unique(q.astype(np.int64), return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, cnt)}


def orbit_counts(phi: Mat2, N: int, box_bound: int | None = None, check: bool = True) -> OrbitCountTable:
    """Orbit counts |K_{n,phi}| for 0 < |n| <= N.

    The box defaults to :func:`default_box_bound`.  With ``check`` the count is
    repeated in the doubled box and any change raises BoxInstabilityError.
    """
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"truncation must be a positive integer, got {N!r}")
    if phi.det != 1:
        raise DomainError(f"{phi} has determinant -1; orientable monodromy expected")
    solman.check_anosov(phi)
    B = box_bound if box_bound is not None else default_box_bound(phi, N)
    counts = _count(phi, N, B)
    if check:
        doubled = _count(phi, N, 2 * B)
        if doubled != counts:
            diff = sorted(n for n in set(counts) | set(doubled) if counts.get(n) != doubled.get(n))
            raise BoxInstabilityError(f"orbit counts for {phi} change between box {B} and {2 * B} at n = {diff[:10]}")
    return OrbitCountTable(phi, N, counts, B)


def l_coefficients(phi: Mat2, N: int, box_bound: int | None = None) -> list:
    """[c_1, ..., c_N]."""
    return orbit_counts(phi, N, box_bound).coefficients()


@dataclass(frozen=True)
class LValue:
    s: float
    N: int
    value: float

    def to_json(self) -> str:
        return json.dumps({"s": self.s, "N": self.N, "value": self.value})


def l_eval(phi: Mat2, s: float, N: int) -> LValue:
    """Partial sum of c_n / n^s for n <= N; no truncation error bound."""
    if not s > 1:
        raise DomainError(f"s must exceed 1, got {s!r}")
    coeffs = l_coefficients(phi, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    return LValue(float(s), N, float(np.sum(np.array(coeffs, dtype=np.float64) / n**s)))


def is_l_zero_upto(phi: Mat2, N: int) -> bool:
    """All c_n vanish for n <= N.

    Achiral bundles always pass; a chiral one has some c_n != 0, but only an
    unbounded N certifies it, so a pass at finite N is evidence, not proof.
    """
    return not any(l_coefficients(phi, N))


def canonical_representative(phi: Mat2, v, limit: int = WALK_LIMIT) -> tuple:
    """Orbit minimum of ``v`` found by walking v phi^T^k in the descending direction."""
    M = phi.transpose()
    fwd, bwd = M, M.inverse()

    def step(p, m):
        return (p[0] * m.a + p[1] * m.c, p[0] * m.b + p[1] * m.d)

    def key(p):
        return (p[0] * p[0] + p[1] * p[1], p[0], p[1])

    best = tuple(v)
    for m in (fwd, bwd):
        cur = best
        for _ in range(limit):
            nxt = step(cur, m)
            if key(nxt) >= key(cur):
                break
            cur = nxt
        else:
            raise RuntimeError(f"orbit walk from {v} did not settle in {limit} steps")
        if key(cur) < key(best):
            best = cur
    return best


def orbit_counts_by_walk(phi: Mat2, N: int, box_bound: int) -> dict:
    """Reference counts: walk every box solution to its orbit minimum and dedupe."""
    data = solman.discriminant_of(phi)
    Q = data.form
    reps = set()
    for x in range(-box_bound, box_bound + 1):
        for y in range(-box_bound, box_bound + 1):
            n = Q(x, y)
            if n and abs(n) <= N:
                reps.add((n, canonical_representative(phi, (x, y))))
    out: dict = {}
    for n, _ in reps:
        out[n] = out.get(n, 0) + 1
    return out
