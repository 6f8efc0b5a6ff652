import json
import random

import pytest

from solchiral import shimizu as sh, solman as sm
from solchiral.errors import BoxInstabilityError, DomainError
from solchiral.mat2 import W, Mat2

from oracles import anosov_sl2

M = Mat2.of
MATS5 = [Mat2(*m) for m in anosov_sl2(5)]


def test_count_examples():
    t = sh.orbit_counts(M([[2, 3], [1, 2]]), 20)
    assert t[1] >= 1 and t[-1] == 0
    t = sh.orbit_counts(M([[1, 1], [1, 2]]), 50)
    assert all(t[n] == t[-n] for n in range(1, 51))
    # x^2 - 3y^2 is a square mod 3
    t = sh.orbit_counts(M([[2, 3], [1, 2]]), 40)
    assert all(t[n] == 0 for n in range(1, 41) if n % 3 == 2)
    assert all(t[-n] == 0 for n in range(1, 41) if n % 3 == 1)


@pytest.mark.parametrize(
    "phi",
    [M([[1, 1], [1, 2]]), M([[2, 3], [1, 2]]), M([[5, 8], [8, 13]]), M([[3, 2], [4, 3]]), M([[-5, 3], [-2, 1]]), M([[1, 4], [2, 9]])],
)
def test_counts_match_walk_oracle(phi):
    N = 30
    t = sh.orbit_counts(phi, N)
    # the reference walks every point of a box twice as large
    ref = sh.orbit_counts_by_walk(phi, N, 2 * t.box_bound)
    assert t.counts == ref


def test_canonical_representative_is_in_orbit():
    phi = M([[2, 3], [1, 2]])
    Mt = phi.transpose()
    rng = random.Random(0)
    for _ in range(50):
        v = (rng.randint(-40, 40), rng.randint(-40, 40))
        if v == (0, 0):
            continue
        r = sh.canonical_representative(phi, v)
        seen, p = set(), r
        for _ in range(60):
            seen.add(p)
            p = (p[0] * Mt.a + p[1] * Mt.c, p[0] * Mt.b + p[1] * Mt.d)
        p = r
        inv = Mt.inverse()
        for _ in range(60):
            seen.add(p)
            p = (p[0] * inv.a + p[1] * inv.c, p[0] * inv.b + p[1] * inv.d)
        assert tuple(v) in seen
        assert r[0] ** 2 + r[1] ** 2 <= v[0] ** 2 + v[1] ** 2


def test_box_instability_detected():
    with pytest.raises(BoxInstabilityError):
        sh.orbit_counts(M([[5, 8], [8, 13]]), 200, box_bound=2)


def test_errors():
    with pytest.raises(DomainError):
        sh.orbit_counts(M([[1, 1], [0, 1]]), 10)
    with pytest.raises(DomainError):
        sh.orbit_counts(M([[1, 2], [2, 3]]), 10)
    with pytest.raises(DomainError):
        sh.orbit_counts(M([[1, 1], [1, 2]]), 0)
    with pytest.raises(DomainError):
        sh.l_eval(M([[1, 1], [1, 2]]), 1.0, 10)


def test_coefficient_examples():
    assert not any(sh.l_coefficients(M([[1, 1], [1, 2]]), 100))
    assert sh.l_coefficients(M([[2, 3], [1, 2]]), 5)[0] > 0
    phi = M([[2, 3], [1, 2]])
    assert sh.l_coefficients(phi.inverse(), 60) == [-c for c in sh.l_coefficients(phi, 60)]


def test_l_eval():
    assert sh.l_eval(M([[1, 1], [1, 2]]), 2.0, 50).value == 0
    phi = M([[2, 3], [1, 2]])
    a = sh.l_eval(phi, 1.5, 80)
    assert a.value == sh.l_eval(-phi, 1.5, 80).value
    assert a.N == 80 and a.s == 1.5
    assert json.loads(a.to_json()) == {"s": 1.5, "N": 80, "value": a.value}
    coeffs = sh.l_coefficients(phi, 80)
    assert a.value == pytest.approx(sum(c / n**1.5 for n, c in enumerate(coeffs, 1)))
    # squaring doubles every orbit count, so the series doubles
    assert sh.l_eval(phi @ phi, 2.0, 80).value == pytest.approx(2 * sh.l_eval(phi, 2.0, 80).value)


def test_zero_test():
    assert sh.is_l_zero_upto(M([[1, 1], [1, 2]]), 200)
    assert not sh.is_l_zero_upto(M([[2, 3], [1, 2]]), 200)


def test_symmetries_sample():
    for phi in MATS5[::9]:
        c = sh.l_coefficients(phi, 120)
        neg = [-x for x in c]
        assert sh.l_coefficients(-phi, 120) == c
        assert sh.l_coefficients(phi.inverse(), 120) == neg
        assert sh.l_coefficients(W @ phi @ W, 120) == neg


def test_equal_series_means_homeomorphic():
    groups = {}
    for phi in MATS5:
        if sm.is_achiral_bundle(phi):
            continue
        key = (sm.discriminant_of(phi).D, tuple(sh.l_coefficients(phi, 200)))
        groups.setdefault(key, []).append(phi)
    checked = 0
    for members in groups.values():
        p = members[0]
        for q in members[1:]:
            assert sm.oriented_homeomorphic(p, q) or sm.oriented_homeomorphic(p, -q)
            checked += 1
    assert checked > 0


def test_csv_export():
    t = sh.orbit_counts(M([[2, 3], [1, 2]]), 4)
    lines = t.to_csv().splitlines()
    assert lines[0] == "n,K_plus,K_minus,c_n"
    assert len(lines) == 5
    n, kp, km, c = map(int, lines[1].split(","))
    assert (n, kp - km) == (1, c)
