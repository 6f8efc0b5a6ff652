import csv
import io
import json
import math

import pytest

from solchiral import genus, intarith, qform as qf, solman, survey as sv

from oracles import naive_fundamental


def test_enumerate_examples():
    assert sv.enumerate_fundamental_discriminants(10) == [5, 8]
    assert sv.enumerate_fundamental_discriminants(30) == [5, 8, 12, 13, 17, 21, 24, 28, 29]
    assert len(sv.enumerate_fundamental_discriminants(100)) == 30
    assert sv.enumerate_fundamental_discriminants(4) == []


def test_enumerate_matches_definition():
    got = sv.enumerate_fundamental_discriminants(5000)
    assert got == [D for D in range(1, 5000) if naive_fundamental(D)]
    assert sv.enumerate_fundamental_discriminants(5001)[-1] <= 5000


def test_rho():
    assert sv.rho(1) == pytest.approx(2 / 3)
    assert f"{sv.rho(1e-10):.5f}" == "0.41942"
    parts = sv.rho_partials(40)
    assert all(a > b for a, b in zip(parts, parts[1:]))
    # Euler: the same constant is prod over odd j of (1 - 2^-j)
    alt = math.prod(1 - 2.0**-j for j in range(1, 80, 2))
    assert sv.rho(1e-15) == pytest.approx(alt, rel=1e-12)


def test_sweep_small():
    records, report = sv.sweep(30)
    assert [r.D for r in records] == [5, 8, 12, 13, 17, 21, 24, 28, 29]
    assert {r.D for r in records if r.achiral_class} == {5, 8, 13, 17, 29}
    assert {r.D for r in records if r.nonorientable} == {5, 8, 13, 17, 29}
    assert report.n_fundamental == 9 and report.n_achiral == 5
    assert 0 <= report.frac_achiral_among_all <= 1
    assert report.rho_reference == pytest.approx(0.419422, abs=1e-6)


def test_shortcut_equals_full_pell():
    fast, _ = sv.sweep(20000)
    full, _ = sv.sweep(20000, sv.SweepOptions(full_pell=True))
    assert [(r.D, r.nonorientable) for r in fast] == [(r.D, r.nonorientable) for r in full]
    for r in full[:400]:
        assert r.nonorientable == intarith.pell(r.D, "minus4").solvable


def test_subset_invariant():
    records, _ = sv.sweep(50000, sv.SweepOptions(full_pell=True))
    assert all(r.achiral_class for r in records if r.nonorientable)


def test_class_numbers():
    records, _ = sv.sweep(200, sv.SweepOptions(class_numbers=True))
    for r in records:
        assert r.class_number == len(qf.class_group(r.D))


def test_cross_route_small():
    for D in sv.enumerate_fundamental_discriminants(2001):
        phi = solman.realize_discriminant(D)
        G = qf.class_group(D)
        minus = qf.class_of(qf.negate(qf.principal_form(D)))
        by_group = any(G.double(c) == minus for c in G)
        assert genus.achiral_class(D) == by_group
        assert solman.discriminant_of(phi).D == D


def test_determinism_and_jobs():
    a, _ = sv.sweep(3000)
    b, _ = sv.sweep(3000, sv.SweepOptions(jobs=2, chunk=97))
    assert sv.records_to_csv(a, timing=False) == sv.records_to_csv(b, timing=False)


def test_csv_and_json_schema():
    records, report = sv.sweep(30, sv.SweepOptions(class_numbers=True))
    text = sv.records_to_csv(records)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == list(sv.CSV_HEADER)
    assert rows[1][:4] == ["5", "1", "1", "1"]
    assert "\r" not in text
    text = sv.records_to_csv(sv.sweep(30)[0])
    assert list(csv.reader(io.StringIO(text)))[1][3] == ""
    payload = json.loads(sv.records_to_json(records, report))
    assert payload["report"]["n_fundamental"] == 9
    assert set(payload["report"]) >= {
        "X", "n_fundamental", "n_achiral", "n_nonorientable", "frac_fundamental",
        "frac_achiral_among_all", "frac_nonorientable_among_achiral", "rho_reference",
    }


def test_failures_are_recorded(monkeypatch):
    real = genus.achiral_class

    def flaky(D):
        if D == 13:
            raise RuntimeError("boom")
        return real(D)

    monkeypatch.setattr(genus, "achiral_class", flaky)
    records, report = sv.sweep(30)
    assert 13 not in [r.D for r in records]
    assert report.failures and report.failures[0][0] == 13
