import json
import subprocess
import sys

import pytest

from solchiral import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys):
    code, out, _ = run(["analyze", "1", "1", "1", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["D"] == 5 and data["achiral"] is True
    code, out, _ = run(["analyze", "2 3 1 2", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["D"] == 12 and data["achiral"] is False
    code, out, _ = run(["analyze", "1 2 2 3", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["orientable"] is False and data["double_cover"]["D"] == 5


def test_analyze_negative_entries(capsys):
    code, out, _ = run(["analyze", "-2", "-3", "-1", "-2", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["u"] == -1


def test_json_round_trip(capsys):
    for argv in (["analyze", "2 3 1 2"], ["classgroup", "136"], ["genus", "136"], ["pell", "61", "--kind", "plus1"]):
        code, out, _ = run(argv + ["--format", "json"], capsys)
        assert code == 0
        assert json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n" == out


def test_classify(capsys):
    _, out, _ = run(["classify", "2 3 1 2", "2 -3 -1 2", "--format", "json"], capsys)
    assert json.loads(out)["unoriented_homeomorphic"] is True
    _, out, _ = run(["classify", "1 1 1 2", "3 4 2 3", "--format", "json"], capsys)
    assert json.loads(out)["commensurable"] is False
    _, out, _ = run(["classify", "1 1 1 2", "2 1 1 1", "--format", "json"], capsys)
    assert json.loads(out)["oriented_homeomorphic"] is True


def test_formats(capsys):
    code, out, _ = run(["genus", "136", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("D,") and len(lines) == 2
    code, out, _ = run(["pell", "5"], capsys)
    assert "solvable: True" in out
    code, out, _ = run(["shimizu", "2 3 1 2", "-N", "4", "--format", "csv"], capsys)
    assert out.splitlines()[0] == "n,K_plus,K_minus,c_n"
    code, out, _ = run(["shimizu", "2 3 1 2", "-N", "10", "--s", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert data["l_value"]["N"] == 10 and data["zero_upto_N"] is False


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["analyze", "1 x 1 2"], 1),
        (["analyze", "1 2 3"], 1),
        (["nonsense"], 1),
        (["pell", "five"], 1),
        (["analyze", "1 1 0 1"], 2),
        (["analyze", "2 0 0 1"], 2),
        (["classgroup", "16"], 2),
        (["pell", "9"], 2),
        (["sweep", "--max", "3"], 2),
        (["sweep", "--max", "30", "--out", "/nonexistent/dir/x.csv"], 3),
        (["pell", "5"], 0),
    ],
)
def test_exit_codes(argv, expected, capsys):
    code, _, _ = run(argv, capsys)
    assert code == expected


def test_sweep(tmp_path, capsys):
    out = tmp_path / "s.csv"
    rep = tmp_path / "r.json"
    code, _, _ = run(["sweep", "--max", "30", "--out", str(out), "--report", str(rep)], capsys)
    assert code == 0
    assert len(out.read_text().splitlines()) == 10
    assert json.loads(rep.read_text())["rho_reference"] == pytest.approx(0.41942, abs=5e-6)
    code, _, _ = run(["sweep", "--max", "30", "--format", "json", "--out", str(tmp_path / "s.json")], capsys)
    payload = json.loads((tmp_path / "s.json").read_text())
    assert f"{payload['report']['rho_reference']:.5f}" == "0.41942"
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(["sweep", "--max", "2000", "--no-timing", "--out", str(a)], capsys)
    run(["sweep", "--max", "2000", "--no-timing", "--out", str(b), "--jobs", "2"], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "solchiral", "pell", "13", "--format", "json"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["x"] == 3
    res = subprocess.run([sys.executable, "-m", "solchiral", "analyze", "1 0 0 1"], capture_output=True, text=True)
    assert res.returncode == 2 and "Anosov" in res.stderr
