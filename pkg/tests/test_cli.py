import csv
import json
import math
import os

import pytest

from hyperladder import cli
from hyperladder.liealg import DEFAULT_TABLE
from hyperladder.verify import liealg_suite


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_liealg_ok_and_json_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify", "--suite", "liealg", "--json", str(a))[0] == 0
    assert run(capsys, "verify", "--suite", "liealg", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["version"] == 1 and data["suites"][0]["name"] == "liealg"
    chk = data["suites"][0]["checks"][0]
    assert set(chk) == {"id", "ref", "status", "detail"}


def test_verify_reps_reports_known_failures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "reps")
    assert code == 1
    assert "FAIL reps.homomorphism.parabolic_config" in out


def test_empty_selection(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "none")
    assert code == 0 and "no checks selected" in out


def test_corrupted_table_is_reported():
    bad = DEFAULT_TABLE.with_entry("Z", "A", {"B": -2})
    failing = [c.id for c in liealg_suite(table=bad) if not c.ok]
    assert failing and any(i.startswith("liealg.jacobi.") for i in failing)
    assert all(c.ok for c in liealg_suite())


def test_bad_flags_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "orbit", "--case", "elliptic", "--q0", "1", "--p0", "0", "--t-max", "1", "--steps", "1")[0] == 2
    assert run(capsys, "orbit", "--case", "elliptic", "--q0", "nan", "--p0", "0", "--t-max", "1")[0] == 2
    assert run(capsys, "ladder", "--case", "circle", "--algebra", "h1")[0] == 2


def _orbit(tmp_path, capsys, case, q0, p0, t_max, frame):
    out = tmp_path / f"{case}.csv"
    code, _, _ = run(capsys, "orbit", "--case", case, "--q0", str(q0), "--p0", str(p0),
                     "--t-max", str(t_max), "--steps", "2", "--frame", frame, "--out", str(out))
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["t", "q", "p"]
    return [float(v) for v in rows[-1]]


def test_orbit_examples(tmp_path, capsys):
    t, q, p = _orbit(tmp_path, capsys, "elliptic", 1, 0, math.pi / 2, "generator")
    assert abs(q) < 1e-12 and abs(p - 1) < 1e-12
    t, q, p = _orbit(tmp_path, capsys, "parabolic", 1, 1, 2, "subgroup")
    assert (q, p) == pytest.approx((3, 1), abs=1e-12)
    t, q, p = _orbit(tmp_path, capsys, "hyperbolic", 1, 1, math.log(2), "subgroup")
    assert (q, p) == pytest.approx((2, 0.5), abs=1e-12)


def test_orbit_stdout_and_outdir(tmp_path, capsys, monkeypatch):
    code, out, _ = run(capsys, "orbit", "--case", "hyperbolic", "--q0", "1", "--p0", "0",
                       "--t-max", "1", "--steps", "3")
    assert code == 0 and len(out.strip().splitlines()) == 4
    monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path))
    assert run(capsys, "orbit", "--case", "parabolic", "--q0", "1", "--p0", "0",
               "--t-max", "1", "--out", "rel.csv")[0] == 0
    assert (tmp_path / "rel.csv").exists()
    assert not [f for f in os.listdir(tmp_path) if f.endswith(".tmp")]


def test_ladder_command(capsys):
    code, out, _ = run(capsys, "ladder", "--case", "elliptic", "--algebra", "h1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["polynomial"] == "lambda**2 + 1 = 0"
    assert {s["lambda"] for s in data["solutions"]} == {"i", "-i"}
    code, out, _ = run(capsys, "ladder", "--case", "parabolic", "--algebra", "sp2")
    assert code == 0 and "lambda2" in out


def test_report(tmp_path, capsys):
    out = tmp_path / "r.md"
    assert run(capsys, "report", "--out", str(out), "--suite", "liealg")[0] == 0
    text = out.read_text()
    rows = [l for l in text.splitlines() if l.startswith("| `")]
    assert len(rows) >= 40
    assert "Lambda2 normalization" in text
    assert run(capsys, "report", "--out", str(tmp_path / "e.md"), "--suite", "none")[0] == 0
    assert "no checks selected" in (tmp_path / "e.md").read_text()


def test_report_unwritable(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run(capsys, "report", "--out", str(blocker / "r.md"), "--suite", "none")[0] == 2
