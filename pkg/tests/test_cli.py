import csv
import io
import json
import subprocess
import sys

import pytest

from quiver_spectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(out):
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_spectrum_koenigsberg(capsys):
    code, out, _ = run(capsys, "spectrum", "--builtin", "koenigsberg")
    assert code == 0
    doc = json.loads(out)
    g = doc["result"]["graphs"][0]
    assert doc["config"]["builtin"] == ["koenigsberg"] and doc["config"]["tol"] == 1e-10
    assert [row["upper_theorem1"] for row in g["table"]] == [2, 6, 8, 8]
    assert g["ok"] and g["multiple_connections"]


def test_spectrum_bipartite_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--builtin", "bipartite:2,3", "--format", "csv")
    rows = table(out)
    assert code == 0
    assert [round(float(r["lambda"]), 9) for r in rows] == [0, 2, 2, 3, 5]
    assert [int(r["d"]) for r in rows] == [2, 2, 2, 3, 3]
    assert [int(r["upper_theorem1"]) for r in rows] == [2, 4, 4, 5, 6]


def test_spectrum_cycle4(capsys):
    code, out, _ = run(capsys, "spectrum", "--builtin", "cycle:4", "--format", "csv")
    assert [round(float(r["lambda"]), 9) for r in table(out)] == [0, 2, 2, 4]


def test_spectrum_svg_figure(capsys, tmp_path):
    target = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "spectrum", "--figure", "--format", "svg", "--seed", "3", "-o", str(target))
    svg = target.read_text()
    assert code == 0 and svg.count('viewBox="0 0 600 400"') == 9


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "4")
    res = json.loads(out)["result"]
    assert code == 0
    assert (res["total"], res["thm1_eq"], res["two_d_eq"]) == (38, 7, 3)


def test_census_suite(capsys):
    code, out, _ = run(capsys, "census", "--n", "4", "--suite", "--random", "10")
    assert code == 0 and json.loads(out)["result"]["theorem_suite"]["ok"]


def test_count_cycle6(capsys):
    code, out, _ = run(capsys, "count", "--builtin", "cycle:6")
    g = json.loads(out)["result"]["graphs"][0]
    assert code == 0 and g["trees_rooted"] == 36 and g["agree"]


def test_refine_trace(capsys):
    code, out, _ = run(capsys, "refine", "--builtin", "cycle:4", "--steps", "3", "--format", "csv")
    rows = table(out)
    assert code == 0 and [int(r["V"]) for r in rows] == [4, 8, 16, 32]
    assert list(rows[0]) == ["graph", "step", "V", "E", "log_tau_per_vertex", "U_minus1", "U0_pseudo"]


def test_potential(capsys):
    code, out, _ = run(capsys, "potential", "--builtin", "cycle:4", "--z", "-4", "-2", "-1", "-0.5")
    rows = json.loads(out)["result"]["graphs"][0]["rows"]
    assert code == 0 and all(r["holds_log2"] for r in rows)


def test_conjecture_flagged_but_exit_zero(capsys):
    code, out, err = run(capsys, "conjecture", "A", "--n-max", "4")
    assert code == 0
    assert json.loads(out)["result"]["counterexamples_found"]
    assert "COUNTEREXAMPLES" in err


def test_violation_exit_code(capsys, monkeypatch):
    from quiver_spectra import bounds

    real = bounds.check_theorem1

    def broken(q, spectrum=None, band=bounds.BAND, data=None):
        rep = real(q, spectrum, band, data)
        rep.violations.append(bounds.Violation("theorem1", 1, 1.0))
        return rep

    monkeypatch.setattr(bounds, "check_theorem1", broken)
    code, _, err = run(capsys, "spectrum", "--builtin", "path:3")
    assert code == 2 and "FAILED" in err


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.q"
    bad.write_text("n 3\n1 2\n2 9\n")
    code, _, err = run(capsys, "spectrum", "--input", str(bad))
    assert code == 1 and "bad.q:3:" in err
    code, _, err = run(capsys, "spectrum")
    assert code == 1
    code, _, err = run(capsys, "count", "--builtin", "gradient-example")
    assert code == 1 and "loop-free" in err
    code, _, _ = run(capsys, "census", "--n", "4", "--format", "svg")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--format", "xml"])
    assert exc.value.code == 2


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("QUIVER_SPECTRA_SEED", "42")
    _, a, _ = run(capsys, "conjecture", "C", "--sizes", "8", "--trials", "30")
    monkeypatch.delenv("QUIVER_SPECTRA_SEED")
    _, b, _ = run(capsys, "conjecture", "C", "--sizes", "8", "--trials", "30", "--seed", "42")
    assert a == b
    assert json.loads(a)["config"]["seed"] == 42


def test_byte_identical_subprocess(tmp_path):
    cmd = [sys.executable, "-m", "quiver_spectra", "spectrum", "--builtin", "random:9,0.4,5",
           "--builtin", "petersen", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"# config:")


def test_file_input(capsys, tmp_path):
    p = tmp_path / "gwh.q"
    p.write_text("n 4\n1 2\n2 4\n1 4\n2 3\n2 3\n")
    code, out, _ = run(capsys, "count", "--input", str(p), "--format", "csv")
    assert code == 0 and table(out)[0]["trees_rooted"] == "24"
