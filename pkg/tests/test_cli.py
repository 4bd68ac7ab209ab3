import csv
import io

import pytest

from numphase.cli import main


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def rows_of(text):
    return list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))


@pytest.mark.parametrize("text, cls, field, value", [
    ("dim 4\nc 2 1 0\n", "DEGENERATE", "delta_phi", 1.8137994),
    ("dim 2\nc 0 1 0\nc 1 -1 0\n", "RSUR_VALID", "abs_r_NPhi", 0.0),
    ("dim 2\nc 0 1 0\nc 1 1 0\n", "RSUR_INVALID", "abs_r_NPhi", 2.0),
])
def test_analyze(tmp_path, capsys, text, cls, field, value):
    spec = write(tmp_path, "s.txt", text)
    assert main(["analyze", str(spec)]) == 0
    out, err = capsys.readouterr()
    assert out.startswith("# normalization scale:")
    (row,) = rows_of(out)
    assert row["classification"] == cls
    assert float(row[field]) == pytest.approx(value, abs=1e-7)
    assert cls in err
    if cls == "DEGENERATE":
        assert "0 = 0" in err


def test_analyze_errors(tmp_path, capsys):
    assert main(["analyze", str(write(tmp_path, "bad.txt", "dim 2\nc 5 1 0"))]) == 1
    assert main(["analyze", str(write(tmp_path, "zero.txt", "dim 2"))]) == 1
    assert main(["analyze", str(tmp_path / "missing.txt")]) == 1


def test_eigen(capsys):
    assert main(["eigen", "--dim", "4"]) == 0
    rows = rows_of(capsys.readouterr().out)
    assert [r["energy"] for r in rows] == ["0.5", "1.5", "2.5", "3.5"]
    assert all(float(r["delta_phi"]) == pytest.approx(1.8137993642342178, abs=1e-10) for r in rows)


def test_sweep_to_file(tmp_path):
    cfg = write(tmp_path, "cfg.txt", "family=TWO_MODE\nmodes=0,1\ntheta_steps=4\nchi_steps=4\ndim=2\nseed=3\n")
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", str(cfg), "--out", str(out1)]) == 0
    assert main(["sweep", str(cfg), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    text = out1.read_text()
    assert len(rows_of(text)) == 16
    assert "# locus B<1e-08: (0.78539816339744828,3.1415926535897931)" in text


def test_sweep_bad_config(tmp_path):
    cfg = write(tmp_path, "cfg.txt", "theta_steps=1\n")
    assert main(["sweep", str(cfg)]) == 1


@pytest.mark.slow
def test_selftest_naive_marks_divergent(tmp_path):
    out = tmp_path / "n.csv"
    assert main(["selftest", "--naive-composition", "--out", str(out)]) == 0
    rows = rows_of(out.read_text())
    divergent = [r["check"] for r in rows if r["status"] == "EXPECTED-DIVERGENT"]
    assert any("boundary gap" in c for c in divergent)
    assert not any(r["status"] == "FAIL" for r in rows)


@pytest.mark.slow
def test_selftest_impossible_tolerance_fails(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["selftest", "--tol-eq", "1e-30", "--out", str(out)]) == 2
    rows = {r["check"]: r["status"] for r in rows_of(out.read_text())}
    assert rows["phase-wave normalization (200 states)"] == "FAIL"
