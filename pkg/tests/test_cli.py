import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from ymsurf import cli
from ymsurf import geometry as geo


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_csv(capsys):
    code, out, err = run(capsys, "spectrum", "--algebra", "su2", "--count", "10", "--C-hat", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 11
    assert "\r\n" in out
    m0 = float(err.split("m0 = ")[1].split()[0])
    assert m0 > 0 and "ratio = " in err


def test_spectrum_json_schema(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "spectrum", "--algebra", "su3", "--count", "5", "--format", "json", "--out", str(target))
    assert code == 0 and "m0 = " in out
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert list(doc) == ["algebra", "C_hat", "model", "m0", "entries", "config_hash"]
    assert len(doc["config_hash"]) == 64
    for e in doc["entries"]:
        assert list(e) == ["n", "weight", "dim", "casimir", "H", "kappa", "m", "P", "ratio"]
        assert isinstance(e["n"], int) and isinstance(e["weight"], list)
        assert all(isinstance(e[k], float) for k in ("casimir", "H", "kappa", "m", "P", "ratio"))


def test_spectrum_abelian_exit_3(capsys):
    code, _, err = run(capsys, "spectrum", "--algebra", "u1")
    assert code == 3
    assert "spectrum unbounded construction unavailable" in err


@pytest.mark.parametrize("argv", [["--C-hat", "1.0"], ["--count", "0"], ["--eps-low", "2", "--eps-high", "1"],
                                  ["--algebra", "so5"], ["--format", "xml"]])
def test_spectrum_validation_exit_2(capsys, argv):
    assert run(capsys, "spectrum", *argv)[0] == 2


def test_config_file_and_flag_priority(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"algebra": "su3", "count": 4, "C-hat": 3.0}))
    _, out, _ = run(capsys, "spectrum", "--config", str(cfg), "--format", "json")
    doc = json.loads(out)
    assert doc["algebra"] == "su3" and len(doc["entries"]) == 4 and doc["C_hat"] == 3.0
    _, out, _ = run(capsys, "spectrum", "--config", str(cfg), "--count", "2", "--format", "json")
    doc = json.loads(out)
    assert len(doc["entries"]) == 2


def test_verify_liealg(capsys):
    code, out, _ = run(capsys, "verify", "liealg", "--seed", "1")
    assert code == 0
    assert any(l.startswith("PASS") and "Gell-Mann commutator table" in l for l in out.splitlines())
    assert out.splitlines()[1].startswith("config ")


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "geometry", "--seed", "42")[1]
    b = run(capsys, "verify", "geometry", "--seed", "42")[1]
    assert a == b
    c = run(capsys, "verify", "geometry", "--seed", "43")[1]
    assert c.splitlines()[1] != a.splitlines()[1]


def test_verify_corrupted_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "liealg", "--seed", "42", "--tol-scale", "1e-30")
    assert code == 1
    assert any(l.startswith("FAIL") for l in out.splitlines())


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys, "verify", "liealg", "--tol-scale", "0")[0] == 2


def test_area_command(capsys, tmp_path):
    S = geo.unit_square_s0(2.0).transformed(geo.boost(1, 0.7) @ geo.rotation(2, 0.3), [1, 2, 3, 4])
    f = tmp_path / "s.json"
    f.write_text(json.dumps(S.to_dict()))
    code, out, _ = run(capsys, "area", str(f))
    doc = json.loads(out)
    assert code == 0 and doc["type"] == "spacelike"
    assert doc["rho_acute_abs"] == pytest.approx(4.0, rel=1e-9)
    T = geo.RectSurface(np.zeros(4), geo.E[0], geo.E[1])
    f.write_text(json.dumps(T.to_dict()))
    doc = json.loads(run(capsys, "area", str(f))[1])
    assert doc["rho_acute"]["re"] == pytest.approx(0, abs=1e-12) and doc["rho_acute"]["im"] == pytest.approx(1, abs=1e-12)
    f.write_text(json.dumps({"origin": [0, 0, 0, 0], "u": [1, 0, 1, 0], "v": [0, 0, 0, 1]}))
    assert run(capsys, "area", str(f))[0] == 3
    f.write_text("{not json")
    assert run(capsys, "area", str(f))[0] == 2


def _cluster_rows(out):
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    return rows[0], np.array(rows[1:], float)


def test_cluster_synthetic(capsys):
    code, out, _ = run(capsys, "cluster", "--synthetic", "--m0", "0.7", "--eps", "1", "--range", "5", "25")
    assert code == 0
    rate = float(out.split("rate=")[1].split()[0])
    assert rate == pytest.approx(0.7, rel=1e-6)


def test_cluster_bound_dominates(capsys):
    code, out, _ = run(capsys, "cluster", "--m0", "1.0", "--eps", "1", "--range", "10", "30")
    assert code == 0
    head, data = _cluster_rows(out)
    assert head == ["a_plus", "h12", "bound"]
    assert np.all(data[:, 1] <= data[:, 2])
    assert float(out.split("rate=")[1].split()[0]) == pytest.approx(1.0, rel=0.02)


def test_cluster_validation(capsys, tmp_path):
    assert run(capsys, "cluster", "--eps", "5", "--range", "5", "10")[0] == 2
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"A": [], "B": [{"center": [0, 0], "width": 1}]}))
    assert run(capsys, "cluster", "--clusters", str(f))[0] == 2


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "ymsurf.cli", "spectrum", "--algebra", "u1"],
                         capture_output=True, text=True)
    assert out.returncode == 3
