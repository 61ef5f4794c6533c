from __future__ import annotations

import json
import shutil

import pytest

from adeh.acceptance import negative_control_tau
from adeh.cli import main
from adeh.golden import default_dir


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_a2(capsys):
    code, out, _ = run(capsys, "roots", "--type", "A2")
    data = json.loads(out)
    assert code == 0
    assert (data["rank"], data["root_count"], data["h"]) == (2, 6, 3)
    assert data["exponents"] == [1, 2]
    assert [o["size"] for o in data["orbits"]] == [3, 3]


def test_roots_e8_table(capsys):
    code, out, _ = run(capsys, "roots", "--type", "E8", "--format", "table")
    assert code == 0
    assert "240 roots, h = 30" in out


@pytest.mark.parametrize("t", ["B3", "A0", "D3", "E9", "x"])
def test_bad_type(capsys, t):
    code, _, err = run(capsys, "roots", "--type", t)
    assert code == 2
    assert "usage" in err


def test_coeffs_d4(capsys):
    code, out, _ = run(capsys, "coeffs", "--type", "D4")
    data = json.loads(out)
    assert code == 0
    assert [r["decimal"] for r in data["g"]] == ["0.5", "4.5", "4.5", "4.5"]
    assert data["sum_g"] == "14"


def test_coeffs_e7_digits(capsys):
    code, out, _ = run(capsys, "coeffs", "--type", "E7", "--digits", "12")
    data = json.loads(out)
    assert data["g"][2]["decimal"] == "1.5"
    assert all(len(r["decimal"].replace(".", "").lstrip("0")) <= 12 for r in data["g"])
    assert data["sum_g"] == "399/2"


def test_coeffs_a6_sum(capsys):
    _, out, _ = run(capsys, "coeffs", "--type", "A6")
    assert json.loads(out)["sum_g"] == "28"


def test_digits_out_of_range(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["coeffs", "--type", "A2", "--digits", "60"])
    assert exc.value.code == 2


def test_hirota_a1(capsys):
    code, out, err = run(capsys, "hirota", "--type", "A1", "--max-weight", "0")
    assert code == 0
    assert json.loads(out)["counts_by_weight"] == {"0": 0}
    assert "weight-0 identity: satisfied" in err
    code, out, _ = run(capsys, "hirota", "--type", "A1", "--max-weight", "6")
    assert code == 0
    assert json.loads(out)["variables"] == [[1], [3], [5]]


def test_hirota_out_file(capsys, tmp_path):
    path = tmp_path / "a2.json"
    code, out, _ = run(capsys, "hirota", "--type", "A2", "--max-weight", "3", "--out", str(path))
    assert code == 0
    assert "equations per weight" in out
    assert json.loads(path.read_text())["type"] == "A2"


def test_hirota_deterministic(capsys):
    _, a, _ = run(capsys, "hirota", "--type", "D4", "--max-weight", "3")
    _, b, _ = run(capsys, "hirota", "--type", "D4", "--max-weight", "3")
    assert a == b


def _write(tmp_path, data):
    path = tmp_path / "tau.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_check_phi_one_e6(capsys, tmp_path):
    tau = _write(tmp_path, {"truncation_weight": 3, "coeffs": [{"monomial": [], "hbar_poly": [["1", 0]]}]})
    code, out, _ = run(capsys, "check", "--type", "E6", "--max-weight", "3", "--tau", tau)
    assert code == 0
    assert json.loads(out)["satisfied"] is True


def test_check_perturbed_a1(capsys, tmp_path):
    tau = _write(tmp_path, negative_control_tau(4).to_json())
    code, out, _ = run(capsys, "check", "--type", "A1", "--max-weight", "4", "--tau", tau)
    data = json.loads(out)
    assert code == 1
    assert data["residuals"]


def test_check_truncation_too_small(capsys, tmp_path):
    tau = _write(tmp_path, {"truncation_weight": 2, "coeffs": [{"monomial": [], "hbar_poly": [["1", 0]]}]})
    code, _, err = run(capsys, "check", "--type", "A1", "--max-weight", "4", "--tau", tau)
    assert code == 2
    assert "requires truncation >= 4" in err


def test_check_bad_file(capsys, tmp_path):
    path = tmp_path / "tau.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "check", "--type", "A1", "--tau", str(path))
    assert code == 2
    code, _, _ = run(capsys, "check", "--type", "A1", "--tau", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_a3(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A3")
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_verify_altered_golden(capsys, tmp_path):
    golden = tmp_path / "golden"
    shutil.copytree(default_dir(), golden)
    path = golden / "E8.json"
    data = json.loads(path.read_text())
    data["g"][0] = data["g"][1]
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--type", "E8", "--golden", str(golden), "--format", "json")
    report = json.loads(out)
    failed = [c for c in report["checks"] if not c["passed"]]
    assert code == 1
    assert report["failures"] == 1
    assert [(c["type"], c["name"]) for c in failed] == [("E8", "golden table")]


def test_verify_missing_golden_dir(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--type", "A2", "--golden", str(tmp_path / "none"))
    assert code == 2
