from __future__ import annotations

import json
import shutil

import pytest

from sedgeo import golden
from sedgeo.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture
def golden_copy(tmp_path, monkeypatch):
    for name in golden.FILES:
        shutil.copy(golden.packaged_dir() / name, tmp_path / name)
    monkeypatch.setenv(golden.ENV_VAR, str(tmp_path))
    return tmp_path


def test_verify_table(capsys):
    code, out, _ = run(capsys, "zd", "verify-table")
    assert code == 0
    assert "84/84 matched" in out


def test_enumerate(capsys):
    code, doc = run_json(capsys, "zd", "enumerate")
    assert code == 0 and doc["details"]["count"] == 84


def test_annihilator(capsys):
    code, doc = run_json(capsys, "zd", "annihilator", "e1+e10")
    assert code == 0 and doc["details"]["dimension"] == 4
    code, doc = run_json(capsys, "zd", "annihilator", "e1", "--level", "3")
    assert code == 0 and doc["details"]["dimension"] == 0


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "zd", "annihilator", "e1+x")
    assert code == 2
    assert "position 2" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["curvature", "ricci", "--space", "Q"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["curvature", "sectional", "--r", "-1"])
    assert info.value.code == 2


def test_metric_command(capsys):
    code, out, _ = run(capsys, "curvature", "metric", "--origin", "(e4+e13,e6+e15)")
    assert code == 0
    assert "X3: 1/3" in out and "X13: 1/2" in out
    code, out, _ = run(capsys, "curvature", "metric", "--origin", "e1+e10")
    assert code == 0 and "X5: 2/3" in out


def test_metric_isotropy_mismatch(capsys):
    code, _, err = run(capsys, "curvature", "metric", "--origin", "e1+e12")
    assert code == 1 and "IsotropyMismatch" in err


def test_ricci_z(capsys):
    code, out, _ = run(capsys, "curvature", "ricci", "--space", "Z")
    assert code == 0
    assert "X3: 29/54" in out and "pipelines agree: True" in out


def test_ricci_einstein(capsys):
    code, doc = run_json(capsys, "curvature", "ricci", "--space", "ZD", "--r", "5/9")
    assert code == 0
    assert doc["details"]["einstein"] is True
    assert doc["details"]["einstein_constant"] == "25/6"


def test_ricci_symbolic(capsys):
    code, doc = run_json(capsys, "curvature", "ricci", "--space", "ZD")
    assert doc["details"]["scalar_curvature"] == "(50) + (-15/2) r"


def test_sectional_plane(capsys):
    code, doc = run_json(capsys, "curvature", "sectional", "--r", "4/9", "--plane", "3", "4")
    assert code == 0 and doc["details"]["planes"] == [[3, 4, "0"]]


def test_sectional_all_planes(capsys):
    code, doc = run_json(capsys, "curvature", "sectional", "--r", "2/3")
    assert len(doc["details"]["planes"]) == 55


def test_poly_emit(capsys, tmp_path):
    target = tmp_path / "fr.txt"
    code, out, _ = run(capsys, "curvature", "poly", "--emit", str(target))
    assert code == 0 and "285 monomials matched" in out
    body = golden.data_lines(target.read_text())
    assert body == golden.data_lines(golden.read_text("fr_poly.txt"))


def test_poly_detects_corrupted_reference(capsys, golden_copy):
    path = golden_copy / "fr_poly.txt"
    path.write_text(path.read_text().replace("0 0 12 12: (1) + (-9/4) r", "0 0 12 12: (1) + (-2) r"))
    code, doc = run_json(capsys, "curvature", "poly")
    assert code == 1 and doc["details"]["first_difference"] == [0, 0, 12, 12]


@pytest.mark.parametrize("cert", ["0", "4/9"])
def test_sos_verify(capsys, cert):
    code, doc = run_json(capsys, "sos", "verify", "--cert", cert)
    assert code == 0 and doc["details"]["identity"] and doc["details"]["verdict"]["psd"]


def test_sos_verify_fault_injected(capsys, golden_copy):
    # move (39,69) from the -2 set to the -1 set and (1,11) the other way: counts are kept
    path = golden_copy / "cert_r0.txt"
    lines = path.read_text().splitlines()
    out = []
    for line in lines:
        if line.startswith("R0 -2:"):
            line = line.replace("(39,69)", "(1,11)")
        elif line.startswith("R0 -1:"):
            line = line.replace("(1,11)", "(39,69)")
        out.append(line)
    path.write_text("\n".join(out) + "\n")
    code, doc = run_json(capsys, "sos", "verify", "--cert", "0")
    assert code == 1
    # positions 1 and 11 are x0*x12 and x1*x11
    assert doc["details"]["mismatch"]["monomial"] == [0, 1, 11, 12]
    assert doc["details"]["checksum_matches"] is False


def test_sos_interval(capsys):
    code, out, _ = run(capsys, "sos", "interval")
    assert code == 0 and "[0, 4/9]" in out


def test_sos_decompose(capsys, tmp_path):
    target = tmp_path / "squares.json"
    code, doc = run_json(capsys, "sos", "decompose", "--cert", "4/9", "--emit", str(target))
    assert code == 0 and doc["details"]["reexpands"]
    emitted = json.loads(target.read_text())
    assert len(emitted) == len(doc["details"]["squares"])


def test_deterministic_output(capsys):
    _, a = run_json(capsys, "curvature", "ricci", "--space", "ZD", "--r", "1/4")
    _, b = run_json(capsys, "curvature", "ricci", "--space", "ZD", "--r", "1/4")
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_reproduce_fails_on_corrupted_table(capsys, golden_copy):
    path = golden_copy / "table1.txt"
    path.write_text(path.read_text().replace("(e1+e10,e4-e15)", "(e1+e10,e4+e15)"))
    code, doc = run_json(capsys, "reproduce")
    assert code == 1
    status = {c["criterion"]: c["status"] for c in doc["details"]["criteria"]}
    assert status[1] == "fail"
    assert all(status[k] == "pass" for k in range(2, 12))
