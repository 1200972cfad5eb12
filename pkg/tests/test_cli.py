import json

import pytest

from haarsym.cli import main


def test_wg_table_output(capsys, tmp_path):
    out = tmp_path / "table.json"
    assert main(["wg", "--group", "unitary", "--degree", "2", "--size", "4",
                 "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "wrote" in text
    data = json.loads(out.read_text())
    assert data["series"] == "unitary"
    assert data["k"] == 2 and data["n"] == 4


def test_wg_cap_exit_code(capsys):
    assert main(["wg", "--group", "unitary", "--degree", "9", "--size", "20"]) == 2
    err = capsys.readouterr().err
    assert "cap" in err


def test_wg_regime_exit_code(capsys):
    assert main(["wg", "--group", "unitary", "--degree", "3", "--size", "2"]) == 2


def test_integrate_command(capsys, tmp_path):
    doc = {"group": "symplectic", "n": 2,
           "factors": [{"row": 1, "col": 1}, {"row": 3, "col": 3}]}
    path = tmp_path / "mono.json"
    path.write_text(json.dumps(doc))
    assert main(["integrate", str(path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == "1/4"


def test_sample_command(capsys, tmp_path):
    out = tmp_path / "draws.json"
    assert main(["sample", "--class", "CI:n=3", "--draws", "2", "--seed", "4",
                 "--json", str(out)]) == 0
    text = capsys.readouterr().out
    assert "defect" in text
    data = json.loads(out.read_text())
    assert data["class"] == "CI:n=3"
    assert len(data["matrices"]) == 2

    assert main(["sample", "--class", "nonsense"]) == 2


def test_verify_clt_command(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(["verify-clt", "--class", "BD:n=6", "--draws", "4096",
                 "--seed", "3", "--matrix", "shift-diag", "--json", str(out)])
    text = capsys.readouterr().out
    assert code == 0, text
    assert "verdict: pass" in text
    data = json.loads(out.read_text())
    assert data["class"] == "BD:n=6"
    assert data["all_ok"] is True


def test_verify_clt_spec_file(capsys, tmp_path):
    spec = tmp_path / "exp.toml"
    spec.write_text('class = "A:n=8"\ndraws = 2048\nseed = 1\n'
                    'matrices = ["shift-diag"]\n')
    code = main(["verify-clt", "--spec", str(spec)])
    text = capsys.readouterr().out
    assert code == 0, text
    assert "verdict: pass" in text


def test_sweep_command(capsys):
    assert main(["sweep", "--tag", "A", "--sizes", "2,3,4"]) == 0
    out = capsys.readouterr().out
    assert "A" in out


def test_rejects_conflicting_inputs(capsys):
    # verify-clt needs exactly one of --class / --spec
    assert main(["verify-clt"]) == 2


def test_bad_input_files_exit_cleanly(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": "unitary", "n": 3, "factors": [[1, 1]]}')
    assert main(["integrate", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err

    assert main(["integrate", str(tmp_path / "absent.json")]) == 2
    assert "error:" in capsys.readouterr().err

    assert main(["verify-clt", "--spec", str(tmp_path / "absent.toml")]) == 2
    assert "error:" in capsys.readouterr().err
