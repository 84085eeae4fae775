import json
import subprocess
import sys

import numpy as np
import pytest

from cobweb.cli import main
from cobweb.incidence import matrix_from_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fnomial_fibonacci(capsys):
    assert run(capsys, "fnomial", "5", "2", "--seq", "fibonacci") == (0, "15\n", "")


def test_flags_before_subcommand(capsys):
    assert run(capsys, "--seq", "fibonacci", "fnomial", "5", "2")[1] == "15\n"


def test_gaussian_param(capsys):
    # [4 choose 2]_2 = 35
    assert run(capsys, "fnomial", "4", "2", "--seq", "gaussian", "--q", "2")[1] == "35\n"
    assert run(capsys, "fnomial", "4", "2", "--seq", "gaussian:2")[1] == "35\n"


def test_sequence_file(tmp_path, capsys, monkeypatch):
    (tmp_path / "odd.txt").write_text("# odd numbers\n1\n3\n5\n7\n")
    monkeypatch.setenv("COBWEB_SEQ_DIR", str(tmp_path))
    code, out, _ = run(capsys, "fnomial", "3", "1", "--seq", "odd")
    assert code == 0 and out == "5\n"  # 1*3*5 / (1 * 1*3)


def test_usage_errors(capsys):
    assert run(capsys, "fnomial", "3", "1", "--seq", "nope")[0] == 2
    assert run(capsys, "zeta")[0] == 2
    assert run(capsys, "zeta", "3", "--cap", "0")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    capsys.readouterr()


def test_zeta_mobius_csv_multiply_to_identity(tmp_path, capsys):
    for seq in ("natural", "fibonacci", "gaussian:2", "constant:2"):
        z, m = tmp_path / "z.csv", tmp_path / "m.csv"
        assert main(["zeta", "4", "--seq", seq, "--format", "csv", "--out", str(z)]) == 0
        assert main(["mobius", "4", "--seq", seq, "--format", "csv", "--out", str(m)]) == 0
        Z, M = matrix_from_csv(z.read_text()), matrix_from_csv(m.read_text())
        prod = np.array([[sum(int(Z[i, k]) * int(M[k, j]) for k in range(len(Z))) for j in range(len(Z))]
                         for i in range(len(Z))])
        assert (prod == np.eye(len(Z), dtype=int)).all()


def test_scala_fibonacci(capsys):
    code, out, _ = run(capsys, "scala", "6", "--seq", "fibonacci")
    assert code == 0
    rows = out.splitlines()
    assert len(rows) == 1 + 1 + 2 + 3 + 5 + 8
    first_of_level5 = rows[1 + 1 + 2 + 3]
    cells = first_of_level5.split()
    assert cells[0] == "1" and cells[1:5] == ["0"] * 4 and cells[5] == "-"


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--seq", "natural", "--levels", "5")
    assert code == 0 and "FAIL" not in out and "checks passed" in out


def test_join_demo_reports_discrepancy(capsys):
    code, out, _ = run(capsys, "join-demo", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["derived"]) == 5


def test_tile_outputs(capsys):
    code, out, _ = run(capsys, "tile", "2", "3")
    assert code == 0 and "AAB\nCCB\n" in out
    code, out, _ = run(capsys, "tile", "2", "3", "--format", "json")
    assert len(json.loads(out)["tiles"]) == 3


def test_other_commands(capsys):
    assert run(capsys, "charpoly", "2", "--seq", "constant:2")[1].strip() == "t^2 - 2t + 2"
    assert run(capsys, "charpoly", "2")[1].strip() == "t^2 - t"
    for argv in (["whitney", "4"], ["chains", "2", "4"], ["realizer", "3"], ["structure", "3"],
                 ["admissible", "6", "--seq", "fibonacci"], ["hasse", "3", "--format", "dot"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and out


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "cobweb.cli", "scala", "5", "--seq", "fibonacci"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
