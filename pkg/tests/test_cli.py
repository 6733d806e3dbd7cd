import csv
import io
import json
import math

import numpy as np
import pytest

from paley_hankel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def run_csv(capsys, *argv):
    code, out, err = run(capsys, *argv, "--csv")
    return code, list(csv.DictReader(io.StringIO(out)))


def test_norm_paley_example(capsys):
    code, out = run_json(capsys, "norm", "--set", "0,1,3,7", "--v", "1,1,1,1")
    assert code == 0
    assert out["schema"] == 1
    assert out["agree"] is True
    assert out["norm_power"] == pytest.approx(out["norm_oracle"], abs=1e-8)
    assert out["norm"] <= out["fold_bound"]
    assert out["fold_bound"] == pytest.approx(4.0)
    assert out["paley_row_bound"] == pytest.approx(6.0)
    assert out["tol"] == 1e-10


def test_norm_from_rule_and_c(capsys):
    c = ",".join(str(1 / math.sqrt(j + 1)) for j in range(5))
    code, out = run_json(capsys, "norm", "--set-rule", "2^j-1", "--terms", "5", "--c", c)
    assert code == 0
    assert out["K"] == [0, 1, 3, 7, 15]
    assert out["norm"] == pytest.approx(1, abs=1e-9)


def test_norm_symbol_and_matrix_dump(capsys, tmp_path):
    dump = tmp_path / "H.csv"
    code, out = run_json(capsys, "norm", "--a", "0,1", "--method", "oracle", "--dump-matrix", str(dump))
    assert code == 0 and out["norm"] == pytest.approx(1)
    assert np.loadtxt(dump, delimiter=",").tolist() == [[0, 1], [1, 0]]


def test_norm_operator_file(capsys, tmp_path):
    f = tmp_path / "op.json"
    f.write_text(json.dumps({"K": [0, 1, 3], "v": [0.5, 0.5, 0.5]}))
    code, out = run_json(capsys, "norm", "--operator", str(f), "--method", "power")
    assert code == 0 and "norm_oracle" not in out


def test_norm_csv(capsys):
    code, rows = run_csv(capsys, "norm", "--a", "1")
    assert code == 0
    values = {r["key"]: r["value"] for r in rows}
    assert float(values["norm"]) == pytest.approx(1.0)


def test_certify_c_path(capsys):
    code, out = run_json(capsys, "certify", "--set", "0,1,3,7", "--c", "0.5,0.5,0.5,0.5")
    assert code == 0
    assert out["ok"] is True and out["T"] == 1 and out["method"] == "fold"


@pytest.mark.parametrize("method", ["geometric", "asymmetric", "fold", "paley"])
def test_certify_methods(capsys, method):
    code, out = run_json(capsys, "certify", "--set", "0,1,3,7", "--v", "0.5,0.4,0.3,0.2", "--method", method)
    assert code == 0 and out["ok"] is True


def test_certify_csv_and_factors(capsys, tmp_path):
    code, rows = run_csv(capsys, "certify", "--a", "1,2,1")
    assert code == 0 and len(rows) == 3 and set(rows[0]) == {"n", "u", "w"}
    prefix = tmp_path / "pf"
    code, out = run_json(capsys, "certify", "--set", "0,1,3", "--v", "1,1,1", "--method", "paley", "--dump-factors", str(prefix))
    assert code == 0
    B = np.loadtxt(f"{prefix}_B.csv", delimiter=",")
    C = np.loadtxt(f"{prefix}_C.csv", delimiter=",")
    np.testing.assert_array_equal(C, B.T)


def test_certify_failure_exit_two(capsys):
    code, out = run_json(capsys, "certify", "--a", "0,1", "--T", "0.5")
    assert code == 2 and out["ok"] is False
    code, out = run_json(capsys, "certify", "--set", "0,1,3,7", "--v", "1,1,1,1", "--method", "fold", "--T", "1.0")
    assert code == 2 and out["ok"] is False


def test_fold_outputs(capsys):
    code, out = run_json(capsys, "fold", "--set", "0,1,5", "--v", "1,0.5,0.25", "--gap-value", "2")
    assert code == 0
    assert out["u"] == pytest.approx([1, 0.5, 2, 0.5, 0.125, 0.25])
    code, rows = run_csv(capsys, "fold", "--set", "0,1,5", "--v", "1,0.5,0.25")
    assert [r["in_fold"] for r in rows] == ["True", "True", "False", "False", "True", "True"]
    assert rows[2]["product"] == ""


def test_refold_outputs(capsys):
    code, out = run_json(capsys, "refold", "--set", "0,1,3,7", "--v", "1,0.5,0.5,0.5")
    assert code == 0 and out["check"]["ok"] is True
    code, out = run_json(capsys, "refold", "--set", "0,1,3", "--v", "1,1,-1", "--sign", "minus", "--J", "1")
    assert code == 0 and out["U_o"] == [[1, 1.0, 0.0]] and "check" not in out
    code, rows = run_csv(capsys, "refold", "--set", "0,1", "--v", "1,2")
    assert rows == [{"poly": "U_e", "freq": "0", "re": "1.0", "im": "0.0"}, {"poly": "U_o", "freq": "1", "re": "2.0", "im": "0.0"}]


def test_multiplier(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("# indicator of {1,2,4,8}\n0\n1\n1\n0\n1\n0\n0\n0\n1\n")
    code, out = run_json(capsys, "multiplier", "--a", str(f))
    assert code == 0
    assert out["supsum2"] == 1 and out["sumsquaresum"] == 4 and out["finite_blocks"] == 4
    code, out = run_json(capsys, "multiplier", "--a", "0,0,1,1", "--check", "supdouble")
    assert out["value"] == 4 and out["supdouble_argmax_M"] == 2 and out["check"] == "supdouble"


def test_decompose(capsys):
    code, out = run_json(capsys, "decompose", "--set", "1,2,4,8")
    assert code == 0 and out["parts"] == [[1, 4], [2, 8]]
    code, rows = run_csv(capsys, "decompose", "--set", "1,3,7")
    assert [r["part"] for r in rows] == ["0", "0", "0"]


def test_sharpness(capsys, tmp_path):
    code, out = run_json(capsys, "sharpness", "--jmax", "3")
    assert code == 0 and out["failed"] == []
    for row in out["rows"]:
        J = row["J"]
        assert row["l2"] ** 2 == pytest.approx((J + 2) / (2 * J + 2), abs=1e-12)
        assert row["norm"] == pytest.approx(1, abs=1e-9)
    target = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sharpness", "--jmax", "100", "--csv", "--out", str(target), "--no-verify")
    rows = list(csv.DictReader(target.open()))
    assert list(rows[0]) == ["J", "l2", "norm", "ratio", "norm_verified"]
    assert len(rows) == 101 and float(rows[-1]["ratio"]) > 1.40


@pytest.mark.parametrize(
    "argv",
    [
        ["norm", "--set", "0,1", "--v", "1,1", "--bogus"],
        ["norm", "--v", "1"],
        ["norm", "--set-rule", "2^j-1", "--v", "1"],
        ["fold", "--set", "0,1,2", "--v", "1,1,1"],
        ["multiplier", "--a", "/no/such/file,x"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as e:
        code = main(argv)
        raise SystemExit(code)
    assert e.value.code == 1
