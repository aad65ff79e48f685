import json
import subprocess
import sys

import pytest

from k3vw.cli import main
from k3vw.parallel import ordered_map


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2
    return capsys.readouterr().err


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--n-max", "10", "--format", "csv")
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "n,a_n"
    assert lines[-1] == ""
    assert len(lines) - 2 == 12
    assert lines[1] == "-1,1" and lines[2] == "0,24"
    assert "\r" not in out


def test_invariant_json(capsys):
    code, out, _ = run(capsys, "invariant", "--family", "su_r", "--r", "2", "--n-min", "0", "--n-max", "2", "--format", "json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["n"] for r in recs] == [0, 1, 2]
    assert recs[2]["value"] == "30"
    assert recs[0]["value"] == "1/4"


def test_cyclotomic_serialisation(capsys):
    code, out, _ = run(capsys, "invariant", "--family", "su_p", "--p", "3", "--w-squared", "1", "--n-min", "1", "--n-max", "1", "--format", "json")
    rec = json.loads(out)
    v = rec["value"]
    assert set(v) == {"p", "coeffs", "approx_re", "approx_im", "precision"}
    assert v["p"] == 3 and v["coeffs"] == ["0", "216"]
    assert float(v["approx_re"]) == pytest.approx(108)
    assert rec["real"] is False


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "--n-min", "1", "--n-max", "5", "--terms", "100", "--precision", "256", "--format", "json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["rounded"] for r in recs] == ["324", "3200", "25650", "176256", "1073720"]
    assert all(r["status"] == "resolved" and r["precision"] == 256 for r in recs)


def test_exact_unresolved_exits_1(capsys):
    code, out, _ = run(capsys, "exact", "--n-min", "400", "--n-max", "400", "--terms", "1", "--precision", "64")
    assert code == 1
    assert "unresolved" in out


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("VW_PRECISION_BITS", "300")
    code, out, _ = run(capsys, "exact", "--n-min", "3", "--n-max", "3", "--format", "json")
    assert json.loads(out)["precision"] == 300


def test_asymp_fallback(capsys):
    code, out, _ = run(capsys, "asymp", "--family", "twisted", "--p", "2", "--rho", "22", "--n-min", "101", "--n-max", "101", "--format", "json")
    rec = json.loads(out)
    assert rec["case"] == "c_p=0" and rec["fallback_main_term"] is not None
    assert rec["relative_error"] is None


def test_turan_summary(capsys):
    code, out, _ = run(capsys, "turan", "--family", "su_r", "--r", "2", "--d", "4", "--n-min", "10", "--n-max", "200", "--format", "json")
    rec = json.loads(out)
    assert rec["first_hyperbolic_n"] == 10 and rec["failures"] == []


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["invariant", "--family", "su_r", "--p", "3", "--n-min", "0", "--n-max", "2"], "--p"),
        (["invariant", "--family", "su_r", "--n-min", "0", "--n-max", "2"], "--r"),
        (["invariant", "--family", "twisted", "--p", "4", "--rho", "3", "--n-min", "0", "--n-max", "2"], "--p"),
        (["invariant", "--family", "twisted", "--p", "3", "--rho", "23", "--n-min", "0", "--n-max", "2"], "--rho"),
        (["invariant", "--family", "su_p", "--p", "3", "--w-squared", "2", "--zero-class", "--n-min", "0", "--n-max", "2"], "--zero-class"),
        (["coeffs", "--n-min", "5", "--n-max", "2"], "--n-min"),
        (["exact", "--n-min", "0", "--n-max", "2"], "--n-min"),
        (["exact", "--n-max", "2", "--precision", "32"], "--precision"),
        (["exact", "--n-max", "2", "--terms", "0"], "--terms"),
        (["coeffs", "--n-max", "3", "--suite", "small"], "--suite"),
        (["verify", "--threads", "0"], "--threads"),
        (["turan", "--family", "su_r", "--r", "2", "--d", "2", "--n-max", "9", "--subsequence", "pn"], "--subsequence"),
        (["coeffs", "--n-max", "3", "--format", "xml"], "--format"),
    ],
)
def test_usage_errors_name_the_flag(capsys, argv, flag):
    err = usage_error(capsys, *argv)
    assert flag in err


def test_usage_error_leaves_no_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    usage_error(capsys, "invariant", "--family", "twisted", "--p", "4", "--rho", "2", "--n-min", "0", "--n-max", "1", "--output", str(target))
    assert not target.exists()
    assert list(tmp_path.iterdir()) == []


def test_output_file(tmp_path, capsys):
    target = tmp_path / "a.csv"
    code, out, _ = run(capsys, "coeffs", "--n-max", "3", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes() == b"n,a_n\n-1,1\n0,24\n1,324\n2,3200\n3,25650\n"


def test_worker_count_does_not_change_output(capsys):
    argv = ["invariant", "--family", "su_p", "--p", "5", "--w-squared", "1", "--n-min", "-1", "--n-max", "40", "--format", "json"]
    _, one, _ = run(capsys, *argv, "--threads", "1")
    _, three, _ = run(capsys, *argv, "--threads", "3")
    assert one == three
    argv = ["asymp", "--n-min", "10", "--n-max", "30"]
    _, one, _ = run(capsys, *argv, "--threads", "1")
    _, four, _ = run(capsys, *argv, "--threads", "4")
    assert one == four


def test_ordered_map_keeps_order():
    assert ordered_map(abs, range(-20, 0), 3) == list(range(20, 0, -1))
    with pytest.raises(ValueError):
        ordered_map(abs, [1], 0)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "k3vw", "coeffs", "--n-max", "1"], capture_output=True, text=True, check=True)
    assert out.stdout == "n,a_n\n-1,1\n0,24\n1,324\n"


def test_verify_small_names_every_check(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "small")
    assert code == 0
    rows = out.splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == [str(i) for i in range(1, 9)]
    assert all(r.split(",")[2] == "pass" for r in rows)
