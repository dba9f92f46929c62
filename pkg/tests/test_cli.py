import csv
import io
import json

import pytest

from sfarey import cli
from sfarey.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_q7(capsys):
    code, out, _ = _run(capsys, "generate", "--Q", "7")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "num,den,h" and len(lines) == 8
    assert lines[1:3] == ["0,1,1", "1,5,7"] and lines[-1] == "1,1,3"


def test_generate_methods_agree(capsys):
    _, a, _ = _run(capsys, "generate", "--Q", "40")
    _, b, _ = _run(capsys, "generate", "--Q", "40", "--method", "insertion")
    assert a == b


def test_generate_json(capsys):
    code, out, _ = _run(capsys, "generate", "--Q", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["Q"] == 5 and data["size"] == 3
    assert data["elements"][1] == {"num": 1, "den": 3, "h": 5}


def test_verify_summary(capsys):
    code, out, _ = _run(capsys, "verify", "--Q-max", "200")
    assert code == 0
    assert out.strip() == "unimodular: OK, cross-method: OK, lemma5: OK, corollary6: OK"


def test_verify_failure_exits_two(capsys, monkeypatch):
    monkeypatch.setattr(cli, "verify_unimodular", lambda seq: (False, 1))
    code, out, err = _run(capsys, "verify", "--Q-max", "20")
    assert code == 2
    assert "unimodular: FAIL" in out and "counterexample" in err


def test_verify_report_file(tmp_path, capsys):
    path = tmp_path / "v.json"
    code, _, _ = _run(capsys, "verify", "--Q-max", "30", "--format", "json", "--out", str(path))
    data = json.loads(path.read_text())
    assert code == 0 and data["checks"]["lemma5"] == {"ok": True, "counterexample": None}


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["generate"],
        ["generate", "--Q", "2"],
        ["generate", "--Q", "x"],
        ["dist", "--Q-list", "100", "--betas", "3/2"],
        ["gaps", "--Q", "50", "--lambda", "0:1:0"],
        ["gaps", "--Q", "50", "--lambda", "1:0:0.5"],
        ["gaps", "--Q", "50", "--lambda", "0:1"],
        ["theory", "--lambda", "0:1:0.5", "--parallelism", "0"],
        ["hcount", "--Q", "50", "--r", "1", "--eta", "-1"],
        ["nosuch"],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_semantic_usage_error_exits_one(capsys):
    code, _, err = _run(capsys, "tree", "--Q-max", "3")
    assert code == 1 and "error" in err
    code, _, _ = _run(capsys, "gaps", "--Q", "3", "--lambda", "0:1:0.5", "--no-theory")
    assert code == 1


def test_tree_rows(capsys):
    code, out, _ = _run(capsys, "tree", "--Q-max", "7")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["num", "den", "birth", "lp_num", "lp_den", "rp_num", "rp_den"]
    assert rows[-1] == ["2", "3", "7", "1", "2", "1", "1"]


def test_dist_csv_and_summary(tmp_path, capsys):
    summary = tmp_path / "s.json"
    code, out, _ = _run(capsys, "dist", "--Q-list", "200,100", "--betas", "1/2,1", "--summary", str(summary))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["Q"] for r in rows] == ["100", "100", "200", "200"]
    assert rows[0]["beta"] == "1/2"
    assert set(json.loads(summary.read_text())["decay"]) == {"1/2", "1"}


def test_dist_summary_on_stderr(capsys):
    code, _, err = _run(capsys, "dist", "--Q-list", "100", "--betas", "1")
    assert code == 0 and "decay" in json.loads(err)


def test_gaps_small_grid(capsys):
    code, out, _ = _run(capsys, "gaps", "--Q", "300", "--lambda", "0:0.3:0.1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["lambda"] for r in rows] == ["0", "0.1", "0.2", "0.3"]
    assert rows[0]["G_theory"] == "0" and float(rows[3]["G_theory"]) > 0
    assert all(float(r["density"]) >= 0 for r in rows)


def test_gaps_no_theory_json(capsys):
    code, out, _ = _run(capsys, "gaps", "--Q", "100", "--lambda", "0:1:0.5", "--no-theory", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["Q"] == 100 and data["rows"][0]["G_theory"] is None


def test_theory_and_hcount(capsys):
    code, out, _ = _run(capsys, "theory", "--lambda", "0.1:0.2:0.1", "--r-max", "2")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = _run(capsys, "hcount", "--Q", "200", "--r", "1,2", "--eta", "2,6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4
    assert rows[0]["ratio"] != "" and rows[1]["eta"] == "6"
    # C_2(2) = 0, so the ratio is left empty
    assert rows[2]["c_r_theory"] == "0" and rows[2]["ratio"] == ""


def test_monoid_modes(capsys):
    code, out, _ = _run(capsys, "monoid", "--Q", "4")
    assert code == 0 and out.splitlines() == ["a,b,c,d,trace", "2,1,1,1,3", "3,1,2,1,4", "3,2,1,1,4"]
    code, out, _ = _run(capsys, "monoid", "--Q", "50", "--betas", "1/2,1", "--format", "json")
    data = json.loads(out)
    assert [d["beta_den"] for d in data] == [2, 1] and data[0]["count"] <= data[1]["count"]


def _bytes(tmp_path, name, argv, capsys):
    path = tmp_path / name
    assert main(argv + ["--out", str(path)]) == 0
    capsys.readouterr()
    return path.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["theory", "--lambda", "0.1:0.3:0.1"],
        ["hcount", "--Q", "150", "--r", "1,2,3", "--eta", "6,10"],
        ["gaps", "--Q", "200", "--lambda", "0:0.4:0.2", "--format", "json"],
    ],
)
def test_output_is_deterministic_and_independent_of_parallelism(tmp_path, capsys, argv):
    a = _bytes(tmp_path, "a", argv, capsys)
    b = _bytes(tmp_path, "b", argv, capsys)
    c = _bytes(tmp_path, "c", argv + ["--parallelism", "2"], capsys)
    assert a == b == c


def test_out_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SFAREY_OUT_DIR", str(tmp_path / "reports"))
    assert main(["generate", "--Q", "7", "--out", "sf7.csv"]) == 0
    assert (tmp_path / "reports" / "sf7.csv").read_text().count("\n") == 8
    absolute = tmp_path / "abs.csv"
    assert main(["generate", "--Q", "7", "--out", str(absolute)]) == 0
    assert absolute.exists()


def test_unwritable_output_is_usage_error(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = _run(capsys, "generate", "--Q", "7", "--out", str(blocker / "sub" / "o.csv"))
    assert code == 1 and "cannot write" in err


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "sfarey", "generate", "--Q", "5"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "num,den,h"
