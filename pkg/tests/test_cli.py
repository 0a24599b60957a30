import csv
import io
import json

import pytest

from binsum import cli
from binsum.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main
from binsum.libs.report import CSV_HEADER
from binsum.libs.types import CheckKind, SweepReport, TheoremRecord, Valuation


def _fail_record(n, r):
    return TheoremRecord.build(n=n, r=r, f_value=2, nu2=Valuation(1), bound=8)


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("argv, expected", [
    (["compute", "--n", "2", "--r", "1"], "16"),
    (["compute", "--n", "3", "--r", "0"], "64"),
    (["compute", "--n", "2", "--r", "2", "--algo", "rec-r"], "40"),
    (["compute", "--n", "2", "--r", "2", "--algo", "rec-mixed"], "40"),
    (["compute", "--n", "0", "--r", "0"], "1"),
])
def test_compute_prints_value(argv, expected, capsys):
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == expected + "\n"


def test_compute_algorithms_agree(capsys):
    outputs = []
    for algo in ("direct", "rec-r", "rec-mixed"):
        assert main(["compute", "--n", "9", "--r", "7", "--algo", algo]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert len(set(outputs)) == 1


@pytest.mark.parametrize("argv", [
    ["compute", "--n", "-1", "--r", "0"],
    ["compute", "--n", "x", "--r", "0"],
    ["compute", "--n", "2"],
    ["compute", "--n", "2", "--r", "1", "--algo", "bogus"],
    ["nope"],
    [],
])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().out == ""


def test_help_exits_0(capsys):
    assert main(["--help"]) == EXIT_OK
    assert "compute" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_plain(capsys):
    assert main(["verify", "--n", "2", "--r", "1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("n=2 r=1 F=16 nu2=4 bound=3 slack=1 PASS")


def test_verify_json(capsys):
    assert main(["verify", "--n", "1", "--r", "1", "--format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["slack"] == 0
    assert obj["pass"] is True
    assert "split" not in obj


def test_verify_json_with_split(capsys):
    assert main(["verify", "--n", "3", "--r", "1", "--format", "json", "--split"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert (obj["split"]["bound13"], obj["split"]["bound14"]) == (4, 5)


def test_verify_zero_value(capsys):
    assert main(["verify", "--n", "0", "--r", "3", "--format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["f_value"] == "0"
    assert obj["nu2"] == "inf"
    assert obj["slack"] == "inf"


def test_verify_origin(capsys):
    assert main(["verify", "--n", "0", "--r", "0", "--format", "json"]) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["f_value"] == "1"
    assert obj["slack"] == 0


def test_verify_csv(capsys):
    assert main(["verify", "--n", "2", "--r", "1", "--format", "csv"]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows == [list(CSV_HEADER), ["2", "1", "4", "3", "1", "true"]]


def test_verify_csv_split_noted_on_stderr(capsys):
    assert main(["verify", "--n", "3", "--r", "1", "--format", "csv", "--split"]) == EXIT_OK
    captured = capsys.readouterr()
    rows = list(csv.reader(io.StringIO(captured.out)))
    assert rows[0] == list(CSV_HEADER)
    assert "--split ignored" in captured.err


def test_verify_json_split_not_noted(capsys):
    assert main(["verify", "--n", "3", "--r", "1", "--format", "json", "--split"]) == EXIT_OK
    assert "--split ignored" not in capsys.readouterr().err


def test_verify_failure_exits_2(monkeypatch, capsys):
    monkeypatch.setattr(cli, "verify_theorem", _fail_record)
    assert main(["verify", "--n", "5", "--r", "5"]) == EXIT_CHECK_FAILED
    captured = capsys.readouterr()
    assert "FAIL" in captured.out
    assert "bound fails" in captured.err


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def test_sweep_single_cell_json(capsys):
    assert main(["sweep", "--n-max", "0", "--r-max", "0", "--format", "json"]) == EXIT_OK
    captured = capsys.readouterr()
    obj = json.loads(captured.out)
    assert obj["total"] == 1
    assert obj["failures"] == []
    assert obj["min_slack"] == 0
    # diagnostics stay off stdout
    assert "sweep done" in captured.err


def test_sweep_selected_checks(capsys):
    argv = ["sweep", "--n-max", "30", "--r-max", "4", "--checks", "closed-forms,guo-zeng,shapiro", "--format", "json"]
    assert main(argv) == EXIT_OK
    obj = json.loads(capsys.readouterr().out)
    assert obj["checks"] == ["closed-forms", "guo-zeng", "shapiro"]
    assert obj["failures_total"] == 0


def test_sweep_all_checks_with_workers(capsys):
    argv = ["sweep", "--n-max", "8", "--r-max", "6", "--checks", "all", "--workers", "2", "--format", "csv"]
    assert main(argv) == EXIT_OK
    rows = dict(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows["failures_total"] == "0"
    assert rows["evaluated.shapiro"] == "8"


def test_sweep_unknown_check_exits_1(capsys):
    assert main(["sweep", "--n-max", "3", "--r-max", "3", "--checks", "theorem,bogus"]) == EXIT_USAGE
    assert "bogus" in capsys.readouterr().err


@pytest.mark.parametrize("flag, value", [
    ("--workers", "0"),
    ("--failure-cap", "-2"),
    ("--failure-cap", "0"),
    ("--n-max", "-1"),
])
def test_sweep_bad_numbers_exit_1(flag, value):
    argv = ["sweep", "--n-max", "3", "--r-max", "3", flag, value]
    assert main(argv) == EXIT_USAGE


def test_sweep_writes_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["sweep", "--n-max", "4", "--r-max", "4", "--format", "json", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text(encoding="utf-8"))["total"] == 25


def test_sweep_unwritable_out_exits_1(tmp_path, capsys):
    out = tmp_path / "missing-dir" / "report.json"
    assert main(["sweep", "--n-max", "1", "--r-max", "1", "--out", str(out)]) == EXIT_USAGE
    assert "cannot write report" in capsys.readouterr().err


def test_sweep_failure_exits_2(monkeypatch, capsys):
    def fake_sweep(n_max, r_max, checks, workers, failure_cap, log):
        return SweepReport(
            n_range=(0, n_max),
            r_range=(0, r_max),
            total=(n_max + 1) * (r_max + 1),
            checks=tuple(checks),
            evaluated={k: 1 for k in checks},
            failures=[],
            failures_total=1,
            failure_cap=1,
            min_slack=Valuation(0),
            slack_histogram={},
        )

    monkeypatch.setattr(cli, "sweep", fake_sweep)
    assert main(["sweep", "--n-max", "1", "--r-max", "1", "--failure-cap", "1"]) == EXIT_CHECK_FAILED
    assert capsys.readouterr().out.rstrip().endswith("FAIL")


def test_sweep_log_file(tmp_path, capsys):
    log_path = tmp_path / "run.log"
    argv = ["sweep", "--n-max", "2", "--r-max", "2", "--debug", "--log-file", str(log_path)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().err == ""
    text = log_path.read_text(encoding="utf-8")
    assert "sweep done" in text
    assert "row n=2 done" in text


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def test_table_csv(capsys):
    assert main(["table", "--n-max", "2", "--r-max", "1", "--format", "csv"]) == EXIT_OK
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 1 + 6
    assert [(row[0], row[1]) for row in rows[1:]] == [
        ("0", "0"), ("0", "1"), ("1", "0"), ("1", "1"), ("2", "0"), ("2", "1"),
    ]


def test_table_single_cell(capsys):
    assert main(["table", "--n-max", "0", "--r-max", "0", "--format", "json"]) == EXIT_OK
    objs = json.loads(capsys.readouterr().out)
    assert len(objs) == 1
    assert objs[0]["f_value"] == "1"


def test_table_json_grid(capsys):
    assert main(["table", "--n-max", "4", "--r-max", "4", "--format", "json"]) == EXIT_OK
    objs = json.loads(capsys.readouterr().out)
    assert len(objs) == 25
    assert all(obj["pass"] for obj in objs)


def test_table_failure_exits_2(monkeypatch, capsys):
    monkeypatch.setattr(cli, "verify_theorem", _fail_record)
    assert main(["table", "--n-max", "1", "--r-max", "1"]) == EXIT_CHECK_FAILED
    assert capsys.readouterr().err.count("bound fails") == 4


def test_checks_default_is_theorem():
    args = cli.build_parser().parse_args(["sweep", "--n-max", "1", "--r-max", "1"])
    assert args.checks == (CheckKind.THEOREM,)
