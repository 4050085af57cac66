import json
import os
import subprocess
import sys

import pytest

from chowcert import cli, fano
from chowcert.certificate import Certificate


@pytest.fixture(autouse=True)
def no_timing(monkeypatch):
    monkeypatch.setenv("CHOWCERT_TIMING", "0")


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_derksen_exit_zero(capsys):
    status, out, _ = run_cli(capsys, "identity", "--name", "derksen", "--format", "structured")
    doc = json.loads(out)
    assert status == 0
    assert [c["verdict"] for c in doc["certificates"]] == ["verified"]
    assert doc["certificates"][0]["data"]["tensor_terms"] == 5


def test_glynn_display_is_falsified_with_ratio(capsys):
    status, out, _ = run_cli(capsys, "identity", "--name", "glynn", "--n", "3",
                             "--normalization", "paper-display", "--format", "structured")
    cert = json.loads(out)["certificates"][0]
    assert status == 1
    assert cert["verdict"] == "falsified"
    assert cert["data"]["scalar_ratio"] == "4"


def test_fano_b_reports_eight(capsys, pipeline_b):
    status, out, _ = run_cli(capsys, "fano", "--chart", "B")
    assert status == 0
    assert "survivor_count=8" in out


@pytest.mark.parametrize("argv", [
    ["identity", "--name", "ryser", "--n", "9"],
    ["identity", "--name", "derksen", "--n", "4"],
    ["identity", "--name", "nosuch"],
    ["planes", "--form", "diagonal", "--n", "5"],
    ["bounds", "--n", "0"],
    ["fano", "--chart", "C"],
    [],
])
def test_usage_errors_exit_two(capsys, argv):
    status, _, err = run_cli(capsys, *argv)
    assert status == 2 and err


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing-dir" / "out.json"
    status, _, err = run_cli(capsys, "bounds", "--n", "3", "--out", str(target))
    assert status == 2 and "cannot write" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    status, out, _ = run_cli(capsys, "restriction", "--format", "structured", "--out", str(target))
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["summary"]["verified"] == 1


def test_empty_report():
    for fmt in ("text", "structured"):
        text = cli.emit(cli.RunReport(), fmt, timing=False)
        assert text
    doc = json.loads(cli.emit(cli.RunReport(), "structured"))
    assert doc["certificates"] == [] and sum(doc["summary"].values()) == 0
    assert cli.RunReport().exit_status() == 0


def test_summary_matches_tally():
    certs = [Certificate("a", "verified"), Certificate("b", "falsified"), Certificate("c", "divergence")]
    report = cli.RunReport(certs)
    assert report.summary() == {"verified": 1, "falsified": 1, "divergence": 1, "error": 0}
    assert report.exit_status() == 1
    assert cli.RunReport([Certificate("a", "error")]).exit_status() == 2


def test_chart_b_emit_byte_identical(pipeline_b):
    a = cli.emit(cli.RunReport([pipeline_b.certificate]), "structured", timing=False)
    again = fano.run_pipeline(fano.CHART_B).certificate
    b = cli.emit(cli.RunReport([again]), "structured", timing=False)
    assert a == b
    assert cli.emit(cli.RunReport([again]), "text", timing=False) == \
        cli.emit(cli.RunReport([pipeline_b.certificate]), "text", timing=False)


def test_structured_round_trip(pipeline_b):
    text = cli.emit(cli.RunReport([pipeline_b.certificate]), "structured", timing=False)
    loaded = cli.load_report(text)
    assert cli.emit(loaded, "structured", timing=False) == text
    survivors = cli.survivors_from_certificate(loaded.certificates[0])
    assert survivors == [s.ideal for s in pipeline_b.survivors]
    assert [str(s) for s in survivors] == [str(s.ideal) for s in pipeline_b.survivors]


@pytest.mark.parametrize("argv", [
    ["identity", "--name", "ryser", "--n", "3"],
    ["identity", "--name", "waring", "--n", "3"],
    ["bounds", "--n", "4"],
    ["planes", "--form", "permanent", "--n", "3"],
    ["orbits"],
])
def test_round_trip_every_certificate_type(capsys, argv):
    status, out, _ = run_cli(capsys, *argv, "--format", "structured")
    assert status == 0
    assert cli.emit(cli.load_report(out), "structured", timing=False) == out


def test_logging_goes_to_stderr():
    env = dict(os.environ, CHOWCERT_LOG="DEBUG", CHOWCERT_TIMING="0")
    proc = subprocess.run([sys.executable, "-m", "chowcert", "bounds", "--n", "3"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0
    assert proc.stdout.startswith("claim")
    assert "rank-bounds" in proc.stdout


@pytest.mark.slow
def test_all_subcommand(capsys, tmp_path):
    target = tmp_path / "all.json"
    status, _, _ = run_cli(capsys, "all", "--format", "structured", "--out", str(target))
    doc = json.loads(target.read_text())
    assert status == 0
    assert doc["summary"]["verified"] == len(doc["certificates"])
    claims = {c["claim"] for c in doc["certificates"]}
    assert {"fano-chart-A", "fano-chart-B", "det-restriction"} <= claims
