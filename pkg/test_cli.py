import csv
import io
import json
import math

import pytest

from qcmod.cli import EXIT_INVALID, EXIT_OK, execute, flatten, main, render, run
from qcmod.schemas import RunConfig

SMALL_RING = ["--curves", "60", "--subdiv", "12", "--grid", "32", "--tol", "1e-3"]


def _json_report(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_integrability_report(capsys):
    code, report = _json_report(capsys, ["integrability", "--alpha", "1", "--p", "1"])
    assert code == EXIT_OK
    assert report["command"] == "integrability"
    assert report["result"]["finite"] is True
    assert report["result"]["threshold"] == 2.0
    assert report["result"]["value"] == pytest.approx(3 * math.pi, rel=1e-9)
    assert report["config"]["seed"] == 0


def test_integrability_divergent_is_a_result(capsys):
    code, report = _json_report(capsys, ["integrability", "--alpha", "1.1", "--p", "2"])
    assert code == EXIT_OK
    assert report["result"]["divergent"] is True
    assert report["result"]["value"] is None


def test_cluster_at_image_puncture(capsys):
    code, report = _json_report(
        capsys,
        ["cluster", "--map", "radial-inverse", "--alpha", "1", "--target", "e2", "--radii", "1e-2:1e-6"],
    )
    assert code == EXIT_OK
    result = report["result"]
    assert result["extends"] is True
    assert result["limit"] == pytest.approx([0.0, 0.5], abs=1e-3)
    assert result["radii"] == pytest.approx([1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    assert report["config"]["radii"] == result["radii"]


def test_modulus_ring_small_run(capsys):
    code, report = _json_report(capsys, ["modulus-ring", "--r1", "1", "--r2", "2.71828", *SMALL_RING])
    assert code == EXIT_OK
    result = report["result"]
    assert result["analytic"] == pytest.approx(2 * math.pi, rel=1e-5)
    assert result["discrete"]["converged"] is True
    assert result["relative_error"] == pytest.approx(
        (result["discrete"]["value"] - result["analytic"]) / result["analytic"]
    )
    assert result["grid"]["resolution"] == 32


@pytest.mark.parametrize(
    "argv",
    [
        ["modulus-ring", "--r1", "2", "--r2", "1"],
        ["modulus-ring", "--r1", "1"],
        ["integrability", "--alpha", "-1"],
        ["cluster", "--target", "0", "--radii", "1e-2,1e-1"],
        ["cluster", "--target", "1,2,3", "--radii", "1e-2"],
        ["verify-ring", "--map", "radial-inverse", "--r1", "1", "--r2", "1.5"],
        ["verify-ring", "--map", "radial", "--r1", "0.25", "--r2", "0.5", "--center", "0.1,0"],
        ["weakflat", "--eps0", "0.5"],
        ["recenter", "--eps1", "2", "--eps1-star", "1"],
        ["integrability", "--alpha", "1", "--unknown", "3"],
    ],
)
def test_invalid_parameters_exit_2(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    assert code == EXIT_INVALID
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error" in captured.err


def test_computation_errors_exit_2(capsys):
    code = main(["verify-ring", "--map", "radial", "--r1", "0.5", "--r2", "1.5", *SMALL_RING])
    assert code == EXIT_INVALID
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("error:")


def test_invalid_threads(capsys):
    assert main(["--threads", "0", "integrability", "--alpha", "1"]) == EXIT_INVALID


def test_csv_report(capsys):
    code = main(["integrability", "--alpha", "1", "--p", "1", "--format", "csv"])
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    row = rows[0]
    assert row["command"] == "integrability"
    assert row["config.alpha"] == "1.0"
    assert row["result.finite"] == "True"
    assert float(row["result.value"]) == pytest.approx(3 * math.pi)


def test_flatten():
    assert flatten({"a": {"b": 1, "c": {"d": None}}, "e": [1, [2]]}) == {
        "a.b": 1,
        "a.c.d": None,
        "e": "[1, [2]]",
    }


def test_render_json_sorts_keys():
    text = render({"b": 1, "a": {"d": 2, "c": 3}}, "json")
    assert text.index('"a"') < text.index('"b"')
    assert text.index('"c"') < text.index('"d"')
    assert text.endswith("\n")


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["integrability", "--alpha", "0.9", "--p", "2", "--output", str(target)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    report = json.loads(target.read_text())
    assert report["result"]["finite"] is True
    assert report["config"]["output"] == str(target)


def test_reports_are_byte_identical(tmp_path):
    argv = ["weakflat", "--eps0", "0.5", "--eps", "0.125", "--per-halving", "2", "--grid", "32", "--tol", "1e-3"]
    target = tmp_path / "report.json"
    assert main([*argv, "--output", str(target)]) == EXIT_OK
    first = target.read_bytes()
    assert main([*argv, "--output", str(target)]) == EXIT_OK
    assert target.read_bytes() == first


def test_stdout_reports_are_byte_identical(capsys):
    argv = ["integrability", "--alpha", "0.9", "--p", "2", "--format", "csv"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first


def test_run_and_execute():
    config = RunConfig(command="recenter", eps1=1.0, eps1_star=2.0)
    code, report, message = execute(config)
    assert code == EXIT_OK and message == ""
    assert report["result"]["k0"] == 3
    assert report["result"]["centers_checked"] is True
    code, text = run(config)
    assert code == EXIT_OK
    assert json.loads(text) == report


def test_execute_reports_not_converged():
    config = RunConfig(
        command="modulus-ring", r1=1.0, r2=2.0, curves=60, subdiv=12, grid=32, tol=1e-9, max_iter=3
    )
    code, report, message = execute(config)
    assert code == 3
    assert report["result"]["discrete"]["converged"] is False
    assert "did not converge" in message


def test_verify_ring_radial_small(capsys):
    code, report = _json_report(
        capsys,
        ["verify-ring", "--map", "radial", "--alpha", "1", "--r1", "0.25", "--r2", "0.5", "--eta", "step", *SMALL_RING],
    )
    assert code == EXIT_OK
    assert report["result"]["rhs"] == pytest.approx(11 * math.pi, abs=1e-6)
    assert report["result"]["metadata"]["alpha"] == 1.0


def test_verify_general_identity_small(capsys):
    code, report = _json_report(
        capsys, ["verify-general", "--r1", "1", "--r2", "2", "--curves", "40", "--subdiv", "10", "--grid", "32", "--tol", "1e-3"]
    )
    assert code == EXIT_OK
    result = report["result"]
    assert result["rhs"] > 0
    assert result["metadata"]["curves"] == 40
