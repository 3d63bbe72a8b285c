import json

from qcmod.cli import main
from qcmod.database import get_database_url, initialize_archive
from qcmod.schemas import RunConfig
from qcmod.services import archive_run, list_runs


def test_database_url():
    assert get_database_url(":memory:") == "sqlite://"
    assert get_database_url("/tmp/runs.db") == "sqlite:////tmp/runs.db"


def test_archive_round_trip(tmp_path):
    path = str(tmp_path / "runs.db")
    config = RunConfig(command="integrability", alpha=0.5)
    report = {"command": "integrability", "result": {"finite": True}}
    first = archive_run(config, report, 0, db_path=path)
    second = archive_run(RunConfig(command="recenter", eps1=1.0, eps1_star=2.0), None, 2, db_path=path)
    assert second > first

    runs = list_runs(path)
    assert [r["command"] for r in runs] == ["integrability", "recenter"]
    assert runs[0]["report"] == report
    assert runs[0]["config"] == config.resolved()
    assert runs[0]["config_hash"] == config.digest()
    assert runs[1]["report"] is None
    assert runs[1]["exit_code"] == 2
    assert list_runs(path, command="recenter")[0]["id"] == second
    assert list_runs(path, config_hash=config.digest())[0]["id"] == first


def test_digest_is_stable():
    a = RunConfig(command="integrability", alpha=0.5)
    b = RunConfig(command="integrability", alpha=0.5)
    assert a.digest() == b.digest()
    assert a.digest() != RunConfig(command="integrability", alpha=0.6).digest()


def test_archive_uses_environment_path(archive_file):
    archive_run(RunConfig(command="integrability"), None, 0)
    assert len(list_runs()) == 1
    assert len(list_runs(archive_file)) == 1


def test_initialize_archive(tmp_path):
    path = tmp_path / "fresh.db"
    initialize_archive(str(path))
    assert path.exists()
    assert list_runs(str(path)) == []


def test_cli_archives_runs(tmp_path, capsys):
    path = str(tmp_path / "cli.db")
    assert main(["--archive", path, "integrability", "--alpha", "1"]) == 0
    assert main(["--archive", path, "modulus-ring", "--r1", "2", "--r2", "1"]) == 2
    capsys.readouterr()
    runs = list_runs(path)
    assert [r["exit_code"] for r in runs] == [0]
    report = runs[0]["report"]
    assert report["result"]["threshold"] == 2.0
    assert json.loads(json.dumps(report)) == report
