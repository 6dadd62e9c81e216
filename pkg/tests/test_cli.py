import json

import pytest
from click.testing import CliRunner

from crossbeurling.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_validate_command(runner, tmp_path):
    cfg = write(tmp_path, "cfg.json", {"fixture": "F1"})
    result = runner.invoke(main, ["validate", cfg])
    assert result.exit_code == 0, result.output
    assert '"group_order": 2' in result.output


def test_validate_reports_config_errors(runner, tmp_path):
    cfg = write(tmp_path, "cfg.json", {"fixture": "nope"})
    result = runner.invoke(main, ["validate", cfg])
    assert result.exit_code != 0
    assert "fixture" in result.output


def test_convolve_command(runner, tmp_path):
    cfg = write(tmp_path, "cfg.json", {"fixture": "F1"})
    f = write(tmp_path, "f.json", {"0": [[1, 0]], "1": [[2, 0]]})
    g = write(tmp_path, "g.json", {"0": [[3, 0]], "1": [[4, 0]]})
    result = runner.invoke(main, ["convolve", cfg, "-f", f, "-g", g])
    assert result.exit_code == 0, result.output
    assert "11.0" in result.output and "10.0" in result.output


def test_build_crossed_command(runner, tmp_path):
    cfg = write(tmp_path, "cfg.json", {"fixture": "F2"})
    result = runner.invoke(main, ["build-crossed", cfg])
    assert result.exit_code == 0, result.output
    assert '"faithful": true' in result.output


def test_verify_command_writes_report(runner, tmp_path):
    cfg = write(tmp_path, "cfg.json", {"fixture": "F1"})
    out = str(tmp_path / "report.json")
    result = runner.invoke(main, ["verify", cfg, "--suite", "beurling", "--seed", "3", "-o", out])
    assert result.exit_code == 0, result.output
    stored = json.loads((tmp_path / "report.json").read_text())
    assert stored["suite"] == "beurling" and stored["seed"] == 3
    rendered = runner.invoke(main, ["report", out, "--format", "text"])
    assert rendered.exit_code == 0
    assert "beurling.inequality_chain" in rendered.output


def test_verify_toml_config(runner, tmp_path):
    path = tmp_path / "cfg.toml"
    path.write_text('fixture = "F1"\nseed = 2\n')
    result = runner.invoke(main, ["verify", str(path), "--suite", "core"])
    assert result.exit_code == 0, result.output


def test_verify_exit_code_on_failure(runner, tmp_path, monkeypatch):
    # force a failing check by patching the registry with a stub
    import crossbeurling.harness as harness

    def failing(ctx):
        return [
            harness.CheckRecord(
                check_id="stub.fail",
                law="never true",
                fixture=ctx.fid,
                status="fail",
                max_error=1.0,
            )
        ]

    monkeypatch.setattr(harness, "CHECKS", [("stub.fail", "never true", ("core",), failing)])
    cfg = write(tmp_path, "cfg.json", {"fixture": "F1"})
    result = runner.invoke(main, ["verify", cfg, "--suite", "core"])
    assert result.exit_code == 1
    assert "FAIL" in result.output
