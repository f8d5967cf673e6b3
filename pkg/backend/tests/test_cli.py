"""
Tests for the command-line interface.

Covers:
- check/compile/run/new outputs on standard output
- Exit codes: 0 success, 1 diagnostics or pipeline errors, 2 file errors
- Unexpected exceptions in the console entry point
"""

import json

import pytest

from qrunes import main as entry_point
from qrunes.api.cli import EXIT_ENVIRONMENT, EXIT_FAILED, EXIT_OK, main
from qrunes.utils.file_handler import FILE_TEMPLATE


def run_cli(capsys, *argv):
    """Invoke the CLI; return (exit code, parsed stdout)."""
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


# ═══════════════════════════════════════════════════════════════════
# check
# ═══════════════════════════════════════════════════════════════════


class TestCheck:
    """Diagnostics as a JSON array."""

    def test_clean_file(self, capsys, samples_dir):
        code, records = run_cli(capsys, "check", samples_dir / "bell.qrunes")
        assert code == EXIT_OK
        assert records == []

    def test_error_records(self, capsys, samples_dir):
        code, records = run_cli(capsys, "check", samples_dir / "bad_assign.qrunes")
        assert code == EXIT_FAILED
        (record,) = records
        assert record["code"] == "E201"
        assert record["severity"] == "error"
        assert record["line"] == 9
        assert set(record) == {
            "code",
            "severity",
            "message",
            "line",
            "column",
            "end_line",
            "end_column",
        }

    def test_syntax_error(self, capsys, tmp_path):
        path = tmp_path / "broken.qrunes"
        path.write_text("@qcode:\nf(qubit q){ H(q) X(q); }\n", encoding="utf-8")
        code, records = run_cli(capsys, "check", path)
        assert code == EXIT_FAILED
        assert [r["code"] for r in records] == ["E002"]

    def test_missing_file(self, capsys, tmp_path):
        code = main(["check", str(tmp_path / "absent.qrunes")])
        assert code == EXIT_ENVIRONMENT
        assert capsys.readouterr().out == ""


# ═══════════════════════════════════════════════════════════════════
# compile
# ═══════════════════════════════════════════════════════════════════


class TestCompile:
    """Generated files land in the output directory."""

    def test_cpp_target(self, capsys, samples_dir, golden_dir, tmp_path):
        source = samples_dir / "bell.qrunes"
        code, result = run_cli(capsys, "compile", source, "-o", tmp_path)
        assert code == EXIT_OK
        assert result["files"] == [str(tmp_path / "bell.h"), str(tmp_path / "bell.cpp")]
        assert (tmp_path / "bell.cpp").read_text(encoding="utf-8") == (
            golden_dir / "bell.cpp"
        ).read_text(encoding="utf-8")

    def test_explicit_python_target(self, capsys, samples_dir, tmp_path):
        source = samples_dir / "bell.qrunes"
        code, result = run_cli(
            capsys, "compile", source, "--target", "python", "-o", tmp_path
        )
        assert code == EXIT_OK
        assert result == {"files": [str(tmp_path / "bell.py")]}

    def test_qir_target(self, capsys, samples_dir, tmp_path):
        code, result = run_cli(
            capsys,
            "compile",
            samples_dir / "foo.qrunes",
            "--target",
            "qir",
            "--config",
            samples_dir / "foo.run.json",
            "-o",
            tmp_path,
        )
        assert code == EXIT_OK
        assert result == {"files": [str(tmp_path / "foo.qir")]}
        assert (tmp_path / "foo.qir").read_text(encoding="utf-8") == (
            "CNOT q1, q0\nCNOT q2, q0\n"
            "MEASURE q0 -> r0\nMEASURE q1 -> r1\nMEASURE q2 -> r2\n"
        )

    def test_qir_target_needs_config(self, capsys, samples_dir, tmp_path):
        source = samples_dir / "foo.qrunes"
        code, result = run_cli(
            capsys, "compile", source, "--target", "qir", "-o", tmp_path
        )
        assert code == EXIT_FAILED
        assert result["error"]["code"] == "INVALID_RUN_CONFIG"

    def test_unknown_target(self, capsys, samples_dir, tmp_path):
        source = samples_dir / "bell.qrunes"
        code, result = run_cli(
            capsys, "compile", source, "--target", "qasm", "-o", tmp_path
        )
        assert code == EXIT_FAILED
        assert result["error"]["code"] == "UNKNOWN_PROFILE"

    def test_errors_block_generation(self, capsys, samples_dir, tmp_path):
        code, records = run_cli(
            capsys, "compile", samples_dir / "if_on_cbit.qrunes", "-o", tmp_path
        )
        assert code == EXIT_FAILED
        assert [r["code"] for r in records] == ["E220"]
        assert list(tmp_path.iterdir()) == []


# ═══════════════════════════════════════════════════════════════════
# run
# ═══════════════════════════════════════════════════════════════════


class TestRun:
    """Simulation report on standard output."""

    def test_json_report(self, capsys, samples_dir):
        source, config = samples_dir / "foo.qrunes", samples_dir / "foo.run.json"
        code, report = run_cli(capsys, "run", source, "--config", config)
        assert code == EXIT_OK
        assert report["histogram"] == {"000": 100}
        assert report["shots"] == 100
        assert report["seed"] == 1
        assert report["failures"] == []
        assert report["registers"]["c[0]"] == {"mean": 0.0, "min": 0, "max": 0}

    def test_workers_flag(self, capsys, samples_dir):
        source, config = samples_dir / "bell.qrunes", samples_dir / "bell.run.json"
        argv = ["run", source, "--config", config]
        _, sequential = run_cli(capsys, *argv)
        _, threaded = run_cli(capsys, *argv, "--workers", 3)
        assert sequential == threaded

    def test_pretty_table(self, capsys, samples_dir):
        code = main(
            [
                "run",
                str(samples_dir / "qif.qrunes"),
                "--config",
                str(samples_dir / "qif.run.json"),
                "--pretty",
            ]
        )
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "200 shots (seed 3)" in out
        assert "Registers" in out

    def test_invalid_config(self, capsys, samples_dir, tmp_path):
        config = tmp_path / "zero.run.json"
        config.write_text(json.dumps({"entry": "Bell", "shots": 0}), encoding="utf-8")
        source = samples_dir / "bell.qrunes"
        code, result = run_cli(capsys, "run", source, "--config", config)
        assert code == EXIT_FAILED
        assert result["error"]["code"] == "INVALID_RUN_CONFIG"
        assert result["error"]["details"]["errors"][0]["field"] == "shots"

    def test_elaboration_error(self, capsys, samples_dir):
        code, result = run_cli(
            capsys,
            "run",
            samples_dir / "measureall.qrunes",
            "--config",
            samples_dir / "measureall_mismatch.run.json",
        )
        assert code == EXIT_FAILED
        assert result["error"]["code"] == "E240"

    def test_config_required(self, capsys, samples_dir):
        with pytest.raises(SystemExit) as exc_info:
            main(["run", str(samples_dir / "bell.qrunes")])
        assert exc_info.value.code == 2


# ═══════════════════════════════════════════════════════════════════
# new and the entry point
# ═══════════════════════════════════════════════════════════════════


class TestNew:
    """Template files."""

    def test_creates_template(self, capsys, tmp_path):
        code, result = run_cli(capsys, "new", tmp_path / "program")
        path = tmp_path / "program.qrunes"
        assert code == EXIT_OK
        assert result == {"files": [str(path)]}
        assert path.read_text(encoding="utf-8") == FILE_TEMPLATE

    def test_refuses_to_overwrite(self, capsys, tmp_path):
        run_cli(capsys, "new", tmp_path / "program.qrunes")
        assert main(["new", str(tmp_path / "program.qrunes")]) == EXIT_ENVIRONMENT

    def test_template_checks_clean(self, capsys, tmp_path):
        run_cli(capsys, "new", tmp_path / "program.qrunes")
        code, records = run_cli(capsys, "check", tmp_path / "program.qrunes")
        assert code == EXIT_OK
        assert records == []


class TestEntryPoint:
    """Version flag and unexpected failures."""

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["--version"])
        assert exc_info.value.code == 0
        assert capsys.readouterr().out.startswith("qrunes ")

    def test_unexpected_exception(self, capsys, monkeypatch):
        def explode(argv):
            raise RuntimeError("boom")

        monkeypatch.setattr(entry_point, "cli_main", explode)
        assert entry_point.main([]) == EXIT_FAILED
        result = json.loads(capsys.readouterr().out)
        assert result["error"]["code"] == "INTERNAL_ERROR"
        assert result["error"]["details"]["type"] == "RuntimeError"
