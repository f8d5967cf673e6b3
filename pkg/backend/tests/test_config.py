"""
Tests for settings and run-configuration loading.
"""

import pytest
from pydantic import ValidationError

from qrunes.core.config import Settings, get_settings
from qrunes.core.exceptions import RunConfigError, SourceFileError
from qrunes.utils.file_handler import parse_run_config, read_run_config, write_outputs


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    names = (
        "QRUNES_MAX_QUBITS",
        "QRUNES_LOG_LEVEL",
        "QRUNES_SIM_WORKERS",
        "QRUNES_DEFAULT_SHOTS",
        "QRUNES_DEFAULT_SEED",
    )
    for name in names:
        monkeypatch.delenv(name, raising=False)


class TestSettings:
    """Defaults and QRUNES_ environment overrides."""

    def test_defaults(self):
        settings = Settings(_env_file=None)
        assert settings.max_qubits == 24
        assert settings.max_unroll == 1_000_000
        assert settings.max_qwhile_iters == 100_000
        assert settings.default_shots == 1000
        assert settings.sim_workers == 1
        assert settings.log_level == "WARNING"
        assert settings.profile_dir is None

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("QRUNES_MAX_QUBITS", "12")
        monkeypatch.setenv("QRUNES_LOG_LEVEL", "debug")
        settings = get_settings()
        assert settings.max_qubits == 12
        assert settings.log_level == "DEBUG"

    def test_invalid_log_level(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_level="LOUD")

    def test_qubit_cap(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, max_qubits=30)

    def test_positive_limits(self, monkeypatch):
        monkeypatch.setenv("QRUNES_SIM_WORKERS", "0")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)


class TestRunConfig:
    """Run configuration documents."""

    def test_defaults_filled_in(self):
        config = parse_run_config('{"entry": "Bell", "args": {"q": 2, "c": 2}}')
        assert config.shots == 1000
        assert config.seed == 0
        assert config.max_qwhile_iters is None

    def test_defaults_follow_settings(self, monkeypatch):
        monkeypatch.setenv("QRUNES_DEFAULT_SHOTS", "7")
        monkeypatch.setenv("QRUNES_DEFAULT_SEED", "99")
        config = parse_run_config('{"entry": "f"}')
        assert (config.shots, config.seed) == (7, 99)
        explicit = parse_run_config('{"entry": "f", "shots": 3, "seed": 0}')
        assert (explicit.shots, explicit.seed) == (3, 0)

    def test_sample_file(self, samples_dir):
        config = read_run_config(samples_dir / "test.run.json")
        assert config.entry == "Test"
        assert config.args == {"q": 1, "c": 1, "temp": 1}
        assert (config.shots, config.seed) == (2000, 7)

    def test_bool_argument_kept(self):
        config = parse_run_config(
            '{"entry": "s", "args": {"flip": true, "theta": 0.5}}'
        )
        assert config.args["flip"] is True
        assert config.args["theta"] == 0.5

    @pytest.mark.parametrize(
        "text, field",
        [
            ('{"entry": "Bell", "shots": 0}', "shots"),
            ('{"entry": "1abc"}', "entry"),
            ('{"entry": "Bell", "trials": 3}', "trials"),
            ("{}", "entry"),
        ],
    )
    def test_schema_errors(self, text, field):
        with pytest.raises(RunConfigError) as exc_info:
            parse_run_config(text)
        fields = [e["field"] for e in exc_info.value.details["errors"]]
        assert field in fields

    def test_malformed_json(self):
        with pytest.raises(RunConfigError) as exc_info:
            parse_run_config("{entry: Bell")
        assert "not valid JSON" in exc_info.value.message

    def test_missing_file(self, tmp_path):
        with pytest.raises(SourceFileError):
            read_run_config(tmp_path / "absent.json")


class TestWriteOutputs:
    """Generated files keep LF line endings."""

    def test_writes_in_order(self, tmp_path):
        written = write_outputs([("a.h", "x\n"), ("a.cpp", "y\n")], tmp_path / "out")
        assert [p.name for p in written] == ["a.h", "a.cpp"]
        assert (tmp_path / "out" / "a.cpp").read_bytes() == b"y\n"
