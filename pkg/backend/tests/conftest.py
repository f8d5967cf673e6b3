"""
Shared fixtures: sample and golden file locations plus pipeline helpers.
"""

from pathlib import Path
from typing import Callable

import pytest

from qrunes.schemas.run_config import RunConfig
from qrunes.services.toolchain import CheckResult, Toolchain
from qrunes.utils.file_handler import read_run_config

TESTS_DIR = Path(__file__).resolve().parent
SAMPLES_DIR = TESTS_DIR.parents[1] / "samples"
GOLDEN_DIR = TESTS_DIR / "golden"


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES_DIR


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture
def toolchain() -> Toolchain:
    return Toolchain()


@pytest.fixture
def check_text(toolchain: Toolchain) -> Callable[[str], CheckResult]:
    """Parse and analyze an inline program."""

    def _check(source: str) -> CheckResult:
        return toolchain.check_source(source, "<test>")

    return _check


@pytest.fixture
def check_sample(toolchain: Toolchain) -> Callable[[str], CheckResult]:
    """Parse and analyze ``samples/<name>.qrunes``."""

    def _check(name: str) -> CheckResult:
        path = SAMPLES_DIR / f"{name}.qrunes"
        return toolchain.check_source(path.read_text(encoding="utf-8"), path.name)

    return _check


@pytest.fixture
def sample_config() -> Callable[[str], RunConfig]:
    """Load ``samples/<name>.run.json``."""

    def _load(name: str) -> RunConfig:
        return read_run_config(SAMPLES_DIR / f"{name}.run.json")

    return _load
