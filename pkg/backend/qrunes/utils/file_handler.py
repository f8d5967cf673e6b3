"""
File handling utilities.

Reads sources and run configurations, writes generated files and the
new-file template.
"""

import json
from pathlib import Path

from pydantic import ValidationError

from qrunes.core.exceptions import RunConfigError, SourceFileError
from qrunes.schemas.run_config import RunConfig

SOURCE_SUFFIX = ".qrunes"

FILE_TEMPLATE = """\
// declare a constant m and initialized as 0.908.
let m = 0.908;

// Function Declaration.
simple_test(qvec q,cvec c);

// Function Definition.
simple_test(qvec q,cvec c){
    H(q[0]);
    RX(q[0],m);
    Measure(q[0],c[0])
}
"""


def read_source(path: Path) -> str:
    """
    Read a QRunes source file.

    Args:
        path: File to read

    Returns:
        File contents

    Raises:
        SourceFileError: Missing or unreadable file
    """
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SourceFileError(str(path), str(e)) from e


def parse_run_config(text: str) -> RunConfig:
    """
    Validate a run configuration document.

    Raises:
        RunConfigError: Malformed JSON or a schema violation
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise RunConfigError(f"not valid JSON ({e.msg})") from e
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        errors = [
            {"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
            for err in e.errors()
        ]
        raise RunConfigError(f"{e.error_count()} validation error(s)", errors) from e


def read_run_config(path: Path) -> RunConfig:
    """Read and validate a run configuration file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SourceFileError(str(path), str(e)) from e
    return parse_run_config(text)


def write_outputs(files: list[tuple[str, str]], directory: Path) -> list[Path]:
    """
    Write generated files into ``directory``.

    Args:
        files: (relative filename, text) pairs
        directory: Output directory, created if missing

    Returns:
        Paths written, in order

    Raises:
        SourceFileError: The directory or a file cannot be written
    """
    written: list[Path] = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for name, text in files:
            target = directory / name
            # newline="" keeps "\n" line endings on every platform
            with target.open("w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            written.append(target)
    except OSError as e:
        raise SourceFileError(str(directory), str(e)) from e
    return written


def write_template(path: Path) -> Path:
    """
    Create a new source file from the template.

    Raises:
        SourceFileError: The file exists or cannot be written
    """
    if path.suffix != SOURCE_SUFFIX:
        path = path.with_suffix(SOURCE_SUFFIX)
    if path.exists():
        raise SourceFileError(str(path), "file already exists")
    written = write_outputs([(path.name, FILE_TEMPLATE)], path.parent)
    return written[0]


__all__ = [
    "SOURCE_SUFFIX",
    "FILE_TEMPLATE",
    "read_source",
    "parse_run_config",
    "read_run_config",
    "write_outputs",
    "write_template",
]
