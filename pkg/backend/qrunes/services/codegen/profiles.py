"""
Built-in target profiles and user profile loading.

Two profiles ship with the toolchain: ``cpp`` (QPanda-style C++, header
plus implementation) and ``python`` (pyQPanda-style, one module). Extra
profiles are read from ``*.json`` files in ``QRUNES_PROFILE_DIR`` and
override built-ins of the same name.
"""

from pathlib import Path

from pydantic import ValidationError

from qrunes.core import logger, settings
from qrunes.core.exceptions import ProfileLoadError, UnknownProfileError
from qrunes.schemas.profile import ProfileControlFlow, ProfileTypeMap, TargetProfile

CPP_PROFILE = TargetProfile(
    name="cpp",
    language_names=["c++", "cpp", "qpanda"],
    source_extension=".cpp",
    header_extension=".h",
    header_preamble=[
        "#pragma once",
        "",
        '#include "QPanda.h"',
        "using namespace QPanda;",
    ],
    prototype="QProg {name}({params});",
    include_header='#include "{stem}.h"',
    autoimport_snippet='#include "QPanda.h"\nusing namespace QPanda;',
    blank_lines_between=1,
    types=ProfileTypeMap(
        qubit="Qubit*",
        qvec="QVec",
        cbit="ClassicalCondition",
        cvec="std::vector<ClassicalCondition>",
    ),
    param="{type} {name}",
    function_open=["QProg {name}({params})", "{"],
    function_close=["}"],
    constant="const auto {name} = {value};",
    program_init="auto {prog} = QProg();",
    program_return="return {prog};",
    insert="{prog} << {op};",
    classical_insert="{prog} << ({target} = {value});",
    let="auto {name} = {value};",
    typed_let="{type} {name} = {value};",
    host_decl="{type} {name} = {value};",
    assign="{target} {op_symbol} {value};",
    control=ProfileControlFlow(
        if_header="if ({cond})",
        else_if_header="else if ({cond})",
        else_header="else",
        while_header="while ({cond})",
        for_header="for (int {var} = {lo}; {var} < {hi}; {var}++)",
        block_open="{",
        block_close="}",
        subprogram_open="{",
        subprogram_close="}",
        if_builder="CreateIfProg({cond}, {then})",
        if_else_builder="CreateIfProg({cond}, {then}, {qelse})",
        while_builder="CreateWhileProg({cond}, {body})",
    ),
    gate_names={"NOT": "X"},
    len_call="{arg}.size()",
    slice_expr="QVec({base}.begin() + {lo}, {base}.begin() + {hi})",
)

PYTHON_PROFILE = TargetProfile(
    name="python",
    language_names=["python", "py", "pyqpanda"],
    source_extension=".py",
    autoimport_snippet="from pyqpanda import *",
    blank_lines_between=2,
    types=ProfileTypeMap(
        qubit="Qubit",
        qvec="QVec",
        cbit="ClassicalCondition",
        cvec="list",
        int="int",
        double="float",
        bool="bool",
    ),
    param="{name}",
    function_open=["def {name}({params}):"],
    constant="{name} = {value}",
    program_init="{prog} = QProg()",
    program_return="return {prog}",
    insert="{prog}.insert({op})",
    classical_insert="{prog}.insert(assign({target}, {value}))",
    let="{name} = {value}",
    typed_let="{name} = {value}",
    host_decl="{name} = {value}",
    assign="{target} {op_symbol} {value}",
    control=ProfileControlFlow(
        if_header="if {cond}:",
        else_if_header="elif {cond}:",
        else_header="else:",
        while_header="while {cond}:",
        for_header="for {var} in range({lo}, {hi}):",
        empty_block="pass",
        if_builder="create_if_prog({cond}, {then})",
        if_else_builder="create_if_prog({cond}, {then}, {qelse})",
        while_builder="create_while_prog({cond}, {body})",
    ),
    operators={"&&": "and", "||": "or", "!": "not "},
    true_literal="True",
    false_literal="False",
    gate_names={"NOT": "X", "MeasureAll": "measure_all"},
    len_call="len({arg})",
    slice_expr="{base}[{lo}:{hi}]",
    int_division="int({left} / {right})",
    int_modulo="({left} - {right} * int({left} / {right}))",
)

BUILTIN_PROFILES: dict[str, TargetProfile] = {
    CPP_PROFILE.name: CPP_PROFILE,
    PYTHON_PROFILE.name: PYTHON_PROFILE,
}


def load_profile_file(path: Path) -> TargetProfile:
    """Read and validate one JSON profile."""
    try:
        return TargetProfile.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ProfileLoadError(str(path), str(e)) from e
    except ValidationError as e:
        reason = f"{e.error_count()} validation error(s)"
        raise ProfileLoadError(str(path), reason) from e


def available_profiles(profile_dir: Path | None = None) -> dict[str, TargetProfile]:
    """
    Built-in profiles merged with user profiles.

    Args:
        profile_dir: Directory of ``*.json`` profiles (default: settings.profile_dir)

    Returns:
        Profile name -> profile
    """
    profiles = dict(BUILTIN_PROFILES)
    directory = profile_dir or settings.profile_dir
    if directory is None:
        return profiles
    directory = Path(directory)
    if not directory.is_dir():
        logger.warning(f"Profile directory not found: {directory}")
        return profiles
    for path in sorted(directory.glob("*.json")):
        profile = load_profile_file(path)
        if profile.name in profiles:
            logger.info(f"Profile '{profile.name}' overridden by {path.name}")
        profiles[profile.name] = profile
    return profiles


def get_profile(name: str, profile_dir: Path | None = None) -> TargetProfile:
    """Look a profile up by name."""
    profiles = available_profiles(profile_dir)
    if name not in profiles:
        raise UnknownProfileError(name, sorted(profiles))
    return profiles[name]


def profile_for_language(
    language: str, profile_dir: Path | None = None
) -> TargetProfile | None:
    """Profile selected by a ``language = ...;`` setting, if any matches."""
    wanted = language.strip().lower()
    for profile in available_profiles(profile_dir).values():
        if wanted == profile.name or wanted in profile.language_names:
            return profile
    return None
